"""Integral Weierstrass models, reduction mod p and newform coefficients.

Coefficients of the weight-2 newform attached to a curve are obtained from
the curve itself (modularity): ``a_p`` by counting points, everything else
by the Hecke recursion.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .arith import factorize, is_prime, primes_up_to, smallest_prime_factors
from .qseries import QSeries


class FixtureInconsistency(ValueError):
    """Stored curve data contradict each other (e.g. model vs. conductor)."""


_LABEL = re.compile(r"^(\d+)([A-Za-z]+)(\d*)$")


def conductor_from_label(label: str) -> int:
    m = _LABEL.match(label.strip())
    if not m:
        raise ValueError(f"not an isogeny class label: {label!r}")
    return int(m.group(1))


@dataclass(frozen=True)
class WeierstrassCurve:
    """``y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`` with its conductor."""

    a1: int
    a2: int
    a3: int
    a4: int
    a6: int
    conductor: int
    label: str = ""

    def __post_init__(self):
        if self.discriminant == 0:
            raise ValueError(f"singular model {self.ainvs}")
        if self.conductor < 1:
            raise ValueError("conductor must be positive")
        for p, _ in factorize(self.conductor):
            if self.discriminant % p:
                raise FixtureInconsistency(
                    f"{self.name}: {p} divides the conductor but not the discriminant")

    @classmethod
    def from_ainvs(cls, ainvs: Sequence[int], conductor: int | None = None,
                   label: str = "") -> "WeierstrassCurve":
        if len(ainvs) != 5:
            raise ValueError("expected [a1, a2, a3, a4, a6]")
        if conductor is None:
            conductor = conductor_from_label(label)
        return cls(*map(int, ainvs), conductor=conductor, label=label)

    @property
    def ainvs(self) -> tuple[int, int, int, int, int]:
        return self.a1, self.a2, self.a3, self.a4, self.a6

    @property
    def name(self) -> str:
        return self.label or str(list(self.ainvs))

    @property
    def b2(self) -> int:
        return self.a1 ** 2 + 4 * self.a2

    @property
    def b4(self) -> int:
        return self.a1 * self.a3 + 2 * self.a4

    @property
    def b6(self) -> int:
        return self.a3 ** 2 + 4 * self.a6

    @property
    def b8(self) -> int:
        a1, a2, a3, a4, a6 = self.ainvs
        return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4

    @property
    def c4(self) -> int:
        return self.b2 ** 2 - 24 * self.b4

    @property
    def c6(self) -> int:
        return -self.b2 ** 3 + 36 * self.b2 * self.b4 - 216 * self.b6

    @property
    def discriminant(self) -> int:
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    def invariants(self) -> tuple[int, int, int, int, int, int, int]:
        return self.b2, self.b4, self.b6, self.b8, self.c4, self.c6, self.discriminant

    def transform(self, r: int, s: int, t: int) -> "WeierstrassCurve":
        """Model obtained by ``x = x' + r``, ``y = y' + s x' + t``."""
        a1, a2, a3, a4, a6 = self.ainvs
        return WeierstrassCurve(
            a1 + 2 * s,
            a2 - s * a1 + 3 * r - s * s,
            a3 + r * a1 + 2 * t,
            a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t,
            a6 + r * a4 + r * r * a2 + r ** 3 - t * a3 - t * t - r * t * a1,
            self.conductor, self.label)

    def evaluate(self, x, y):
        """The Weierstrass polynomial ``F(x, y)``; works on ints and series alike."""
        a1, a2, a3, a4, a6 = self.ainvs
        return y * y + a1 * x * y + a3 * y - x * x * x - a2 * x * x - a4 * x - a6

    def __str__(self) -> str:
        def term(c, mono):
            if not c:
                return ""
            if not mono:
                return f" {'+' if c > 0 else '-'} {abs(c)}"
            k = "" if abs(c) == 1 else str(abs(c))
            return f" {'+' if c > 0 else '-'} {k}{mono}"

        a1, a2, a3, a4, a6 = self.ainvs
        lhs = "y^2" + term(a1, "xy") + term(a3, "y")
        rhs = "x^3" + term(a2, "x^2") + term(a4, "x") + term(a6, "")
        return f"{lhs} = {rhs}"


def count_points_naive(E: WeierstrassCurve, p: int) -> int:
    """``#E(F_p)`` by enumerating all pairs, singular points included."""
    a1, a2, a3, a4, a6 = (a % p for a in E.ainvs)
    count = 1
    for x in range(p):
        rhs = (x * x * x + a2 * x * x + a4 * x + a6) % p
        lin = (a1 * x + a3) % p
        for y in range(p):
            if (y * y + lin * y - rhs) % p == 0:
                count += 1
    return count


def _legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def count_points(E: WeierstrassCurve, p: int) -> int:
    """``#E(F_p)``; after completing the square for odd ``p`` this is O(p)."""
    if p == 2:
        return count_points_naive(E, p)
    b2, b4, b6 = E.b2 % p, E.b4 % p, E.b6 % p
    # (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
    return 1 + sum(1 + _legendre(4 * x ** 3 + b2 * x * x + 2 * b4 * x + b6, p)
                   for x in range(p))


def singular_point(E: WeierstrassCurve, p: int) -> tuple[int, int] | None:
    a1, a2, a3, a4, a6 = (a % p for a in E.ainvs)
    for x in range(p):
        for y in range(p):
            f = (y * y + a1 * x * y + a3 * y - x ** 3 - a2 * x * x - a4 * x - a6) % p
            fx = (a1 * y - 3 * x * x - 2 * a2 * x - a4) % p
            fy = (2 * y + a1 * x + a3) % p
            if f == 0 and fx == 0 and fy == 0:
                return x, y
    return None


def reduction_type(E: WeierstrassCurve, p: int) -> str:
    """One of ``good``, ``split``, ``nonsplit``, ``additive`` for this model."""
    if E.discriminant % p:
        return "good"
    pt = singular_point(E, p)
    if pt is None:
        raise ArithmeticError(f"p={p} divides the discriminant but no singular point found")
    r = pt[0]
    # tangent cone at the singular point: Y^2 + a1 XY - (3r + a2) X^2
    c = -(3 * r + E.a2)
    roots = sum(1 for m in range(p) if (m * m + E.a1 * m + c) % p == 0)
    return {2: "split", 0: "nonsplit", 1: "additive"}[roots]


def a_p(E: WeierstrassCurve, p: int) -> int:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if E.conductor % p == 0:
        if E.conductor % (p * p) == 0:
            return 0
        kind = reduction_type(E, p)
        if kind == "split":
            return 1
        if kind == "nonsplit":
            return -1
        raise FixtureInconsistency(
            f"{E.name}: reduction at {p} is {kind} but the conductor is squarefree at {p}")
    if E.discriminant % p == 0:
        raise FixtureInconsistency(
            f"{E.name}: {p} divides the discriminant but not the conductor {E.conductor}")
    return p + 1 - count_points(E, p)


def an_coefficients(E: WeierstrassCurve, n_max: int) -> list[int]:
    """``[0, a_1, ..., a_{n_max}]``; index ``n`` holds ``a_n``."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    an = [0] * (n_max + 1)
    an[1] = 1
    ap = {p: a_p(E, p) for p in primes_up_to(n_max)}
    spf = smallest_prime_factors(n_max)
    for n in range(2, n_max + 1):
        p = spf[n]
        m, pk = n, 1
        while m % p == 0:
            m //= p
            pk *= p
        if m > 1:
            an[n] = an[pk] * an[m]
        elif pk == p:
            an[n] = ap[p]
        elif E.conductor % p == 0:
            an[n] = ap[p] * an[pk // p]
        else:
            an[n] = ap[p] * an[pk // p] - p * an[pk // (p * p)]
    return an


def newform(E: WeierstrassCurve, precision: int) -> QSeries:
    """``f_E = sum a_n q^n + O(q^precision)``."""
    if precision < 2:
        raise ValueError("precision must be at least 2")
    return QSeries.from_integers(an_coefficients(E, precision - 1)[1:], 1, precision)


@dataclass(frozen=True)
class HRecipe:
    """``h = sum c_i f(q^{l_i})`` with ``f`` the newform of ``base_curve``."""

    base_curve: WeierstrassCurve
    terms: tuple[tuple[int, int], ...] = ((1, 1),)
    level: int | None = None

    def __post_init__(self):
        terms = tuple((int(c), int(l)) for c, l in self.terms)
        if not terms or any(l < 1 for _, l in terms):
            raise ValueError("recipe needs terms with positive powers")
        object.__setattr__(self, "terms", terms)
        lead = min(l for _, l in terms)
        if sum(c for c, l in terms if l == lead) != 1:
            raise ValueError("h must be normalized with leading coefficient 1")
        if self.level is not None:
            M = self.base_curve.conductor
            if self.level % M:
                raise ValueError(f"conductor {M} does not divide the level {self.level}")
            bad = [l for _, l in terms if (self.level // M) % l]
            if bad:
                raise ValueError(f"powers {bad} do not divide {self.level // M}")

    @property
    def valuation(self) -> int:
        return min(l for _, l in self.terms)

    def describe(self) -> str:
        name = self.base_curve.label or "f"
        parts = []
        for c, l in self.terms:
            arg = "q" if l == 1 else f"q^{l}"
            coef = "" if c == 1 else "-" if c == -1 else f"{c}*"
            parts.append(f"{coef}f_{name}({arg})")
        return " + ".join(parts).replace("+ -", "- ")


def build_h(recipe: HRecipe, precision: int) -> QSeries:
    if precision < 2:
        raise ValueError("precision must be at least 2")
    lmin = recipe.valuation
    f = newform(recipe.base_curve, max(-(-precision // lmin), 2))
    h = QSeries.zero(precision)
    for c, l in recipe.terms:
        h = h + f.truncate(-(-precision // l)).substitute_power(l).truncate(precision).scale(c)
    return h


def bad_primes(E: WeierstrassCurve) -> list[int]:
    return [p for p, _ in factorize(abs(E.discriminant))]

