"""The relation ``t^2 = P1(x) + P2(x) y`` and the eta quotients behind ``t``.

Monomials ``x^i`` and ``x^j y`` have pairwise distinct pole orders at
infinity (``2i`` and ``2j + 3`` in units of the pole order of ``x`` halved),
so matching a Laurent series against them is a triangular elimination:
peel off the most polar term, repeat.  Whatever is left after the constant
term must vanish, and :func:`relation_bound` says how far it has to vanish
before the identity is proved on the curve.
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .arith import divisors
from .etalib import EtaQuotient, eta_quotient_series, is_modular_function, order_at_infinity
from .modcurve import (Cusp, CuspDivisor, atkin_lehner_denominator, atkin_lehner_on_cusps,
                       certification_bound, cusps, eta_divisor, infinity, ligozat_order,
                       pullback_divisor)
from .qseries import QSeries
from .wparam import ParamPair

log = logging.getLogger(__name__)


class InconsistentSystem(ArithmeticError):
    """The series is not a polynomial in ``x`` and ``y`` of the allowed shape."""


class CertificationError(ArithmeticError):
    """Not enough precision, or a residual that fails to vanish far enough."""


class NoComplement(ArithmeticError):
    """No eta quotient realizes the required divisor."""


@dataclass(frozen=True)
class TSpec:
    """``t = sum c_i * eta_i`` at level ``level``."""

    level: int
    terms: tuple[tuple[int, EtaQuotient], ...]

    def __post_init__(self):
        terms = tuple((int(c), e) for c, e in self.terms)
        for _, e in terms:
            if e.level != self.level:
                raise ValueError("eta quotient at the wrong level")
        object.__setattr__(self, "terms", terms)

    @property
    def u(self) -> EtaQuotient:
        """The term with a pole at infinity."""
        return min(self.terms, key=lambda ce: order_at_infinity(ce[1]))[1]

    def pole_divisor(self) -> dict[Cusp, int]:
        """Pointwise maximum of the pole orders of the nonzero terms."""
        poles: dict[Cusp, int] = {}
        for c, e in self.terms:
            if not c:
                continue
            for cu, k in eta_divisor(e).poles().items():
                poles[cu] = max(poles.get(cu, 0), k)
        return poles

    def pretty(self) -> str:
        parts = []
        for c, e in self.terms:
            body = e.pretty()
            parts.append(body if c == 1 else f"-{body}" if c == -1 else f"{c}*[{body}]")
        return " + ".join(parts).replace("+ -", "- ")


def build_t(spec: TSpec, precision: int) -> QSeries:
    t = QSeries.zero(precision)
    for c, e in spec.terms:
        if c:
            t = t + eta_quotient_series(e, precision).scale(c)
    return t


def _trim(cs: Sequence) -> tuple:
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(int(c) if isinstance(c, Fraction) and c.denominator == 1 else c for c in cs)


@dataclass(frozen=True)
class ModelPolynomial:
    """``P(x, y) = P1(x) + P2(x) y``; coefficient lists start at degree 0."""

    P1: tuple = ()
    P2: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "P1", _trim(self.P1))
        object.__setattr__(self, "P2", _trim(self.P2))

    @property
    def deg1(self) -> int:
        return len(self.P1) - 1

    @property
    def deg2(self) -> int:
        return len(self.P2) - 1

    @property
    def is_integral(self) -> bool:
        return all(Fraction(c).denominator == 1 for c in self.P1 + self.P2)

    def pole_weight(self) -> int:
        """Pole order of ``P(x, y)`` at the origin of the curve."""
        w = 2 * self.deg1 if self.P1 else 0
        return max(w, 2 * self.deg2 + 3) if self.P2 else w

    def evaluate(self, x, y):
        def horner(cs):
            acc = None
            for c in reversed(cs):
                acc = c if acc is None else acc * x + c
            return acc

        out = horner(self.P1) if self.P1 else 0
        if self.P2:
            out = out + horner(self.P2) * y if self.P1 else horner(self.P2) * y
        return out

    def to_dict(self) -> dict[str, list]:
        def enc(c):
            return c if isinstance(c, int) else str(c)
        return {"P1": [enc(c) for c in self.P1], "P2": [enc(c) for c in self.P2]}

    @classmethod
    def from_dict(cls, d) -> "ModelPolynomial":
        return cls(tuple(Fraction(c) for c in d.get("P1", ())),
                   tuple(Fraction(c) for c in d.get("P2", ())))

    def __str__(self) -> str:
        terms = []
        for cs, ytag in ((self.P1, ""), (self.P2, "*y")):
            for i in range(len(cs) - 1, -1, -1):
                c = cs[i]
                if not c:
                    continue
                mono = ("" if i == 0 else "x" if i == 1 else f"x^{i}")
                mono = (mono + ytag).lstrip("*") if ytag else mono
                if not mono:
                    terms.append(str(c))
                elif c == 1:
                    terms.append(mono)
                elif c == -1:
                    terms.append(f"-{mono}")
                else:
                    terms.append(f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


class _Monomials:
    """Lazily built powers ``x^i`` and ``x^j y``, keyed by pole order."""

    def __init__(self, pair: ParamPair):
        self.pair = pair
        self.e = pair.scale
        self.xp = [QSeries.constant(1, pair.x.precision)]
        self.xyp: list[QSeries] = []

    def x_power(self, i: int) -> QSeries:
        while len(self.xp) <= i:
            self.xp.append(self.xp[-1] * self.pair.x)
        return self.xp[i]

    def xy_power(self, j: int) -> QSeries:
        while len(self.xyp) <= j:
            self.xyp.append(self.x_power(len(self.xyp)) * self.pair.y)
        return self.xyp[j]

    def for_pole(self, k: int):
        """``('x', i)`` or ``('xy', j)`` with pole order ``k`` at infinity, else None."""
        if k % self.e:
            return None
        k //= self.e
        if k % 2 == 0:
            return "x", k // 2
        if k >= 3:
            return "xy", (k - 3) // 2
        return None

    def series(self, kind: str, i: int) -> QSeries:
        return self.x_power(i) if kind == "x" else self.xy_power(i)


def _reduce(s: QSeries, mons: _Monomials, strict: bool, max_deg1: int | None = None):
    """Strip the polar part and the constant of ``s`` using monomials.

    Returns ``(P1, P2, remainder)``.  With ``strict`` an unmatched pole
    order raises; otherwise that term is left in the remainder.
    """
    P1: dict[int, Fraction] = {}
    P2: dict[int, Fraction] = {}
    r = s
    skipped = QSeries.zero(s.precision)
    while not r.is_zero and r.valuation <= 0:
        k = -r.valuation
        slot = mons.for_pole(k)
        if slot is None or (max_deg1 is not None and slot[0] == "x" and slot[1] > max_deg1):
            if strict:
                raise InconsistentSystem(f"no monomial with pole order {k} at infinity")
            lead = QSeries.monomial(r.valuation, r.precision, r.leading_coefficient())
            skipped = skipped + lead
            r = r - lead
            continue
        kind, i = slot
        c = r.leading_coefficient()
        (P1 if kind == "x" else P2)[i] = c
        r = r - mons.series(kind, i).scale(c)
    rem = r + skipped
    P1l = [P1.get(i, 0) for i in range(max(P1, default=-1) + 1)]
    P2l = [P2.get(i, 0) for i in range(max(P2, default=-1) + 1)]
    return P1l, P2l, rem


def relation_bound(spec: TSpec, P: ModelPolynomial, involution: int | None) -> int:
    """Degree bound for the poles of ``t^2 - P(x, y)`` on X0(N).

    For an Atkin-Lehner involution ``w_Q`` the quotient map sends infinity
    and ``w_Q(infinity)`` to the origin of the curve, so ``P(x, y)`` has
    poles bounded by ``k ([inf] + [w inf])`` and the pointwise maximum with
    the poles of ``t^2`` is used.  Otherwise the two pole degrees are added.
    """
    N = spec.level
    t2 = {cu: 2 * k for cu, k in spec.pole_divisor().items()}
    k = P.pole_weight()
    if involution is None:
        return certification_bound(N, t2) + 2 * k
    inf = infinity(N)
    winf = atkin_lehner_on_cusps(N, involution, inf)
    poles = dict(t2)
    for cu in (inf, winf):
        poles[cu] = max(poles.get(cu, 0), k)
    return certification_bound(N, poles)


def express_in_xy(t: QSeries, pair: ParamPair, D1: int | None = None,
                  bound: int | None = None) -> ModelPolynomial:
    """Write ``t^2`` as ``P1(x) + P2(x) y``.

    When ``bound`` is given the remainder must be known and zero through
    ``q^bound``; otherwise ``CertificationError`` is raised.  Non-integral
    coefficients are returned as fractions with a warning.
    """
    if t.is_zero:
        return ModelPolynomial()
    mons = _Monomials(pair)
    P1, P2, rem = _reduce(t * t, mons, strict=True, max_deg1=D1)
    if bound is not None and rem.precision <= bound:
        raise CertificationError(
            f"remainder known only mod q^{rem.precision}; need vanishing through q^{bound}")
    if not rem.is_zero:
        raise InconsistentSystem(
            f"t^2 - P(x, y) has a nonzero term at q^{rem.valuation}")
    P = ModelPolynomial(tuple(P1), tuple(P2))
    if not P.is_integral:
        warnings.warn(f"non-integral coefficients in {P}", stacklevel=2)
    return P


def relation_residual(t: QSeries, pair: ParamPair, P: ModelPolynomial) -> QSeries:
    """``t^2 - P(x, y)`` by direct substitution (no elimination involved)."""
    return t * t - P.evaluate(pair.x, pair.y)


# ----------------------------------------------------------------------
# eta quotients with a prescribed divisor


def _classes(N: int) -> list[int]:
    return list(divisors(N))


def _ligozat_matrix(N: int) -> list[list[Fraction]]:
    """Row ``c``, column ``d``: order at a cusp of denominator ``c`` of ``eta(dz)``."""
    divs = _classes(N)
    return [[ligozat_order(EtaQuotient(N, {d: 1}), c) for d in divs] for c in divs]


def _solve(A: list[list[Fraction]], b: Sequence) -> list[Fraction]:
    """Solve the square system ``A r = b`` over the rationals."""
    n = len(A)
    M = [list(map(Fraction, row)) + [Fraction(bi)] for row, bi in zip(A, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col]), None)
        if piv is None:
            raise ArithmeticError("singular order matrix")
        M[col], M[piv] = M[piv], M[col]
        inv = 1 / M[col][col]
        M[col] = [v * inv for v in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                f = M[r][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[col])]
    return [M[r][n] for r in range(n)]


class _OrderSolver:
    """Inverts the Ligozat order map on divisors constant on denominator classes."""

    def __init__(self, N: int):
        self.N = N
        self.divs = _classes(N)
        self.A = _ligozat_matrix(N)
        n = len(self.divs)
        cols = [_solve(self.A, [int(i == j) for i in range(n)]) for j in range(n)]
        self.Ainv = [[cols[j][i] for j in range(n)] for i in range(n)]

    def exponents(self, orders: Sequence[int]) -> list[Fraction]:
        return [sum((a * o for a, o in zip(row, orders)), Fraction(0)) for row in self.Ainv]


def _class_orders(N: int, D: CuspDivisor) -> list[Fraction]:
    out = []
    for c in _classes(N):
        vals = {D[cu] for cu in cusps(N) if cu.denominator == c}
        if len(vals) != 1:
            raise NoComplement(f"divisor {D} is not constant on cusps with denominator {c}")
        out.append(vals.pop())
    return out


def eta_quotient_with_divisor(N: int, D: CuspDivisor) -> EtaQuotient:
    r = _OrderSolver(N).exponents(_class_orders(N, D))
    if any(v.denominator != 1 for v in r):
        raise NoComplement(f"divisor {D} needs fractional eta exponents {r}")
    e = EtaQuotient.from_vector(N, [int(v) for v in r])
    if not is_modular_function(e):
        raise NoComplement(f"{e.pretty()} fails the modularity conditions")
    return e


def find_complement(N: int, u: EtaQuotient, Q: int, pair: ParamPair,
                    precision: int | None = None) -> tuple[EtaQuotient, Fraction]:
    """``v`` with ``div v = w_Q^* div u`` and the constant ``a`` with ``w_Q^* u = a v``.

    ``u + a v`` is ``w_Q``-invariant with poles only above the origin, so it
    is a polynomial in ``x`` and ``y``; ``a`` is the unique constant making
    the remainders of ``u`` and ``v`` after that elimination cancel.
    """
    v = eta_quotient_with_divisor(N, pullback_divisor(N, Q, eta_divisor(u)))
    prec = pair.precision if precision is None else precision
    mons = _Monomials(pair)
    _, _, ru = _reduce(eta_quotient_series(u, prec), mons, strict=False)
    _, _, rv = _reduce(eta_quotient_series(v, prec), mons, strict=False)
    if rv.is_zero:
        raise InconsistentSystem("remainder of v vanishes; cannot determine a")
    n = rv.valuation
    if n < ru.valuation:
        raise InconsistentSystem("remainders of u and v do not cancel")
    a = -ru.coefficient(n) / rv.leading_coefficient()
    if not (ru + rv.scale(a)).is_zero:
        raise InconsistentSystem("u + a v is not a polynomial in x and y")
    if a == 0:
        raise InconsistentSystem("complement constant is zero")
    return v, a


# ----------------------------------------------------------------------
# minimal-pole search


@dataclass
class SearchResult:
    u: EtaQuotient | None
    pole_order: int | None
    refuted: list[int]
    candidates: int
    pole_type: str = ""


def _distributions(weights: Sequence[int], total: int) -> Iterator[tuple[int, ...]]:
    """Nonnegative ``m`` with ``sum w_i m_i == total``."""
    if not weights:
        if total == 0:
            yield ()
        return
    w, rest = weights[0], weights[1:]
    for k in range(total // w + 1):
        for tail in _distributions(rest, total - k * w):
            yield (k,) + tail


def search_u(N: int, Q: int, D_max: int = 64) -> SearchResult:
    """Eta quotient ``u`` with minimal ``-ord_inf u`` subject to

    * the polar part of ``u`` is ``D [inf]`` or ``D ([inf] + [w_Q inf])``;
    * ``div w_Q^* u != div u``.

    Every pole order below the returned one is refuted exhaustively
    within eta quotients that satisfy the modularity conditions.
    """
    solver = _OrderSolver(N)
    divs = solver.divs
    weight = {c: sum(1 for cu in cusps(N) if cu.denominator == c) for c in divs}
    c_inf = N
    c_w = atkin_lehner_denominator(N, Q, N)
    refuted: list[int] = []
    examined = 0
    for D in range(1, D_max + 1):
        found: list[tuple[int, tuple[int, ...], str]] = []
        shapes = [("inf", {c_inf: -D})]
        if c_w != c_inf:
            shapes.append(("inf+winf", {c_inf: -D, c_w: -D}))
        for tag, fixed in shapes:
            free = [c for c in divs if c not in fixed]
            total = -sum(weight[c] * m for c, m in fixed.items())
            for dist in _distributions([weight[c] for c in free], total):
                examined += 1
                orders = dict(fixed)
                orders.update(zip(free, dist))
                r = solver.exponents([orders[c] for c in divs])
                if any(x.denominator != 1 for x in r):
                    continue
                vec = tuple(int(x) for x in r)
                e = EtaQuotient.from_vector(N, vec)
                if not is_modular_function(e):
                    continue
                div = eta_divisor(e)
                if pullback_divisor(N, Q, div) == div:
                    continue
                found.append((sum(map(abs, vec)), vec, tag))
        if found:
            _, vec, tag = min(found)
            log.info("N=%d: pole order %d, %d candidates", N, D, len(found))
            return SearchResult(EtaQuotient.from_vector(N, vec), D, refuted, examined, tag)
        refuted.append(D)
    return SearchResult(None, None, refuted, examined)
