"""Cusps of X0(N), divisors of eta quotients, and the Atkin-Lehner action."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Mapping

from .arith import divisors, euler_phi, factorize, is_exact_divisor, kronecker_minus
from .etalib import EtaQuotient, InvalidEtaQuotient


@dataclass(frozen=True, order=True)
class Cusp:
    """Gamma0(N)-class of a cusp ``a/c`` with ``c | N``.

    ``numerator_class`` is the class of ``a`` modulo ``gcd(c, N/c)``, stored as
    its least nonnegative residue.  ``denominator == N`` is the cusp at
    infinity and ``denominator == 1`` is the cusp 0.
    """

    level: int
    denominator: int
    numerator_class: int = 0

    def representative(self) -> tuple[int, int]:
        """A coprime pair ``(a, c)`` with ``a/c`` in this class."""
        c = self.denominator
        g = gcd(c, self.level // c)
        a = self.numerator_class
        while gcd(a, c) != 1:
            a += g
        return a, c

    @property
    def is_infinity(self) -> bool:
        return self.denominator == self.level

    def __str__(self) -> str:
        if self.is_infinity:
            return "inf"
        if self.denominator == 1:
            return "0"
        g = gcd(self.denominator, self.level // self.denominator)
        if g == 1:
            return f"[c={self.denominator}]"
        return f"[c={self.denominator},a={self.numerator_class} mod {g}]"


@lru_cache(maxsize=None)
def cusps(N: int) -> tuple[Cusp, ...]:
    if N < 1:
        raise ValueError("level must be positive")
    out = []
    for c in divisors(N):
        g = gcd(c, N // c)
        out.extend(Cusp(N, c, a) for a in range(g) if gcd(a, g) == 1)
    return tuple(out)


def infinity(N: int) -> Cusp:
    return Cusp(N, N, 0)


def cusp_of(N: int, a: int, c: int) -> Cusp:
    """Class of the rational ``a/c`` (``c == 0`` is infinity) on X0(N)."""
    if c < 0:
        a, c = -a, -c
    if c == 0:
        return infinity(N)
    g0 = gcd(a, c)
    a, c = a // g0, c // g0
    c0 = gcd(c, N)
    g = gcd(c0, N // c0)
    return Cusp(N, c0, (a * (c // c0)) % g)


def cusp_width(N: int, cusp: Cusp) -> int:
    return N // gcd(cusp.denominator ** 2, N)


def index(N: int) -> int:
    """``[PSL2(Z) : Gamma0(N)/{+-1}] = N prod_{p | N} (1 + 1/p)``."""
    out = N
    for p, _ in factorize(N):
        out = out // p * (p + 1)
    return out


def genus(N: int) -> int:
    if N < 1:
        raise ValueError("level must be positive")
    primes = [p for p, _ in factorize(N)]
    nu2 = 0 if N % 4 == 0 else _prod(1 + kronecker_minus(1, p) for p in primes)
    nu3 = 0 if N % 9 == 0 else _prod(1 + kronecker_minus(3, p) for p in primes)
    ncusps = sum(euler_phi(gcd(c, N // c)) for c in divisors(N))
    g = 1 + Fraction(index(N), 12) - Fraction(nu2, 4) - Fraction(nu3, 3) - Fraction(ncusps, 2)
    assert g.denominator == 1
    return int(g)


def _prod(it: Iterable[int]) -> int:
    out = 1
    for v in it:
        out *= v
    return out


class CuspDivisor:
    """Finite formal sum of cusps with rational multiplicities."""

    __slots__ = ("_m",)

    def __init__(self, entries: Mapping[Cusp, int | Fraction] | None = None):
        self._m = {c: Fraction(v) for c, v in (entries or {}).items() if v}

    def __getitem__(self, cusp: Cusp) -> Fraction:
        return self._m.get(cusp, Fraction(0))

    def items(self):
        return sorted(self._m.items())

    def support(self) -> list[Cusp]:
        return sorted(self._m)

    @property
    def degree(self) -> Fraction:
        return sum(self._m.values(), Fraction(0))

    @property
    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self._m.values())

    def poles(self) -> dict[Cusp, int]:
        """Pole orders (positive integers) at cusps where the multiplicity is negative."""
        return {c: int(-v) for c, v in self._m.items() if v < 0}

    def __add__(self, other: "CuspDivisor") -> "CuspDivisor":
        out = dict(self._m)
        for c, v in other._m.items():
            out[c] = out.get(c, 0) + v
        return CuspDivisor(out)

    def __neg__(self) -> "CuspDivisor":
        return CuspDivisor({c: -v for c, v in self._m.items()})

    def __sub__(self, other: "CuspDivisor") -> "CuspDivisor":
        return self + (-other)

    def scale(self, k) -> "CuspDivisor":
        return CuspDivisor({c: k * v for c, v in self._m.items()})

    def __eq__(self, other):
        if not isinstance(other, CuspDivisor):
            return NotImplemented
        return self._m == other._m

    def __hash__(self):
        return hash(frozenset(self._m.items()))

    def __bool__(self):
        return bool(self._m)

    def __repr__(self) -> str:
        if not self._m:
            return "0"
        parts = []
        for c, v in self.items():
            v = int(v) if v.denominator == 1 else v
            parts.append(f"{v}*{c}")
        return " + ".join(parts).replace("+ -", "- ")


def ligozat_order(e: EtaQuotient, c: int) -> Fraction:
    """Order of vanishing of the eta quotient at any cusp with denominator ``c``."""
    N = e.level
    g = gcd(c, N // c)
    s = sum(Fraction(r * gcd(c, d) ** 2, d) for d, r in e.exponents.items())
    return Fraction(N, 24 * g * c) * s


def eta_divisor(e: EtaQuotient) -> CuspDivisor:
    """Divisor of a modular eta quotient; it is supported on the cusps."""
    D = CuspDivisor({cu: ligozat_order(e, cu.denominator) for cu in cusps(e.level)})
    if not D.is_integral or D.degree != 0:
        raise InvalidEtaQuotient(f"{e.pretty()} is not a function on X0({e.level}): divisor {D}")
    return D


@lru_cache(maxsize=None)
def atkin_lehner_matrix(N: int, Q: int) -> tuple[int, int, int, int]:
    """Integer entries ``(Q*A, B, N*C, Q*D)`` of a matrix of determinant ``Q``."""
    if not is_exact_divisor(Q, N):
        raise ValueError(f"{Q} is not an exact divisor of {N}")
    R = N // Q
    # Q*A*D - R*B*C = 1 with A = C = 1
    D = pow(Q, -1, R) if R > 1 else 1
    B = (Q * D - 1) // R
    return Q, B, N, Q * D


def atkin_lehner_on_cusps(N: int, Q: int, cusp: Cusp) -> Cusp:
    """Image of ``cusp`` under ``w_Q`` by explicit matrix action."""
    if cusp.level != N:
        raise ValueError("cusp belongs to another level")
    a11, a12, a21, a22 = atkin_lehner_matrix(N, Q)
    a, c = cusp.representative()
    return cusp_of(N, a11 * a + a12 * c, a21 * a + a22 * c)


def atkin_lehner_denominator(N: int, Q: int, c: int) -> int:
    """Denominator of ``w_Q`` applied to a cusp with denominator ``c``."""
    cq = gcd(c, Q)
    return (Q // cq) * (c // cq)


def pullback_divisor(N: int, Q: int, D: CuspDivisor) -> CuspDivisor:
    """``w_Q^* D``; for an involution it equals the pushforward."""
    out: dict[Cusp, Fraction] = {}
    for cu, m in D.items():
        img = atkin_lehner_on_cusps(N, Q, cu)
        out[img] = out.get(img, 0) + m
    return CuspDivisor(out)


def certification_bound(N: int, pole_orders: Mapping[Cusp, int]) -> int:
    """Degree of the allowed pole divisor.

    A nonzero function on X0(N) whose poles are bounded by ``pole_orders``
    has at most that many zeros, so a q-expansion vanishing beyond this
    order at infinity proves the function is identically zero.
    """
    total = 0
    for cu, k in pole_orders.items():
        if cu.level != N:
            raise ValueError("cusp belongs to another level")
        if k < 0:
            raise ValueError("pole orders must be nonnegative")
        total += int(k)
    return total
