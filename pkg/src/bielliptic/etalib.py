"""Dedekind eta quotients as q-series and as candidate functions on X0(N)."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from . import _kernels
from .arith import divisor_sums, divisors, factorize
from .qseries import QSeries


class InvalidEtaQuotient(ValueError):
    """The exponent vector does not describe a function in integer powers of q."""


@dataclass(frozen=True)
class EtaQuotient:
    """``prod_{d | N} eta(d z)^{r_d}`` at level ``N``.

    ``exponents`` maps divisors of ``level`` to integers; zero entries are
    dropped on construction so equal quotients compare equal.
    """

    level: int
    exponents: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.level < 1:
            raise ValueError("level must be positive")
        clean = {}
        for d, r in self.exponents.items():
            d, r = int(d), int(r)
            if d < 1 or self.level % d:
                raise ValueError(f"{d} does not divide the level {self.level}")
            if r:
                clean[d] = r
        object.__setattr__(self, "exponents", dict(sorted(clean.items())))

    def __hash__(self):
        return hash((self.level, tuple(self.exponents.items())))

    def __getitem__(self, d: int) -> int:
        return self.exponents.get(d, 0)

    def vector(self) -> tuple[int, ...]:
        """Exponents in the order of ``divisors(level)``, zeros included."""
        return tuple(self[d] for d in divisors(self.level))

    @classmethod
    def from_vector(cls, level: int, vec) -> "EtaQuotient":
        return cls(level, dict(zip(divisors(level), vec)))

    @classmethod
    def parse(cls, level: int, text: str) -> "EtaQuotient":
        """Parse the ``"d:r,d:r"`` form used by fixtures and the CLI."""
        exps: dict[int, int] = {}
        for part in text.replace(" ", "").split(","):
            if not part:
                continue
            d, _, r = part.partition(":")
            if not r:
                raise ValueError(f"bad exponent entry {part!r}; expected d:r")
            exps[int(d)] = exps.get(int(d), 0) + int(r)
        return cls(level, exps)

    def format(self) -> str:
        return ",".join(f"{d}:{r}" for d, r in self.exponents.items())

    def pretty(self) -> str:
        def eta(d, r):
            base = "eta(z)" if d == 1 else f"eta({d}z)"
            return base if r == 1 else f"{base}^{r}"

        num = " ".join(eta(d, r) for d, r in self.exponents.items() if r > 0) or "1"
        den = " ".join(eta(d, -r) for d, r in self.exponents.items() if r < 0)
        return f"{num} / ({den})" if den else num

    def __mul__(self, other: "EtaQuotient") -> "EtaQuotient":
        if self.level != other.level:
            raise ValueError("eta quotients at different levels")
        out = dict(self.exponents)
        for d, r in other.exponents.items():
            out[d] = out.get(d, 0) + r
        return EtaQuotient(self.level, out)

    def inverse(self) -> "EtaQuotient":
        return EtaQuotient(self.level, {d: -r for d, r in self.exponents.items()})

    @property
    def weight(self) -> Fraction:
        return Fraction(sum(self.exponents.values()), 2)


def euler_product(precision: int) -> QSeries:
    """``prod_{n>=1} (1 - q^n) + O(q^precision)`` via pentagonal numbers."""
    if precision < 1:
        raise ValueError("precision must be at least 1")
    coeffs = [0] * precision
    k = 0
    while True:
        k += 1
        sign = -1 if k % 2 else 1
        lo, hi = k * (3 * k - 1) // 2, k * (3 * k + 1) // 2
        if lo >= precision:
            break
        coeffs[lo] += sign
        if hi < precision:
            coeffs[hi] += sign
    coeffs[0] = 1
    return QSeries.from_integers(coeffs, 0, precision)


def order_at_infinity(e: EtaQuotient) -> Fraction:
    return Fraction(sum(d * r for d, r in e.exponents.items()), 24)


def eta_quotient_series(e: EtaQuotient, precision: int) -> QSeries:
    """q-expansion of the eta quotient, known modulo ``q**precision``.

    The leading coefficient is 1.  The product of the shifted Euler
    products is obtained from its logarithmic derivative
    ``-sum_d r_d d sigma(m) q^(dm)`` in a single integer recurrence.
    """
    v = order_at_infinity(e)
    if v.denominator != 1:
        raise InvalidEtaQuotient(
            f"order at infinity {v} is not an integer; not a series in integer powers of q")
    v = int(v)
    n = precision - v
    if n <= 0:
        return QSeries.zero(precision)
    sig = divisor_sums(n)
    s = [0] * n
    for d, r in e.exponents.items():
        for m in range(1, (n - 1) // d + 1):
            s[d * m] -= r * d * sig[m]
    return QSeries.from_integers(_kernels.exp_logderiv(s, n), v, precision)


def is_modular_function(e: EtaQuotient) -> bool:
    """Ligozat's sufficient conditions for a function on X0(N)."""
    N = e.level
    r = e.exponents
    if sum(r.values()) != 0:
        return False
    if sum(d * x for d, x in r.items()) % 24:
        return False
    if sum((N // d) * x for d, x in r.items()) % 24:
        return False
    parity: dict[int, int] = {}
    for d, x in r.items():
        for p, k in factorize(d):
            parity[p] = parity.get(p, 0) + k * x
    return all(v % 2 == 0 for v in parity.values())

