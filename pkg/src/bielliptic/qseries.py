"""Truncated Laurent series in q with exact rational coefficients.

A :class:`QSeries` is known modulo ``q**precision``.  Internally it keeps
integer numerators over one positive common denominator so that the hot
products run on plain integers (see :mod:`bielliptic._kernels`).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from numbers import Rational
from typing import Iterable

from . import _kernels


class PrecisionError(ArithmeticError):
    """A coefficient at or beyond the known precision was requested."""


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"exact rational coefficient expected, got {type(c).__name__}")


class QSeries:
    """Truncated Laurent series ``sum c_n q^n + O(q^precision)``.

    Values are immutable.  The representation is normalized: the first
    stored coefficient is nonzero unless the series is the zero series, in
    which case ``valuation == precision`` and nothing is stored.
    """

    __slots__ = ("valuation", "precision", "_num", "_den")

    def __init__(self, coeffs: Iterable = (), valuation: int = 0,
                 precision: int | None = None):
        fr = [_as_fraction(c) for c in coeffs]
        if precision is None:
            precision = valuation + len(fr)
        if valuation + len(fr) > precision:
            fr = fr[:max(precision - valuation, 0)]
        den = lcm(*(c.denominator for c in fr)) if fr else 1
        num = [c.numerator * (den // c.denominator) for c in fr]
        num.extend([0] * (precision - valuation - len(num)))
        self._set(num, den, valuation, precision)

    def _set(self, num: list[int], den: int, valuation: int, precision: int) -> None:
        start = 0
        while start < len(num) and not num[start]:
            start += 1
        if start == len(num):
            num, valuation, den = [], precision, 1
        else:
            if start:
                num = num[start:]
                valuation += start
            g = gcd(den, *num)
            if g > 1:
                num = [c // g for c in num]
                den //= g
        self._num = tuple(num)
        self._den = den
        self.valuation = valuation
        self.precision = precision

    @classmethod
    def from_integers(cls, num: Iterable[int], valuation: int = 0,
                      precision: int | None = None, den: int = 1) -> "QSeries":
        """Build from integer numerators over a common denominator ``den``."""
        num = list(num)
        if precision is None:
            precision = valuation + len(num)
        if den <= 0:
            raise ValueError("denominator must be positive")
        num = num[:max(precision - valuation, 0)]
        num.extend([0] * (precision - valuation - len(num)))
        obj = cls.__new__(cls)
        obj._set(num, den, valuation, precision)
        return obj

    @classmethod
    def constant(cls, c, precision: int) -> "QSeries":
        return cls([c], 0, precision) if precision > 0 else cls.zero(precision)

    @classmethod
    def monomial(cls, n: int, precision: int, c=1) -> "QSeries":
        """``c * q**n + O(q**precision)``."""
        if n >= precision:
            return cls.zero(precision)
        return cls([c], n, precision)

    @classmethod
    def zero(cls, precision: int) -> "QSeries":
        return cls.from_integers([], precision, precision)

    # ------------------------------------------------------------------
    # inspection

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        d = self._den
        return tuple(Fraction(c, d) for c in self._num)

    @property
    def numerators(self) -> tuple[int, ...]:
        return self._num

    @property
    def denominator(self) -> int:
        return self._den

    @property
    def is_zero(self) -> bool:
        """True when the series vanishes to its known precision."""
        return not self._num

    @property
    def relative_precision(self) -> int:
        return self.precision - self.valuation

    @property
    def is_integral(self) -> bool:
        return self._den == 1

    def leading_coefficient(self) -> Fraction:
        if self.is_zero:
            raise PrecisionError("zero series has no leading coefficient")
        return Fraction(self._num[0], self._den)

    def coefficient(self, n: int) -> Fraction:
        """Exact coefficient of ``q**n``; never silently zero past precision."""
        if n >= self.precision:
            raise PrecisionError(
                f"coefficient of q^{n} requested but series is only known mod q^{self.precision}")
        if n < self.valuation:
            return Fraction(0)
        return Fraction(self._num[n - self.valuation], self._den)

    def __getitem__(self, n: int) -> Fraction:
        return self.coefficient(n)

    def items(self):
        """Nonzero ``(exponent, coefficient)`` pairs, in increasing order."""
        d = self._den
        return [(self.valuation + i, Fraction(c, d)) for i, c in enumerate(self._num) if c]

    # ------------------------------------------------------------------
    # ring operations

    def _aligned(self, other: "QSeries"):
        v = min(self.valuation, other.valuation)
        p = min(self.precision, other.precision)
        den = lcm(self._den, other._den)
        out = []
        for s in (self, other):
            k = den // s._den
            buf = [0] * max(p - v, 0)
            off = s.valuation - v
            for i, c in enumerate(s._num[:max(p - s.valuation, 0)]):
                buf[off + i] = c * k
            out.append(buf)
        return out[0], out[1], den, v, p

    def _coerce(self, other) -> "QSeries":
        if isinstance(other, QSeries):
            return other
        return QSeries.constant(_as_fraction(other), self.precision)

    def __add__(self, other):
        if not isinstance(other, (QSeries, int, Fraction)):
            return NotImplemented
        other = self._coerce(other)
        a, b, den, v, p = self._aligned(other)
        return QSeries.from_integers([x + y for x, y in zip(a, b)], v, p, den)

    __radd__ = __add__

    def __neg__(self):
        return QSeries.from_integers([-c for c in self._num], self.valuation,
                                     self.precision, self._den)

    def __sub__(self, other):
        if not isinstance(other, (QSeries, int, Fraction)):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "QSeries":
        c = _as_fraction(c)
        if c == 0:
            return QSeries.zero(self.precision)
        return QSeries.from_integers([x * c.numerator for x in self._num],
                                     self.valuation, self.precision,
                                     self._den * c.denominator)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, QSeries):
            return NotImplemented
        v = self.valuation + other.valuation
        p = min(self.precision + other.valuation, other.precision + self.valuation)
        if self.is_zero or other.is_zero:
            return QSeries.zero(p)
        num = _kernels.mul_trunc(list(self._num), list(other._num), p - v)
        return QSeries.from_integers(num, v, p, self._den * other._den)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def invert(self) -> "QSeries":
        """Multiplicative inverse; the relative precision is preserved."""
        if self.is_zero:
            raise ZeroDivisionError("inverse of the zero series")
        n = self.relative_precision
        a = list(self._num)
        a0 = a[0]
        if a0 in (1, -1):
            inv = _kernels.inv_unit(a, n)
            return QSeries.from_integers([c * self._den for c in inv],
                                         -self.valuation, n - self.valuation)
        # A(q) = a0 * D(q/a0) with D integral and D(0) = 1
        scaled = [1] + [a[k] * a0 ** (k - 1) for k in range(1, n)]
        inv = _kernels.inv_unit(scaled, n)
        top = a0 ** n
        sign = 1 if top > 0 else -1
        num = [sign * self._den * inv[k] * a0 ** (n - 1 - k) for k in range(n)]
        return QSeries.from_integers(num, -self.valuation, n - self.valuation, abs(top))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(1 / _as_fraction(other))
        if not isinstance(other, QSeries):
            return NotImplemented
        return self * other.invert()

    def __rtruediv__(self, other):
        return self.invert() * other

    def __pow__(self, e: int) -> "QSeries":
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.invert() ** (-e)
        result = QSeries.constant(1, self.relative_precision)
        base = self
        first = True
        while e:
            if e & 1:
                result = base if first else result * base
                first = False
            e >>= 1
            if e:
                base = base * base
        return result

    # ------------------------------------------------------------------
    # other operations

    def q_derivative(self) -> "QSeries":
        """The operator ``q d/dq``; precision is unchanged."""
        v = self.valuation
        return QSeries.from_integers([(v + i) * c for i, c in enumerate(self._num)],
                                     v, self.precision, self._den)

    def substitute_power(self, d: int) -> "QSeries":
        """``q -> q**d``; valuation and precision scale by ``d``."""
        if d <= 0:
            raise ValueError("substitution exponent must be positive")
        if d == 1:
            return self
        num = [0] * (len(self._num) * d)
        num[::d] = self._num
        return QSeries.from_integers(num, self.valuation * d, self.precision * d, self._den)

    def shift(self, k: int) -> "QSeries":
        """Multiply by ``q**k``."""
        return QSeries.from_integers(list(self._num), self.valuation + k,
                                     self.precision + k, self._den)

    def truncate(self, precision: int) -> "QSeries":
        if precision >= self.precision:
            return self
        return QSeries.from_integers(list(self._num), self.valuation, precision, self._den)

    def __eq__(self, other):
        """Equality up to the smaller of the two precisions."""
        if isinstance(other, (int, Fraction)):
            other = self._coerce(other)
        if not isinstance(other, QSeries):
            return NotImplemented
        return (self - other).is_zero

    __hash__ = None

    def __repr__(self) -> str:
        terms = []
        for n, c in self.items()[:12]:
            if n == 0:
                terms.append(str(c))
            else:
                mono = "q" if n == 1 else f"q^{n}"
                terms.append(mono if c == 1 else f"-{mono}" if c == -1 else f"{c}*{mono}")
        body = " + ".join(terms).replace("+ -", "- ") if terms else "0"
        if len(self.items()) > 12:
            body += " + ..."
        return f"{body} + O(q^{self.precision})"


def arith(a: QSeries, b: QSeries, op: str) -> QSeries:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def invert(a: QSeries) -> QSeries:
    return a.invert()


def q_derivative(a: QSeries) -> QSeries:
    return a.q_derivative()


def substitute_power(a: QSeries, d: int) -> QSeries:
    return a.substitute_power(d)


def coefficient(a: QSeries, n: int) -> Fraction:
    return a.coefficient(n)
