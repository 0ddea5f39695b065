"""Weierstrass coordinates x, y on X0(N) as q-expansions.

Given the invariant cusp form ``h`` and the quotient curve ``E``, the
functions ``x = q^-2 + ...`` and ``y = q^-3 + ...`` are pinned down by

    F(x, y) = 0    and    q dx/dq = -h (2y + a1 x + a3),

the second being the pulled-back invariant differential.  Eliminating ``y``
gives ``(q dx/dq)^2 = h^2 (4x^3 + b2 x^2 + 2 b4 x + b6)``; writing
``X = q^2 x`` and ``H = h/q`` turns this into a recursion for the
coefficients of ``X`` whose pivot at step ``k`` is ``-4(k + 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import _kernels
from .ecurve import WeierstrassCurve
from .qseries import PrecisionError, QSeries


@dataclass(frozen=True)
class ParamPair:
    x: QSeries
    y: QSeries
    curve: WeierstrassCurve
    h: QSeries

    @property
    def precision(self) -> int:
        return self.x.precision

    @property
    def scale(self) -> int:
        """Degree ``v`` of the substitution ``q -> q^v`` (the valuation of ``h``)."""
        return self.h.valuation


def _x_recursion_rational(H2: list[Fraction], b2: int, b4: int, b6: int, n: int) -> list[Fraction]:
    X = [Fraction(0)] * n
    X2 = [Fraction(0)] * n
    G = [Fraction(0)] * n
    Y1 = [Fraction(0)] * n
    X[0] = X2[0] = Fraction(1)
    G[0] = Fraction(4)
    Y1[0] = Fraction(-2)
    for k in range(1, n):
        x2 = sum((X[i] * X[k - i] for i in range(1, k)), Fraction(0))
        x3 = x2 + sum((X[i] * X2[k - i] for i in range(1, k)), Fraction(0))
        g = 4 * x3
        if k >= 2:
            g += b2 * X2[k - 2]
        if k >= 4:
            g += 2 * b4 * X[k - 4]
        if k == 6:
            g += b6
        hg = g + sum((H2[j] * G[k - j] for j in range(1, min(k, len(H2) - 1) + 1)), Fraction(0))
        ys = sum((Y1[i] * Y1[k - i] for i in range(1, k)), Fraction(0))
        c = (ys - hg) / (4 * (k + 1))
        X[k] = c
        X2[k] = x2 + 2 * c
        G[k] = g + 12 * c
        Y1[k] = (k - 2) * c
    return X


def _solve_x(E: WeierstrassCurve, h: QSeries, precision: int) -> QSeries:
    n = precision + 2
    if h.precision < n + 1:
        raise PrecisionError(f"h is known mod q^{h.precision}; need q^{n + 1}")
    H = h.shift(-1).truncate(n)
    H2 = H * H
    X = None
    if H2.is_integral:
        X = _kernels.weierstrass_x(list(H2.numerators), E.b2, E.b4, E.b6, n)
    if X is not None:
        return QSeries.from_integers(X, -2, precision)
    Xf = _x_recursion_rational(list(H2.coeffs), E.b2, E.b4, E.b6, n)
    return QSeries(Xf, -2, precision)


def parametrize(E: WeierstrassCurve, h: QSeries, precision: int) -> ParamPair:
    """Solve for ``x`` known mod ``q^precision`` (``y`` is then known one order less).

    ``h`` must be known mod ``q^(precision + 3)`` (times its valuation).
    When ``h`` has valuation ``v > 1`` it must be a series in ``q^v``; the
    solve then runs on ``h(q^(1/v))`` and the result is substituted back,
    so ``x`` and ``y`` become ``x(q^v)`` and ``y(q^v)``.
    """
    if precision < 1:
        raise ValueError("precision must be positive")
    if h.is_zero:
        raise ValueError("h is zero")
    v = h.valuation
    if h.leading_coefficient() != 1:
        raise ValueError("h must be normalized with leading coefficient 1")
    if v > 1:
        if any(n % v for n, _ in h.items()):
            raise ValueError(f"h has valuation {v} but is not a series in q^{v}")
        g = QSeries(h.coeffs[::v], 1, -(-h.precision // v))
        inner = parametrize(E, g, -(-precision // v))
        x = inner.x.substitute_power(v).truncate(precision)
        y = inner.y.substitute_power(v).truncate(precision - v)
        return ParamPair(x, y, E, h)
    if v != 1:
        raise ValueError("h must vanish at infinity")
    x = _solve_x(E, h, precision)
    y = -(x.q_derivative() / h + x.scale(E.a1) + E.a3).scale(Fraction(1, 2))
    return ParamPair(x, y, E, h)


def weierstrass_residual(pair: ParamPair) -> QSeries:
    """``F(x, y)``; zero to its precision when the pair lies on the curve."""
    return pair.curve.evaluate(pair.x, pair.y)


def differential_residual(pair: ParamPair, literal: bool = False) -> QSeries:
    """Residual of the pulled-back invariant differential.

    By default returns ``q dx/dq + v h (2y + a1 x + a3)``; the factor ``v``
    is the chain-rule factor of ``dq/q`` under ``q -> q^v`` and is 1 unless
    ``h`` is a series in ``q^v``.  With ``literal=True`` the residual is
    ``(q dx/dq) / (2y + a1 x + a3) + h``, which only vanishes when ``v = 1``.
    """
    E = pair.curve
    w = pair.y.scale(2) + pair.x.scale(E.a1) + E.a3
    dx = pair.x.q_derivative()
    if literal:
        return dx / w + pair.h
    return dx + (pair.h * w).scale(pair.scale)
