"""Pure-Python integer kernels.

These are the reference implementations of the hot loops; the compiled
module in ``_ckernel.pyx`` mirrors every signature here exactly.
"""

from __future__ import annotations

from operator import mul

BACKEND = "python"


def mul_trunc(a: list[int], b: list[int], n: int) -> list[int]:
    """Truncated product: first ``n`` coefficients of ``a * b``."""
    out = [0] * n
    lb = min(len(b), n)
    for i in range(min(len(a), n)):
        ai = a[i]
        if not ai:
            continue
        top = min(lb, n - i)
        for j in range(top):
            out[i + j] += ai * b[j]
    return out


def inv_unit(a: list[int], n: int) -> list[int]:
    """Power-series inverse of an integer series whose constant term is +-1."""
    a0 = a[0]
    if a0 not in (1, -1):
        raise ValueError("inv_unit needs a unit constant term")
    la = len(a)
    out = [0] * n
    out[0] = a0
    for k in range(1, n):
        hi = min(k, la - 1)
        s = sum(map(mul, a[1:hi + 1], reversed(out[k - hi:k])))
        out[k] = -a0 * s
    return out


def exp_logderiv(s: list[int], n: int) -> list[int]:
    """Solve ``k*g[k] = sum_{j=1..k} s[j]*g[k-j]`` with ``g[0] = 1``.

    ``s`` is the q-logarithmic derivative of ``g``.  Every division must be
    exact; an inexact step raises ``ArithmeticError``.
    """
    g = [0] * n
    g[0] = 1
    ls = len(s)
    for k in range(1, n):
        hi = min(k, ls - 1)
        acc = sum(map(mul, s[1:hi + 1], reversed(g[k - hi:k])))
        q, r = divmod(acc, k)
        if r:
            raise ArithmeticError(f"non-integral coefficient at index {k}")
        g[k] = q
    return g


def weierstrass_x(h2: list[int], b2: int, b4: int, b6: int, n: int):
    """Integer solve of ``(theta X - 2X)^2 = H^2 * G(X)`` for ``X = 1 + ...``.

    Here ``X = q^2 x``, ``H^2 = (h/q)^2`` is given by ``h2`` and
    ``G = 4X^3 + b2 q^2 X^2 + 2 b4 q^4 X + b6 q^6``.  Returns the first
    ``n`` coefficients of ``X``, or ``None`` as soon as a step would leave
    the integers (the caller then reruns over the rationals).
    """
    X = [0] * n
    X2 = [0] * n
    G = [0] * n
    Y1 = [0] * n
    X[0] = X2[0] = 1
    G[0] = 4
    Y1[0] = -2
    lh = len(h2)
    for k in range(1, n):
        x2 = sum(map(mul, X[1:k], reversed(X[1:k])))
        x3 = x2 + sum(map(mul, X[1:k], reversed(X2[1:k])))
        g = 4 * x3
        if k >= 2:
            g += b2 * X2[k - 2]
        if k >= 4:
            g += 2 * b4 * X[k - 4]
        if k == 6:
            g += b6
        hi = min(k, lh - 1)
        hg = g + sum(map(mul, h2[1:hi + 1], reversed(G[k - hi:k])))
        ys = sum(map(mul, Y1[1:k], reversed(Y1[1:k])))
        c, r = divmod(ys - hg, 4 * (k + 1))
        if r:
            return None
        X[k] = c
        X2[k] = x2 + 2 * c
        G[k] = g + 12 * c
        Y1[k] = (k - 2) * c
    return X
