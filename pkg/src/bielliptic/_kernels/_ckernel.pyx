# cython: language_level=3, boundscheck=False, wraparound=False
"""GMP-backed versions of the integer kernels in ``_pykernel``."""

from libc.stdlib cimport malloc, free
from gmpy2 cimport *

cdef extern from "gmp.h":
    void mpz_init(mpz_t)
    void mpz_clear(mpz_t)
    void mpz_set_si(mpz_t, long)
    void mpz_add(mpz_t, const mpz_t, const mpz_t)
    void mpz_sub(mpz_t, const mpz_t, const mpz_t)
    void mpz_mul_si(mpz_t, const mpz_t, long)
    void mpz_addmul(mpz_t, const mpz_t, const mpz_t)
    int mpz_sgn(const mpz_t)
    int mpz_divisible_ui_p(const mpz_t, unsigned long)
    void mpz_divexact_ui(mpz_t, const mpz_t, unsigned long)

import_gmpy2()
from gmpy2 import mpz as _to_mpz

BACKEND = "cython-gmp"


cdef mpz_t* _alloc(Py_ssize_t n) except NULL:
    cdef mpz_t* arr = <mpz_t*>malloc((n if n > 0 else 1) * sizeof(mpz_t))
    cdef Py_ssize_t i
    if arr == NULL:
        raise MemoryError()
    for i in range(n):
        mpz_init(arr[i])
    return arr


cdef void _release(mpz_t* arr, Py_ssize_t n):
    cdef Py_ssize_t i
    for i in range(n):
        mpz_clear(arr[i])
    free(arr)


cdef void _load(mpz_t* arr, seq, Py_ssize_t n) except *:
    cdef Py_ssize_t i
    cdef mpz tmp
    for i in range(n):
        tmp = _to_mpz(seq[i])
        mpz_set(arr[i], tmp.z)


cdef list _dump(mpz_t* arr, Py_ssize_t n):
    cdef list out = []
    cdef Py_ssize_t i
    cdef mpz tmp
    for i in range(n):
        tmp = GMPy_MPZ_New(NULL)
        mpz_set(tmp.z, arr[i])
        out.append(int(tmp))
    return out


def mul_trunc(a, b, Py_ssize_t n):
    cdef Py_ssize_t la = min(len(a), n), lb = min(len(b), n), i, j, top
    if n <= 0:
        return []
    cdef mpz_t* A = _alloc(la)
    cdef mpz_t* B = _alloc(lb)
    cdef mpz_t* C = _alloc(n)
    try:
        _load(A, a, la)
        _load(B, b, lb)
        for i in range(la):
            if mpz_sgn(A[i]) == 0:
                continue
            top = min(lb, n - i)
            for j in range(top):
                mpz_addmul(C[i + j], A[i], B[j])
        return _dump(C, n)
    finally:
        _release(A, la)
        _release(B, lb)
        _release(C, n)


def inv_unit(a, Py_ssize_t n):
    a0 = a[0]
    if a0 not in (1, -1):
        raise ValueError("inv_unit needs a unit constant term")
    if n <= 0:
        return []
    cdef Py_ssize_t la = min(len(a), n), k, j, hi
    cdef long sign = a0
    cdef mpz_t* A = _alloc(la)
    cdef mpz_t* R = _alloc(n)
    cdef mpz_t acc
    mpz_init(acc)
    try:
        _load(A, a, la)
        mpz_set_si(R[0], sign)
        for k in range(1, n):
            mpz_set_si(acc, 0)
            hi = min(k, la - 1)
            for j in range(1, hi + 1):
                mpz_addmul(acc, A[j], R[k - j])
            mpz_mul_si(R[k], acc, -sign)
        return _dump(R, n)
    finally:
        mpz_clear(acc)
        _release(A, la)
        _release(R, n)


def exp_logderiv(s, Py_ssize_t n):
    if n <= 0:
        return []
    cdef Py_ssize_t ls = min(len(s), n), k, j, hi
    cdef mpz_t* S = _alloc(ls)
    cdef mpz_t* G = _alloc(n)
    cdef mpz_t acc
    mpz_init(acc)
    try:
        _load(S, s, ls)
        mpz_set_si(G[0], 1)
        for k in range(1, n):
            mpz_set_si(acc, 0)
            hi = min(k, ls - 1)
            for j in range(1, hi + 1):
                mpz_addmul(acc, S[j], G[k - j])
            if not mpz_divisible_ui_p(acc, k):
                raise ArithmeticError(f"non-integral coefficient at index {k}")
            mpz_divexact_ui(G[k], acc, k)
        return _dump(G, n)
    finally:
        mpz_clear(acc)
        _release(S, ls)
        _release(G, n)


def weierstrass_x(h2, b2, b4, b6, Py_ssize_t n):
    if n <= 0:
        return []
    cdef Py_ssize_t lh = min(len(h2), n), k, i, j, hi
    cdef unsigned long piv
    cdef mpz_t* H2 = _alloc(lh)
    cdef mpz_t* X = _alloc(n)
    cdef mpz_t* X2 = _alloc(n)
    cdef mpz_t* G = _alloc(n)
    cdef mpz_t* Y1 = _alloc(n)
    cdef mpz_t x2, x3, g, hg, ys, c, tmp
    cdef mpz B2 = _to_mpz(b2), B4 = _to_mpz(2 * b4), B6 = _to_mpz(b6)
    mpz_init(x2); mpz_init(x3); mpz_init(g); mpz_init(hg)
    mpz_init(ys); mpz_init(c); mpz_init(tmp)
    try:
        _load(H2, h2, lh)
        mpz_set_si(X[0], 1)
        mpz_set_si(X2[0], 1)
        mpz_set_si(G[0], 4)
        mpz_set_si(Y1[0], -2)
        for k in range(1, n):
            mpz_set_si(x2, 0)
            mpz_set_si(ys, 0)
            for i in range(1, k):
                mpz_addmul(x2, X[i], X[k - i])
                mpz_addmul(ys, Y1[i], Y1[k - i])
            mpz_set(x3, x2)
            for i in range(1, k):
                mpz_addmul(x3, X[i], X2[k - i])
            mpz_mul_si(g, x3, 4)
            if k >= 2:
                mpz_addmul(g, B2.z, X2[k - 2])
            if k >= 4:
                mpz_addmul(g, B4.z, X[k - 4])
            if k == 6:
                mpz_add(g, g, B6.z)
            mpz_set(hg, g)
            hi = min(k, lh - 1)
            for j in range(1, hi + 1):
                mpz_addmul(hg, H2[j], G[k - j])
            mpz_sub(tmp, ys, hg)
            piv = 4 * (k + 1)
            if not mpz_divisible_ui_p(tmp, piv):
                return None
            mpz_divexact_ui(c, tmp, piv)
            mpz_set(X[k], c)
            mpz_mul_si(tmp, c, 2)
            mpz_add(X2[k], x2, tmp)
            mpz_mul_si(tmp, c, 12)
            mpz_add(G[k], g, tmp)
            mpz_mul_si(Y1[k], c, k - 2)
        return _dump(X, n)
    finally:
        mpz_clear(x2); mpz_clear(x3); mpz_clear(g); mpz_clear(hg)
        mpz_clear(ys); mpz_clear(c); mpz_clear(tmp)
        _release(H2, lh)
        _release(X, n)
        _release(X2, n)
        _release(G, n)
        _release(Y1, n)
