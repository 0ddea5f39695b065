"""Small integer helpers; every level in play is below a few hundred."""

from __future__ import annotations

from functools import lru_cache
from math import gcd, isqrt


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for p in range(3, isqrt(n) + 1, 2):
        if n % p == 0:
            return False
    return True


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p::p] = bytearray(len(sieve[p * p::p]))
    return [i for i, flag in enumerate(sieve) if flag]


@lru_cache(maxsize=None)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization as ``((p, e), ...)`` by trial division."""
    if n < 1:
        raise ValueError("factorize needs a positive integer")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


@lru_cache(maxsize=None)
def divisors(n: int) -> tuple[int, ...]:
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p ** k for d in divs for k in range(e + 1)]
    return tuple(sorted(divs))


def euler_phi(n: int) -> int:
    out = n
    for p, _ in factorize(n):
        out = out // p * (p - 1)
    return out


def is_exact_divisor(q: int, n: int) -> bool:
    """``q | n`` with ``gcd(q, n/q) = 1`` (a Hall divisor)."""
    return q > 0 and n % q == 0 and gcd(q, n // q) == 1


def smallest_prime_factors(n: int) -> list[int]:
    spf = list(range(n + 1))
    for p in range(2, isqrt(n) + 1):
        if spf[p] == p:
            for m in range(p * p, n + 1, p):
                if spf[m] == m:
                    spf[m] = p
    return spf


def divisor_sums(n: int) -> list[int]:
    """``sigma(m)`` for ``0 <= m < n`` (``sigma(0)`` is 0)."""
    sig = [0] * n
    for d in range(1, n):
        for m in range(d, n, d):
            sig[m] += d
    return sig



def kronecker_minus(d: int, p: int) -> int:
    """Legendre-type symbol ``(-d/p)`` for ``d`` in {1, 3}, used by the genus formula."""
    if p == 2:
        return 0 if d == 1 else -1
    if p == 3 and d == 3:
        return 0
    return 1 if pow(-d % p, (p - 1) // 2, p) == 1 else -1
