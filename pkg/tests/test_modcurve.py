from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bielliptic.arith import divisors
from bielliptic.etalib import order_at_infinity
from bielliptic.modcurve import (Cusp, CuspDivisor, atkin_lehner_denominator,
                                 atkin_lehner_matrix, atkin_lehner_on_cusps, certification_bound,
                                 cusp_of, cusp_width, cusps, eta_divisor, genus, index, infinity,
                                 ligozat_order, pullback_divisor)


def _p1_orbits(N):
    """Cusps as orbits of (c : d) in P^1(Z/N) under (c : d) -> (c : c + d).

    Right cosets of Gamma0(N) in SL2(Z) are labelled by the bottom row mod N
    up to units; the cusp of a coset g is g(inf) = a/c.
    """
    units = [u for u in range(1, N + 1) if gcd(u, N) == 1]

    def canon(c, d):
        return min(((u * c) % N, (u * d) % N) for u in units)

    points = {canon(c, d) for c in range(N) for d in range(N) if gcd(gcd(c, d), N) == 1}
    seen, orbits = set(), []
    for pt in sorted(points):
        if pt in seen:
            continue
        orbit, cur = [], pt
        while cur not in orbit:
            orbit.append(cur)
            cur = canon(cur[0], cur[0] + cur[1])
        seen.update(orbit)
        orbits.append(orbit)
    return orbits


def _lift(c, d, N):
    c = c or N
    while gcd(c, d) != 1:
        d += N
    a = pow(d, -1, c) if c > 1 else 1  # a d - b c = 1
    return a, c


@pytest.mark.parametrize("N", range(1, 41))
def test_cusps_against_coset_orbits(N):
    orbits = _p1_orbits(N)
    assert len(orbits) == len(cusps(N))
    image = {}
    for orbit in orbits:
        a, c = _lift(*orbit[0], N)
        cu = cusp_of(N, a, c)
        assert cusp_width(N, cu) == len(orbit)
        image[cu] = orbit
    assert set(image) == set(cusps(N))
    assert sum(len(o) for o in orbits) == index(N)


@pytest.mark.parametrize("N", range(1, 41))
def test_cusp_of_is_constant_on_gamma0_orbits(N):
    gens = [(1, 1, 0, 1), (1, 0, N, 1)]
    for cu in cusps(N):
        a, c = cu.representative()
        assert gcd(a, c) == 1 and cusp_of(N, a, c) == cu
        for A, B, C, D in gens:
            assert cusp_of(N, A * a + B * c, C * a + D * c) == cu


def test_genus_small_levels():
    # the classical lists of genus 0 and genus 1 levels
    g0 = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 13, 16, 18, 25}
    g1 = {11, 14, 15, 17, 19, 20, 21, 24, 27, 32, 36, 49}
    for N in range(1, 60):
        if N in g0:
            assert genus(N) == 0, N
        elif N in g1:
            assert genus(N) == 1, N
        else:
            assert genus(N) >= 2, N


def test_genus_of_tabulated_levels(data):
    assert all(genus(N) >= 2 for N in data)


exact_pairs = st.integers(1, 200).flatmap(
    lambda N: st.tuples(st.just(N), st.sampled_from([q for q in divisors(N) if gcd(q, N // q) == 1])))


@given(exact_pairs)
def test_atkin_lehner_is_an_involution_permuting_cusps(NQ):
    N, Q = NQ
    a11, a12, a21, a22 = atkin_lehner_matrix(N, Q)
    assert a11 * a22 - a12 * a21 == Q and a11 % Q == 0 and a22 % Q == 0 and a21 % N == 0
    images = [atkin_lehner_on_cusps(N, Q, cu) for cu in cusps(N)]
    assert sorted(images) == sorted(cusps(N))
    for cu, img in zip(cusps(N), images):
        assert atkin_lehner_on_cusps(N, Q, img) == cu
        assert img.denominator == atkin_lehner_denominator(N, Q, cu.denominator)


@pytest.mark.parametrize("N", [11, 34, 43, 131])
def test_fricke_swaps_infinity_and_zero(N):
    assert atkin_lehner_on_cusps(N, N, infinity(N)) == Cusp(N, 1, 0)
    assert atkin_lehner_on_cusps(N, 1, infinity(N)) == infinity(N)


def test_atkin_lehner_rejects_non_exact_divisor():
    with pytest.raises(ValueError):
        atkin_lehner_matrix(72, 4)


def test_ligozat_order_at_infinity_matches_expansion(data):
    for d in data.values():
        for _, e in d.t_spec.terms:
            assert ligozat_order(e, e.level) == order_at_infinity(e)


def test_tabulated_eta_divisors(data):
    n = 0
    for d in data.values():
        for _, e in d.t_spec.terms:
            D = eta_divisor(e)
            assert D.degree == 0 and D.is_integral
            n += 1
    assert n == 60


def test_divisor_of_level_34_term(data):
    u = data[34].t_spec.terms[0][1]
    D = eta_divisor(u)
    assert D == CuspDivisor({Cusp(34, 2, 0): 4, infinity(34): -4})
    assert pullback_divisor(34, 17, D) == -D


def test_cusp_divisor_algebra():
    a, b = Cusp(6, 1), Cusp(6, 2)
    D = CuspDivisor({a: 2, b: Fraction(-1, 2)})
    assert D.degree == Fraction(3, 2) and not D.is_integral
    assert D - D == CuspDivisor() and not (D - D)
    assert D.scale(2).poles() == {b: 1}
    assert hash(D + CuspDivisor()) == hash(D)
    assert "2*0" in repr(D)


def test_certification_bound():
    N = 34
    assert certification_bound(N, {infinity(N): 8, Cusp(N, 2): 8}) == 16
    with pytest.raises(ValueError):
        certification_bound(N, {infinity(N): -1})
    with pytest.raises(ValueError):
        certification_bound(N, {infinity(17): 1})


def test_cusp_labels():
    assert str(infinity(72)) == "inf" and str(Cusp(72, 1)) == "0"
    assert str(Cusp(72, 2, 1)) == "[c=2,a=1 mod 2]" and str(Cusp(34, 2)) == "[c=2]"
