from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bielliptic.arith import divisors
from bielliptic.ecurve import build_h
from bielliptic.etalib import EtaQuotient, eta_quotient_series, is_modular_function, order_at_infinity
from bielliptic.modcurve import (CuspDivisor, atkin_lehner_on_cusps, cusps, eta_divisor, infinity,
                                 pullback_divisor)
from bielliptic.pipeline import default_precision
from bielliptic.relation import (CertificationError, InconsistentSystem, ModelPolynomial,
                                 NoComplement, build_t, eta_quotient_with_divisor, express_in_xy,
                                 find_complement, relation_bound, relation_residual, search_u)
from bielliptic.wparam import parametrize


def setup(d, prec=None):
    prec = prec or default_precision(d)
    h = build_h(d.h_recipe, prec + 3 * d.h_recipe.valuation + 8)
    return parametrize(d.curve, h, prec), build_t(d.t_spec, prec)


def test_model_polynomial_basics():
    P = ModelPolynomial((1, 0, Fraction(2), 0, 0), (3, 0))
    assert P.P1 == (1, 0, 2) and P.P2 == (3,) and isinstance(P.P1[2], int)
    assert P.deg1 == 2 and P.deg2 == 0 and P.is_integral
    assert P.pole_weight() == 4
    assert ModelPolynomial((1,), (0, 1)).pole_weight() == 5
    assert str(P) == "2*x^2 + 1 + 3*y"
    assert P.evaluate(5, 7) == 51 + 21
    assert ModelPolynomial.from_dict(P.to_dict()) == P
    half = ModelPolynomial((Fraction(1, 2),))
    assert not half.is_integral and half.to_dict() == {"P1": ["1/2"], "P2": []}
    assert str(ModelPolynomial()) == "0"


def test_elimination_and_substitution_agree(data):
    for N in (34, 43, 54, 64, 72):
        d = data[N]
        pair, t = setup(d)
        P = express_in_xy(t, pair)
        assert P == d.expected_P
        r = relation_residual(t, pair, P)
        assert r.is_zero and r.precision > relation_bound(d.t_spec, P, d.involution if d.is_atkin_lehner else None)


@settings(max_examples=12, deadline=None)
@given(st.sampled_from([34, 38, 43, 45, 55, 63, 64, 72, 75]), st.integers(0, 40))
def test_relation_stable_under_more_precision(data, N, extra):
    d = data[N]
    pair, t = setup(d, default_precision(d) + extra)
    assert express_in_xy(t, pair) == d.expected_P


def test_bounds(data):
    assert relation_bound(data[34].t_spec, data[34].expected_P, 17) == 16
    assert relation_bound(data[131].t_spec, data[131].expected_P, 131) == 260


def test_certification_needs_precision(data):
    d = data[34]
    pair, t = setup(d, 16)
    with pytest.raises(CertificationError):
        express_in_xy(t, pair, bound=16)
    pair, t = setup(d)
    assert express_in_xy(t, pair, bound=16) == d.expected_P


def test_invariant_part_is_not_a_relation(data):
    d = data[34]
    pair, _ = setup(d)
    u = eta_quotient_series(d.t_spec.u, pair.precision)
    with pytest.raises(InconsistentSystem):
        express_in_xy(u, pair)


def test_max_degree_cap(data):
    d = data[43]
    pair, t = setup(d)
    with pytest.raises(InconsistentSystem):
        express_in_xy(t, pair, D1=3)


def test_non_integral_relation_warns(data):
    d = data[34]
    pair, t = setup(d)
    with pytest.warns(UserWarning, match="non-integral"):
        P = express_in_xy(t.scale(Fraction(1, 2)), pair)
    assert P.P1[0] == Fraction(-12)


@pytest.mark.parametrize("N,a", [(34, 17), (43, 1849), (63, 7)])
def test_complement_examples(data, N, a):
    d = data[N]
    pair, _ = setup(d)
    v, got = find_complement(N, d.t_spec.u, d.involution, pair)
    assert got == a
    assert d.t_spec.terms[1] == (-a, v)


def test_complement_identity(data):
    # div v = -div u whenever w pulls div u back to its negative
    for d in data.values():
        if not d.is_atkin_lehner:
            continue
        D = eta_divisor(d.t_spec.u)
        if pullback_divisor(d.level, d.involution, D) == -D:
            assert eta_quotient_with_divisor(d.level, -D) == d.t_spec.u.inverse()


@st.composite
def modular_eta(draw):
    N = draw(st.sampled_from([34, 38, 45, 54, 63]))
    ds = divisors(N)
    vec = draw(st.lists(st.integers(-8, 8), min_size=len(ds), max_size=len(ds)))
    return EtaQuotient.from_vector(N, vec)


@given(modular_eta())
def test_divisor_solver_roundtrip(e):
    if not is_modular_function(e):
        return
    assert eta_quotient_with_divisor(e.level, eta_divisor(e)) == e


def test_unrealizable_divisors():
    N = 72
    c2 = [cu for cu in cusps(N) if cu.denominator == 6]
    with pytest.raises(NoComplement, match="not constant"):
        eta_quotient_with_divisor(N, CuspDivisor({c2[0]: 1, infinity(N): -1}))
    with pytest.raises(NoComplement):
        eta_quotient_with_divisor(34, CuspDivisor({infinity(34): -1, atkin_lehner_on_cusps(34, 34, infinity(34)): 1}))


@pytest.mark.parametrize("N,Q,D", [(43, 43, 7), (34, 17, 4)])
def test_search_examples(N, Q, D):
    res = search_u(N, Q)
    assert res.pole_order == D and res.refuted == list(range(1, D))
    u = res.u
    assert is_modular_function(u) and -order_at_infinity(u) == D
    div = eta_divisor(u)
    assert pullback_divisor(N, Q, div) != div
    allowed = {infinity(N), atkin_lehner_on_cusps(N, Q, infinity(N))}
    assert set(div.poles()) <= allowed


@pytest.mark.parametrize("N", [43, 53, 61, 79])
def test_two_cusp_levels_have_polar_part_at_infinity(N):
    res = search_u(N, N)
    assert res.pole_type == "inf"
    assert set(eta_divisor(res.u).poles()) == {infinity(N)}


def test_search_exhaustion_reports_nothing():
    res = search_u(43, 43, D_max=6)
    assert res.u is None and res.pole_order is None and res.refuted == [1, 2, 3, 4, 5, 6]


def test_search_is_deterministic():
    a, b = search_u(54, 27), search_u(54, 27)
    assert a.u == b.u and a.candidates == b.candidates
