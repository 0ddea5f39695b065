from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bielliptic import _kernels
from bielliptic.ecurve import build_h
from bielliptic.qseries import PrecisionError, QSeries
from bielliptic.wparam import (_x_recursion_rational, differential_residual, parametrize,
                               weierstrass_residual)


def pair_for(d, prec):
    h = build_h(d.h_recipe, prec + 3 * d.h_recipe.valuation + 8)
    return parametrize(d.curve, h, prec)


@pytest.mark.parametrize("N", [34, 43, 63, 64, 72, 81, 131])
def test_pair_lies_on_curve_and_matches_differential(data, N):
    pair = pair_for(data[N], 80)
    v = pair.scale
    assert pair.x.valuation == -2 * v and pair.x.leading_coefficient() == 1
    assert pair.y.valuation == -3 * v and pair.y.leading_coefficient() == 1
    assert weierstrass_residual(pair).is_zero
    assert differential_residual(pair).is_zero
    assert weierstrass_residual(pair).precision >= 80 - 6 * v


def test_literal_differential_fails_only_with_substitution(data):
    pair = pair_for(data[34], 60)
    assert differential_residual(pair, literal=True).is_zero
    pair = pair_for(data[72], 60)
    assert pair.scale == 2
    # q dx/dq picks up the factor 2 under q -> q^2, leaving -h
    assert differential_residual(pair, literal=True) == -pair.h
    assert not differential_residual(pair, literal=True).is_zero


@settings(max_examples=15, deadline=None)
@given(st.sampled_from([34, 38, 45, 54, 60, 72]), st.integers(20, 60), st.integers(1, 30))
def test_precision_is_consistent(data, N, p1, extra):
    a, b = pair_for(data[N], p1), pair_for(data[N], p1 + extra)
    assert a.x == b.x and a.y == b.y
    assert a.x.precision == p1


def test_rational_recursion_matches_integer_kernel(data):
    d = data[62]
    h = build_h(d.h_recipe, 70)
    H = h.shift(-1).truncate(66)
    H2 = H * H
    E = d.curve
    exact = _kernels.weierstrass_x(list(H2.numerators), E.b2, E.b4, E.b6, 66)
    ref = _x_recursion_rational(list(H2.coeffs), E.b2, E.b4, E.b6, 66)
    assert [Fraction(c) for c in exact] == ref


def test_rational_h_uses_fraction_route(data):
    E = data[34].curve
    h = build_h(data[34].h_recipe, 40)
    h2 = h + QSeries([Fraction(1, 3)], 5, 40)
    pair = parametrize(E, h2, 30)
    assert not pair.x.is_integral
    assert weierstrass_residual(pair).is_zero and differential_residual(pair).is_zero


def test_input_validation(data):
    d = data[34]
    h = build_h(d.h_recipe, 30)
    with pytest.raises(PrecisionError):
        parametrize(d.curve, h, 29)
    with pytest.raises(ValueError, match="normalized"):
        parametrize(d.curve, h.scale(2), 20)
    with pytest.raises(ValueError):
        parametrize(d.curve, QSeries.zero(30), 20)
    with pytest.raises(ValueError, match="series in q"):
        parametrize(d.curve, QSeries([1, 1], 2, 30), 10)
    with pytest.raises(ValueError, match="vanish"):
        parametrize(d.curve, QSeries([1, 1], 0, 30), 10)
    with pytest.raises(ValueError):
        parametrize(d.curve, h, 0)
