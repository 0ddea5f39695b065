import importlib.util
import os
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bielliptic import _kernels
from bielliptic.arith import divisor_sums

py = _kernels.python_backend
cy = _kernels.compiled_backend
needs_compiled = pytest.mark.skipif(cy is None, reason="compiled backend not built")

ints = st.integers(-10**30, 10**30)


@needs_compiled
@given(st.lists(ints, max_size=30), st.lists(ints, max_size=30), st.integers(0, 40))
def test_mul_trunc_agrees(a, b, n):
    assert cy.mul_trunc(a, b, n) == py.mul_trunc(a, b, n)


@needs_compiled
@given(st.sampled_from([1, -1]), st.lists(ints, max_size=25), st.integers(1, 30))
def test_inv_unit_agrees(a0, rest, n):
    a = [a0] + rest
    assert cy.inv_unit(a, n) == py.inv_unit(a, n)


@needs_compiled
@given(st.dictionaries(st.integers(1, 12), st.integers(-6, 6), max_size=4), st.integers(1, 60))
def test_exp_logderiv_agrees(exps, n):
    sig = divisor_sums(n)
    s = [0] * n
    for d, r in exps.items():
        for m in range(1, (n - 1) // d + 1):
            s[d * m] -= r * d * sig[m]
    assert cy.exp_logderiv(s, n) == py.exp_logderiv(s, n)


@needs_compiled
@given(st.lists(st.integers(-5, 5), min_size=3, max_size=25), st.integers(-5, 5),
       st.integers(-5, 5), st.integers(-5, 5))
def test_weierstrass_x_agrees(tail, b2, b4, b6):
    h = [1] + tail
    H2 = py.mul_trunc(h, h, len(h))
    assert cy.weierstrass_x(H2, b2, b4, b6, len(h)) == py.weierstrass_x(H2, b2, b4, b6, len(h))


def test_inv_unit_inverts():
    a = [1, 3, -2, 7, 0, 5]
    assert py.mul_trunc(a, py.inv_unit(a, 6), 6) == [1, 0, 0, 0, 0, 0]
    with pytest.raises(ValueError):
        py.inv_unit([2, 1], 3)


def test_exp_logderiv_inexact_raises():
    with pytest.raises(ArithmeticError):
        py.exp_logderiv([0, 1, 0], 3)


def test_env_var_forces_python_backend():
    code = "from bielliptic import BACKEND; print(BACKEND)"
    built = importlib.util.find_spec("bielliptic._kernels._ckernel") is not None
    for flag, expect in (("1", "python"), ("", "cython-gmp" if built else "python")):
        out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True,
                             env=dict(os.environ, BIELLIPTIC_PURE_PYTHON=flag), check=True)
        assert out.stdout.strip() == expect
