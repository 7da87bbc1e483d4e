import os
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from coxembed.algebra import _pykernels, kernels

ck = pytest.importorskip("coxembed.algebra._ckernels")

nonzero = st.integers(-(10**30), 10**30).filter(bool)
terms = st.dictionaries(st.integers(0, 2**40), nonzero, max_size=8)
big = st.integers(-(10**25), 10**25).filter(bool)


@given(terms, terms)
def test_mul_parity(a, b):
    assert ck.mul_terms(a, b) == _pykernels.mul_terms(a, b)


@given(terms, big, terms, big)
def test_lincomb_parity(a, ca, b, cb):
    assert ck.lincomb_terms(a, ca, b, cb) == _pykernels.lincomb_terms(a, ca, b, cb)


@given(terms, big)
def test_scale_and_content_parity(a, c):
    assert ck.scale_terms(a, c) == _pykernels.scale_terms(a, c)
    assert ck.content_gcd(a, c) == _pykernels.content_gcd(a, c)


@given(terms, st.integers(1, 10**6))
def test_exact_division_parity(a, c):
    scaled = _pykernels.scale_terms(a, c)
    assert ck.exact_div_terms(scaled, c) == _pykernels.exact_div_terms(scaled, c) == a


def test_zero_terms_are_dropped():
    for impl in (ck, _pykernels):
        assert impl.lincomb_terms({1: 2}, 1, {1: -2}, 1) == {}
        assert impl.mul_terms({1: 1, 2: 1}, {1: 1, 2: -1}) == {2: 1, 4: -1}


def test_backend_switch():
    forced = os.environ.get("COXEMBED_PURE_PYTHON", "") in ("1", "true", "yes")
    assert kernels.BACKEND == ("python" if forced else "cython")
    code = "from coxembed.algebra import BACKEND; print(BACKEND)"
    out = subprocess.run(
        [sys.executable, "-c", code],
        env={"COXEMBED_PURE_PYTHON": "1", "PATH": ""},
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.strip() == "python"


def test_pipeline_under_pure_python_backend():
    code = (
        "from coxembed.algebra import BACKEND\n"
        "from coxembed.coxring import PointConfig\n"
        "from coxembed.rescaling import rescaling_symbols, solve_configuration, certify_symbolic\n"
        "cfg = PointConfig.symbolic(6, extra=rescaling_symbols(6))\n"
        "_, asg = solve_configuration(cfg)\n"
        "print(BACKEND, certify_symbolic(asg, cfg).status, asg.digest())\n"
    )
    env = dict(os.environ, COXEMBED_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    backend, status, digest = out.stdout.split()
    from coxembed.coxring import PointConfig
    from coxembed.rescaling import rescaling_symbols, solve_configuration

    _, asg = solve_configuration(PointConfig.symbolic(6, extra=rescaling_symbols(6)))
    assert (backend, status) == ("python", "PASS") and digest == asg.digest()
