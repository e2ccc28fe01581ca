import os
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from conftest import hyp
from polarlines.kernels import COMPILED, CKernel, PyKernel
from polarlines.theorems import census

needs_c = pytest.mark.skipif(not COMPILED, reason="compiled kernel not built")

CASES = [("symplectic", 4, 3), ("hermitian", 4, 4), ("symplectic", 4, 4)]


def both(P):
    return PyKernel(P.n, P.lines), CKernel(P.n, P.lines)


@needs_c
@pytest.mark.parametrize("case", CASES, ids=["Sp43", "H34", "Sp44"])
@pytest.mark.parametrize("triangles", [False, True])
def test_planes_agree(case, triangles):
    py, c = both(hyp(*case))
    assert py.planes(triangles, True) == c.planes(triangles, True)


@needs_c
@pytest.mark.parametrize("case", CASES, ids=["Sp43", "H34", "Sp44"])
def test_plane_scans_agree(case):
    P = hyp(*case)
    py, c = both(P)
    for X in census(P).planes[:60]:
        assert py.pair_generation_violations(X, 5) == c.pair_generation_violations(X, 5)
        assert py.triple_generation_violations(X, 5) == c.triple_generation_violations(X, 5)
        assert py.quadrilateral(X) == c.quadrilateral(X)


@needs_c
def test_linear_plane_scans_agree():
    P = hyp("hermitian", 4, 9)
    py, c = both(P)
    for X in census(P).of_tag("linear")[:5]:
        assert py.quadrilateral(X) == c.quadrilateral(X) is None
        assert py.triple_generation_violations(X) == c.triple_generation_violations(X)


@st.composite
def partial_linear_spaces(draw):
    n = draw(st.integers(4, 70))
    used, lines = set(), []
    for cand in draw(st.lists(st.lists(st.integers(0, n - 1), min_size=2, max_size=5, unique=True),
                              max_size=40)):
        pairs = {(a, b) for a in cand for b in cand if a < b}
        if pairs & used:
            continue
        used |= pairs
        lines.append(tuple(sorted(cand)))
    return n, lines


@needs_c
@settings(max_examples=60, deadline=None)
@given(partial_linear_spaces(), st.data())
def test_random_spaces_agree(space, data):
    n, lines = space
    py, c = PyKernel(n, lines), CKernel(n, lines)
    mask = data.draw(st.integers(0, (1 << n) - 1))
    assert py.closure(mask) == c.closure(mask)
    planes, rec = py.planes(False, True)
    assert (planes, rec) == c.planes(False, True)
    for X in planes[:10]:
        assert py.pair_generation_violations(X) == c.pair_generation_violations(X)
        assert py.quadrilateral(X) == c.quadrilateral(X)


def test_pure_fallback_runs():
    code = ("import polarlines.kernels as k, polarlines as p;"
            "from polarlines.theorems import census;"
            "P = p.hyperbolic_geometry(p.build_polar(p.standard_form('symplectic', 4, p.field_of_order(3))));"
            "print(k.COMPILED, len(census(P).planes), p.check_main_hypotheses(P).passed)")
    env = dict(os.environ, POLARLINES_PURE="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.returncode == 0, out.stderr
    assert out.stdout.split() == ["False", "40", "True"]
