"""Property-based checks of the structural invariants."""

from hypothesis import assume, given, settings, strategies as st

from conftest import form, hyp, polar
from polarlines.field import field_of_order, sigma_epsilon_sets
from polarlines.forms import eval_form, eval_quadratic, perp_subspace, radical, subspace
from polarlines.incidence import (PartialLinearSpace, members, popcount, transversal_classes,
                                  validate_pls)
from polarlines.report import CheckReport
from polarlines.theorems import census, check_quotient_perp, quotient, singular_lines

FAST = settings(max_examples=60, deadline=None)


def test_lower_trace_set_inside_upper():
    for q in (2, 3, 4, 5, 7, 8, 9, 16, 25, 27):
        K = field_of_order(q)
        for use_sigma in (False, True) if K.has_involution else (False,):
            sig = K.sigma if use_sigma else (lambda a: a)
            for eps in range(1, q):
                if K.mul(eps, sig(eps)) != 1:
                    continue
                ts = sigma_epsilon_sets(K, eps, use_sigma)
                assert ts.lower <= ts.upper, (q, use_sigma, eps)


def vectors(q, d):
    return st.lists(st.integers(0, q - 1), min_size=d, max_size=d).map(tuple)


@FAST
@given(st.sampled_from([("orthogonal-parabolic", 5, 2), ("orthogonal-parabolic", 5, 3),
                        ("orthogonal-elliptic", 4, 4), ("orthogonal-hyperbolic", 4, 5)]), st.data())
def test_polarization_identity(case, data):
    F = form(*case)
    K = F.field
    v, w = data.draw(vectors(K.q, F.dim)), data.draw(vectors(K.q, F.dim))
    s = tuple(K.add(a, b) for a, b in zip(v, w))
    assert eval_quadratic(F, s) == K.add(K.add(eval_quadratic(F, v), eval_quadratic(F, w)),
                                         eval_form(F, v, w))


def _contains(F, big, small):
    return subspace(F, big.basis + small.basis) == big


@FAST
@given(st.sampled_from([("symplectic", 4, 3), ("hermitian", 4, 4), ("orthogonal-parabolic", 5, 2),
                        ("orthogonal-parabolic", 5, 3)]), st.data())
def test_perp_reverses_inclusion(case, data):
    F = form(*case)
    K, d = F.field, F.dim
    a = data.draw(vectors(K.q, d))
    b = data.draw(vectors(K.q, d))
    assume(any(a))
    U1, U2 = subspace(F, [a]), subspace(F, [a, b])
    P1, P2 = perp_subspace(F, U1), perp_subspace(F, U2)
    assert _contains(F, P1, P2)
    for U in (U1, U2):
        pp = perp_subspace(F, perp_subspace(F, U))
        assert _contains(F, pp, U)
        if radical(F).dim == 0:
            assert pp == U


SPACES = [("symplectic", 4, 3), ("hermitian", 4, 4), ("symplectic", 4, 4), ("hermitian", 4, 9)]


@FAST
@given(st.sampled_from(SPACES), st.data())
def test_closure_operator(case, data):
    P = hyp(*case)
    pts = st.lists(st.integers(0, P.n - 1), max_size=4)
    A = sum({1 << p for p in data.draw(pts)})
    B = A | sum({1 << p for p in data.draw(pts)})
    cA, cB = P.closure(A), P.closure(B)
    assert A & ~cA == 0
    assert P.closure(cA) == cA
    assert cA & ~cB == 0


@FAST
@given(st.sampled_from(SPACES), st.data())
def test_transversal_partition_independent_of_line(case, data):
    P = hyp(*case)
    planes = census(P).transversal_planes
    c = data.draw(st.sampled_from(planes))
    ref = set(c.transversals)
    for l in c.lines:
        assert set(transversal_classes(P, c.witness, l)) == ref


def test_dual_affine_plane_shape():
    for case in SPACES:
        P = hyp(*case)
        for c in census(P).classes:
            if c.tag != "dual_affine":
                continue
            n = c.order
            masks = [P.line_masks[l] for l in c.lines]
            assert popcount(c.witness) == n * n + n
            assert len(masks) == n * n
            assert all(popcount(a & b) == 1 for i, a in enumerate(masks) for b in masks[i + 1:])
            assert len(c.transversals) == n + 1
            assert {popcount(t) for t in c.transversals} == {n}


@st.composite
def partial_linear_spaces(draw):
    n = draw(st.integers(2, 24))
    used, lines = set(), []
    for cand in draw(st.lists(st.lists(st.integers(0, n - 1), min_size=2, max_size=4, unique=True),
                              max_size=20)):
        pairs = {(a, b) for a in cand for b in cand if a < b}
        if not pairs & used:
            used |= pairs
            lines.append(cand)
    return PartialLinearSpace(n, lines)


@settings(max_examples=150, deadline=None)
@given(partial_linear_spaces())
def test_pls_invariants(P):
    assert validate_pls(P).passed
    for x in range(P.n):
        assert (P.perp[x] >> x) & 1 and not (P.adj[x] >> x) & 1
        assert P.perp[x] | P.adj[x] == P.full and P.perp[x] & P.adj[x] == 0
        for y in members(P.adj[x]):
            assert x in P.lines[P.line_of(x, y)] and (P.adj[y] >> x) & 1


@settings(max_examples=150, deadline=None)
@given(partial_linear_spaces())
def test_quotient_soundness(P):
    res = quotient(P)
    assert check_quotient_perp(P, res).passed
    assert sorted(res.class_map) == sorted(set(res.class_map)) or not res.trivial


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(st.integers(), st.integers()), max_size=30), st.integers(1, 12))
def test_failed_report_has_witness(ws, cap):
    r = CheckReport("x", cap=cap)
    for w in ws:
        r.fail(w)
    assert r.passed == (not ws)
    if ws:
        assert 1 <= len(r.witnesses) <= cap and r.violations == len(ws)
        assert r.truncated == (len(ws) > cap)


def test_singular_lines_are_maximal_cliques():
    for case in [("symplectic", 4, 3), ("hermitian", 4, 9)]:
        P = hyp(*case)
        for L in singular_lines(P):
            common = P.set_perp(L)
            # only the line itself is perp to all of it
            assert common == L


def test_gq_symmetry_sp43():
    from polarlines.theorems import reconstruct_polar
    R = reconstruct_polar(hyp("symplectic", 4, 3))
    s, t = R.gq
    assert s == t == 3
    assert {len(l) for l in R.polar.lines} == {s + 1}
    assert {len(pl) for pl in R.polar.point_lines} == {t + 1}


def test_reconstruction_idempotent_on_suite():
    from polarlines.theorems import reconstruct_polar
    for case in [("symplectic", 4, 2), ("symplectic", 4, 3), ("symplectic", 4, 4),
                 ("hermitian", 4, 4), ("hermitian", 4, 9)]:
        R = reconstruct_polar(hyp(*case), override=True)
        S = polar(*case)
        assert (R.polar.n, R.polar.lines, R.polar.perp) == (S.n, S.lines, S.perp)
