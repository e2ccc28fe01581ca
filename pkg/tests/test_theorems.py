import pytest

from conftest import SUITE, SUITE_IDS, form, hyp, pls, polar, projective_plane, twin_fixture
from polarlines.fischer import build_fischer_space
from polarlines.incidence import members, popcount, validate_pls
from polarlines.polar import check_field_condition
from polarlines.theorems import (HypothesisFailure, check_fischer_hypotheses, check_main_hypotheses,
                                 check_planar_hypotheses, check_quotient_perp, check_weak_hypotheses,
                                 equiv_classes, quotient, reconstruct_polar, singular_line,
                                 singular_lines, verify_main_conclusion)

MAIN = ["main.a", "main.b", "main.c", "main.d", "main.e"]


@pytest.mark.parametrize("case", [("symplectic", 4, 3), ("symplectic", 4, 4), ("hermitian", 4, 9)])
def test_main_passes(case):
    rep = check_main_hypotheses(hyp(*case))
    assert rep.passed, str(rep)
    assert all(rep[c].passed for c in MAIN)


@pytest.mark.parametrize("case", [("symplectic", 4, 2), ("hermitian", 4, 4)])
def test_main_fails_on_three_point_lines(case):
    rep = check_main_hypotheses(hyp(*case))
    assert rep.failed_ids == ["main.a"]
    assert rep["main.a"].witnesses[0][1] == 3


def test_strict_sections_flags_full_planes():
    P = hyp("symplectic", 4, 3)
    assert check_main_hypotheses(P)["main.d"].stats["full_plane_flagged"] == 40
    strict = check_main_hypotheses(P, strict_sections=True)
    assert strict.failed_ids == ["main.d"]


@pytest.mark.parametrize("case", [("symplectic", 4, 3), ("symplectic", 4, 4), ("hermitian", 4, 9)])
def test_weak_passes(case):
    assert check_weak_hypotheses(hyp(*case)).passed


def test_weak_complete_linear_space():
    rep = check_weak_hypotheses(projective_plane(3))
    assert not rep["weak.c"].passed


def test_planar_h39_both_types():
    rep = check_planar_hypotheses(hyp("hermitian", 4, 9))
    assert rep.passed
    assert rep["planar.a"].stats["plane_types"] == {"dual_affine(3)": 10080, "linear": 540}


def test_planar_sp44_only_dual_affine():
    rep = check_planar_hypotheses(hyp("symplectic", 4, 4))
    assert rep.passed
    assert list(rep["planar.a"].stats["plane_types"]) == ["dual_affine(4)"]


def test_planar_sp42_fails_d():
    rep = check_planar_hypotheses(hyp("symplectic", 4, 2))
    assert rep.failed_ids == ["planar.d"]


@pytest.mark.parametrize("case", SUITE, ids=SUITE_IDS)
def test_field_condition_matches_planar_verdict(case):
    assert check_field_condition(form(*case)) == check_planar_hypotheses(hyp(*case)).passed


@pytest.mark.parametrize("case,q", [(("symplectic", 4, 2), 2), (("hermitian", 4, 9), 3),
                                    (("hermitian", 4, 4), 2)])
def test_fischer_hypotheses(case, q):
    assert check_fischer_hypotheses(hyp(*case), q).passed


def test_fischer_orthogonal_f3():
    for P in build_fischer_space("orthogonal_f3", 5):
        assert check_fischer_hypotheses(P, 2).passed


def test_fischer_wrong_order():
    with pytest.raises(ValueError):
        check_fischer_hypotheses(hyp("symplectic", 4, 3), 2)


@pytest.mark.parametrize("case", [("symplectic", 4, 3), ("hermitian", 4, 9)])
def test_classical_quotient_is_trivial(case):
    P = hyp(*case)
    res = quotient(P)
    assert res.trivial and res.class_map == list(range(P.n))
    assert res.quotient.lines == P.lines


def test_twin_quotient():
    P = twin_fixture()
    assert [members(c) for c in equiv_classes(P)] == [(0, 1), (2,), (3,), (4,), (5,)]
    res = quotient(P, advisories=True)
    assert res.class_map == [0, 0, 1, 2, 3, 4]
    assert res.quotient.lines == ((0, 1), (0, 2), (1, 2, 3), (3, 4))
    assert validate_pls(res.quotient).passed
    assert check_quotient_perp(P, res).passed
    # the fixture is far from the weakened setting, which the advisories show
    assert not res.advisories.passed


def test_singular_lines_sp43():
    P = hyp("symplectic", 4, 3)
    lines = singular_lines(P)
    assert len(lines) == 40
    for L in lines:
        assert popcount(L) == 4
        assert all(L & ~P.perp[z] == 0 for z in members(L))


def test_singular_lines_h39():
    assert {popcount(L) for L in singular_lines(hyp("hermitian", 4, 9))} == {10}


@pytest.mark.parametrize("case", [("symplectic", 4, 3), ("hermitian", 4, 9)])
def test_singular_regeneration(case):
    P = hyp(*case)
    for L in singular_lines(P):
        pts = members(L)
        for s in pts:
            for t in pts:
                if s != t:
                    assert P.is_perp(s, t) and singular_line(P, s, t) == L


def test_singular_line_needs_perp_pair():
    P = hyp("symplectic", 4, 3)
    with pytest.raises(ValueError):
        singular_line(P, 0, members(P.adj[0])[0])


@pytest.mark.parametrize("case", [("symplectic", 4, 3), ("symplectic", 4, 4), ("hermitian", 4, 9)])
def test_reconstruction_matches_polar_space(case):
    P, S = hyp(*case), polar(*case)
    R = reconstruct_polar(P)
    assert R.passed and R.guaranteed
    assert R.polar.lines == S.lines
    assert R.polar.perp == S.perp
    assert R.rank == 2
    assert verify_main_conclusion(P, R).passed


def test_reconstruction_requires_hypotheses():
    with pytest.raises(HypothesisFailure):
        reconstruct_polar(hyp("symplectic", 4, 2))


def test_reconstruction_override_h34():
    R = reconstruct_polar(hyp("hermitian", 4, 4), override=True)
    assert not R.guaranteed
    assert R.gq == (4, 2)
    assert R.polar.lines == polar("hermitian", 4, 4).lines


def test_reconstruction_override_sp62():
    R = reconstruct_polar(hyp("symplectic", 6, 2), override=True)
    assert R.polar.lines == polar("symplectic", 6, 2).lines
    assert R.rank == 3 and R.gq is None


def test_reconstruction_of_linear_space():
    R = reconstruct_polar(projective_plane(3), override=True)
    assert not R.passed
    assert R.check("has_singular_lines").witnesses == [("no singular lines",)]



def test_order_nine_planes_flagged():
    from polarlines.field import field_of_order
    from polarlines.forms import projective_points
    from polarlines.theorems import check_plane_types
    ok = lambda P, X, c: True
    assert "desarguesian_unchecked" not in check_plane_types(hyp("symplectic", 4, 3), "t", ok).stats
    # PG(2,9) minus the point (0,0,1) and the lines through it
    K = field_of_order(9)
    pts = list(projective_points(K, 3))
    dot = lambda a, v: K.add(K.add(K.mul(a[0], v[0]), K.mul(a[1], v[1])), K.mul(a[2], v[2]))
    lines = [[v for v in pts if dot(a, v) == 0] for a in pts]
    r = (0, 0, 1)
    keep = [v for v in pts if v != r]
    idx = {v: i for i, v in enumerate(keep)}
    P = pls(len(keep), sorted(tuple(sorted(idx[v] for v in l)) for l in lines if r not in l))
    rep = check_plane_types(P, "t", ok)
    assert rep.stats["plane_types"] == {"dual_affine(9)": 1}
    assert rep.stats["desarguesian_unchecked"] == 1
