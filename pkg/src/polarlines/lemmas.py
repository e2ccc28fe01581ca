"""Instance-level checks of the intermediate results behind the theorems.

Each check scans one geometry exhaustively (one scan is sampled on large
inputs, see ``plane_intersection_lines``). A check that fails on a geometry
outside the hypotheses its statement assumes is reported as ``n/a``, with
the raw violation count kept in its stats.
"""

import random

from .incidence import (PartialLinearSpace, check_delta_property, components, graph_diameter,
                        is_connected, is_linear, is_subspace, members, perp_meets_plane_check,
                        popcount, section_kind)
from .kernels import bits
from .polar import (PolarError, PolarSpace, build_polar, check_hyperbolic_regeneration, check_one_or_all,
                    check_perp_separation, gq_order, hyperbolic_geometry)
from .report import DEFAULT_WITNESS_CAP, FAIL, NA, CheckReport, HypothesisReport
from .theorems import (census, check_fischer_hypotheses, check_main_hypotheses,
                       check_planar_hypotheses, check_weak_hypotheses, equiv_classes,
                       reconstruct_polar, singular_lines, verify_main_conclusion)

SAMPLE_THRESHOLD = 100  # above this many points the plane-intersection scan is sampled
SAMPLE_PAIRS = 150


class Context:
    """A geometry plus the lazily computed facts the checks share."""

    def __init__(self, P, S=None, cap=DEFAULT_WITNESS_CAP, seed=0):
        self.P, self.cap, self.seed = P, cap, seed
        self._S = S
        self._cache = {}

    def _get(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    @property
    def census(self):
        return census(self.P)

    @property
    def weak(self):
        return self._get("weak", lambda: check_weak_hypotheses(self.P, self.cap))

    @property
    def main(self):
        return self._get("main", lambda: check_main_hypotheses(self.P, self.cap))

    @property
    def planar(self):
        return self._get("planar", lambda: check_planar_hypotheses(self.P, self.cap))

    @property
    def fischer(self):
        def run():
            sizes = self.P.line_sizes
            if len(sizes) != 1 or sizes[0] < 4:
                return None
            return check_fischer_hypotheses(self.P, sizes[0] - 1, self.cap)
        return self._get("fischer", run)

    @property
    def recon(self):
        return self._get("recon", lambda: reconstruct_polar(self.P, override=True,
                                                            hypotheses=self.main, cap=self.cap))

    @property
    def S(self):
        return self._S if self._S is not None else self.recon.polar

    def holds(self, scope):
        if scope == "polar":
            # without a given polar space the checks run on the reconstruction,
            # which is only a polar space under the main hypotheses
            return self._S is not None or self.main.passed
        if scope == "weak":
            return self.weak.passed
        if scope == "main":
            return self.main.passed
        if scope == "planar":
            return self.planar.passed
        if scope == "finite":
            f = self.fischer
            return f is not None and f.passed and self.recon.rank == 2
        raise ValueError(scope)

    def section_masks(self, c):
        """Per transversal plane: the points whose perp meets it in a
        transversal, in a line, and those with any other shape."""
        def run():
            P, X = self.P, c.witness
            lines = {P.line_masks[l] for l in c.lines}
            classes = set(c.transversals)
            T = L = 0
            for x in range(P.n):
                k = section_kind(X, P.perp[x] & X, lines, classes)
                if k == "transversal":
                    T |= 1 << x
                elif k == "line":
                    L |= 1 << x
            return T, L
        return self._get(("sections", c.witness), run)


CHECKS = []


def lemma(name, scope, summary):
    def deco(fn):
        CHECKS.append((name, scope, summary, fn))
        return fn
    return deco


@lemma("polar_perp_separation", "polar",
       "in a non-degenerate polar space x^perp inside y^perp forces x = y")
def _polar_separation(ctx):
    return check_perp_separation(ctx.S, ctx.cap)


@lemma("hyperbolic_line_regeneration", "polar",
       "two points of a hyperbolic line are non-perp and regenerate it")
def _regeneration(ctx):
    try:
        return check_hyperbolic_regeneration(ctx.S, ctx.cap)
    except PolarError as e:
        r = CheckReport("", cap=ctx.cap)
        r.fail(("degenerate", str(e)))
        return r


@lemma("delta_property", "weak", "a point sees none, all but one, or all points of a line")
def _delta(ctx):
    return check_delta_property(ctx.P, ctx.cap)


@lemma("transversal_cocliques", "weak", "transversals of transversal planes are cocliques of size >= 3")
def _cocliques(ctx):
    P = ctx.P
    r = CheckReport("", cap=ctx.cap)
    for c in ctx.census.transversal_planes:
        for T in c.transversals:
            if popcount(T) < 3:
                r.fail(("small", members(T)))
            elif any(P.adj[x] & T for x in bits(T)):
                r.fail(("not_coclique", members(T)))
    return r


@lemma("perp_is_subspace", "weak", "x^perp and x^perp minus x are subspaces")
def _perp_subspace(ctx):
    P = ctx.P
    r = CheckReport("", cap=ctx.cap)
    for x in range(P.n):
        if not is_subspace(P, P.perp[x]):
            r.fail((x, "perp"))
        if not is_subspace(P, P.perp[x] & ~(1 << x)):
            r.fail((x, "perp_minus_point"))
    return r


@lemma("connected_subspace_diameter", "weak",
       "connected subspaces have collinearity diameter at most 2 (tested on the whole space,"
       " every plane and every x^perp minus x)")
def _subspace_diameter(ctx):
    P = ctx.P
    r = CheckReport("", cap=ctx.cap)
    family = [("space", P.full)] + [("plane", X) for X in ctx.census.planes]
    family += [("perp_minus", P.perp[x] & ~(1 << x)) for x in range(P.n)]
    for kind, X in family:
        for d in graph_diameter(P, "sim", within=X):
            if d > 2:
                r.fail((kind, members(X)[:4], d))
    r.stats["subspaces"] = len(family)
    return r


@lemma("line_meets_plane_sections", "weak",
       "for a line meeting a transversal plane in one point, the other points all meet the"
       " plane in transversals, or all in lines, if one of them does")
def _line_meets_plane(ctx):
    P = ctx.P
    r = CheckReport("", cap=ctx.cap)
    for c in ctx.census.transversal_planes:
        X = c.witness
        T, L = ctx.section_masks(c)
        for x in bits(X):
            for lid in P.point_lines[x]:
                lm = P.line_masks[lid]
                if lm & X != 1 << x:
                    continue
                rest = lm & ~(1 << x)
                for M, kind in ((T, "transversal"), (L, "line")):
                    if rest & M and rest & ~M:
                        r.fail((members(X)[:3], lid, kind))
    return r


def _meeting_line(P, z, w, x, y):
    """Is there a line inside z^perp meeting both wx and wy?"""
    A = P.line_masks[P.line_of(w, x)] & P.perp[z]
    B = P.line_masks[P.line_of(w, y)] & P.perp[z]
    for a in bits(A):
        for b in bits(B & P.adj[a]):
            if P.line_masks[P.line_of(a, b)] & ~P.perp[z] == 0:
                return True
    return False


@lemma("plane_intersection_lines", "weak",
       "for x perp y and collinear z1, z2 both collinear with x and y, a line in z1^perp meeting"
       " z2x and z2y exists iff a line in z2^perp meeting z1x and z1y does")
def _plane_intersection(ctx):
    P = ctx.P
    r = CheckReport("", cap=ctx.cap)
    pairs = [(x, y) for x in range(P.n) for y in bits(P.perp[x] & ~((2 << x) - 1))]
    sampled = P.n > SAMPLE_THRESHOLD and len(pairs) > SAMPLE_PAIRS
    if sampled:
        pairs = sorted(random.Random(ctx.seed).sample(pairs, SAMPLE_PAIRS))
    tested = 0
    for x, y in pairs:
        C = P.adj[x] & P.adj[y]
        for z1 in bits(C):
            for z2 in bits(C & P.adj[z1] & ~((2 << z1) - 1)):
                tested += 1
                if _meeting_line(P, z1, z2, x, y) != _meeting_line(P, z2, z1, x, y):
                    r.fail((x, y, z1, z2))
    r.stats.update(sampled=sampled, pairs=len(pairs), quadruples=tested)
    return r


def _perp_components(P):
    comps = components(P, "perp")
    return [(c, graph_diameter(P, "perp", within=c)[0]) for c in comps]


@lemma("perp_component_diameter", "weak", "components of (P, perp) have diameter at most 2")
def _perp_diam(ctx):
    r = CheckReport("", cap=ctx.cap)
    comps = _perp_components(ctx.P)
    for c, d in comps:
        if d > 2:
            r.fail((members(c)[0], d))
    r.stats["diameters"] = sorted({d for _, d in comps})
    return r


@lemma("perp_components_subspaces", "weak",
       "components of (P, perp) of diameter 2 are connected subspaces")
def _perp_comp_subspace(ctx):
    P = ctx.P
    r = CheckReport("", cap=ctx.cap)
    for c, d in _perp_components(P):
        if d == 2 and not (is_subspace(P, c) and is_connected(P, "sim", within=c)):
            r.fail(members(c)[0])
    return r


@lemma("perp_component_diameters_uniform", "weak",
       "if one component of (P, perp) has diameter 1, all do")
def _perp_uniform(ctx):
    r = CheckReport("", cap=ctx.cap)
    ds = [d for _, d in _perp_components(ctx.P)]
    if 1 in ds and any(d != 1 for d in ds):
        r.fail(tuple(sorted(set(ds))))
    r.stats["diameters"] = sorted(set(ds))
    return r


@lemma("perp_respects_classes", "weak", "x perp y iff every member of [x] is perp to every member of [y]")
def _perp_classes(ctx):
    P = ctx.P
    r = CheckReport("", cap=ctx.cap)
    cls = equiv_classes(P)
    of = {}
    for c in cls:
        for x in bits(c):
            of[x] = c
    for x in range(P.n):
        for y in range(P.n):
            whole = all(of[y] & ~P.perp[a] == 0 for a in bits(of[x]))
            if P.is_perp(x, y) != whole:
                r.fail((x, y))
    r.stats["classes"] = len(cls)
    return r


@lemma("perp_minus_point_connected", "main", "x^perp minus x is connected")
def _perp_connected(ctx):
    P = ctx.P
    r = CheckReport("", cap=ctx.cap)
    for x in range(P.n):
        if not is_connected(P, "sim", within=P.perp[x] & ~(1 << x)):
            r.fail(x)
    return r


@lemma("transversal_meets_perp", "main",
       "for x perp y and z collinear with both, some transversal on x and y meets z^perp")
def _transversal_meets(ctx):
    P = ctx.P
    r = CheckReport("", cap=ctx.cap)
    on_point = [[] for _ in range(P.n)]
    for c in ctx.census.transversal_planes:
        for p in bits(c.witness):
            on_point[p].append(c)
    count = 0
    for x in range(P.n):
        mine = {c.witness: c for c in on_point[x]}
        for y in bits(P.perp[x] & ~((2 << x) - 1)):
            # union of the transversals through x and y over all planes on both
            U = 0
            for c in on_point[y]:
                if c.witness in mine:
                    U |= P.perp[x] & c.witness
            for z in bits(P.adj[x] & P.adj[y]):
                count += 1
                if not U & P.perp[z]:
                    r.fail((x, y, z))
    r.stats["triples"] = count
    return r


@lemma("perp_intersection_inclusion", "main",
       "for y, z in x^perp minus x, x^perp & y^perp inside x^perp & z^perp forces equality")
def _perp_inclusion(ctx):
    P = ctx.P
    r = CheckReport("", cap=ctx.cap)
    for x in range(P.n):
        inner = members(P.perp[x] & ~(1 << x))
        cut = {y: P.perp[x] & P.perp[y] for y in inner}
        for y in inner:
            for z in inner:
                if y != z and cut[y] & ~cut[z] == 0 and cut[y] != cut[z]:
                    r.fail((x, y, z))
    return r


@lemma("singular_line_regeneration", "main",
       "two points of a singular line are perp and regenerate it")
def _singular_regen(ctx):
    P = ctx.P
    r = CheckReport("", cap=ctx.cap)
    lines = ctx.recon.singular_lines
    for L in lines:
        pts = members(L)
        for i, s in enumerate(pts):
            for t in pts[i + 1:]:
                if not P.is_perp(s, t):
                    r.fail(("collinear", members(L), s, t))
                elif P.set_perp(P.perp[s] & P.perp[t]) != L:
                    r.fail(("differs", members(L), s, t))
    r.stats["singular_lines"] = len(lines)
    return r


@lemma("reconstruction_polar", "main",
       "the singular lines form a non-degenerate polar space of rank at least 2")
def _recon_polar(ctx):
    r = CheckReport("", cap=ctx.cap)
    for c in ctx.recon.conclusion_checks:
        if c.name != "lines_are_hyperbolic" and not c.passed:
            r.fail((c.name,) + tuple(c.witnesses[:1]))
    r.stats["rank"] = ctx.recon.rank
    return r


@lemma("three_points_generate_linear_plane", "planar",
       "any three points of a linear plane not on a line generate it")
def _three_points(ctx):
    P = ctx.P
    r = CheckReport("", cap=ctx.cap)
    lin = ctx.census.of_tag("linear")
    for X in lin:
        count, wit = P.kernel.triple_generation_violations(X, ctx.cap)
        for w in wit:
            r.fail(w)
        r.violations += max(0, count - len(wit))
    r.stats["linear_planes"] = len(lin)
    return r


@lemma("perp_meets_dual_affine_plane", "planar",
       "x^perp meets a dual affine plane in nothing, a point, a line, a transversal or all of it")
def _perp_dual_affine(ctx):
    P = ctx.P
    r = CheckReport("", cap=ctx.cap)
    planes = [c for c in ctx.census.classes if c.tag == "dual_affine"]
    for c in planes:
        sub = perp_meets_plane_check(P, c.witness, ctx.cap, True, classification=c)
        for w in sub.witnesses:
            r.fail((members(c.witness)[:3],) + tuple(w))
    r.stats["dual_affine_planes"] = len(planes)
    return r


@lemma("perp_components_polar", "finite",
       "each component of (P, perp) carries a non-degenerate polar space of singular lines")
def _components_polar(ctx):
    P = ctx.P
    r = CheckReport("", cap=ctx.cap)
    lines = ctx.recon.singular_lines
    comps = components(P, "perp")
    for comp in comps:
        ids = members(comp)
        relabel = {p: i for i, p in enumerate(ids)}
        sub = [tuple(relabel[p] for p in bits(L)) for L in lines if L & ~comp == 0]
        perp = tuple(sum(1 << relabel[q] for q in bits(P.perp[p] & comp)) for p in ids)
        S = PolarSpace(len(ids), sub, perp)
        if not check_one_or_all(S).passed:
            r.fail((ids[0], "one_or_all"))
        if any(p == S.full for p in S.perp):
            r.fail((ids[0], "degenerate"))
    r.stats["components"] = len(comps)
    return r


@lemma("gq_parameters_finite", "finite",
       "a rank-2 reconstruction has constant finite parameters (s, t)")
def _gq_params(ctx):
    r = CheckReport("", cap=ctx.cap)
    if ctx.recon.rank != 2:
        r.fail(("rank", ctx.recon.rank))
        return r
    try:
        s, t = gq_order(ctx.recon.polar)
        r.stats.update(s=s, t=t)
    except ValueError as e:
        r.fail(str(e))
    return r


@lemma("hyperbolic_subsets_linear", "finite",
       "for collinear x, y every subset of (xy)^perp^perp generates a linear subspace inside it")
def _hyp_subsets(ctx):
    # by monotonicity of closure it suffices that (xy)^perp^perp is itself a
    # linear subspace
    P = ctx.P
    r = CheckReport("", cap=ctx.cap)
    seen = {}
    for x in range(P.n):
        for y in bits(P.adj[x] & ~((2 << x) - 1)):
            S = P.perp[x] & P.perp[y]
            if S in seen:
                continue
            D = P.set_perp(S)
            seen[S] = D
            if not is_linear(P, D) or P.closure(D) != D:
                r.fail((x, y, members(D)))
    r.stats["hyperbolic_sets"] = len(seen)
    return r


@lemma("lines_are_hyperbolic_lines", "finite",
       "the lines are exactly the hyperbolic lines of the reconstructed quadrangle")
def _lines_hyperbolic(ctx):
    return verify_main_conclusion(ctx.P, ctx.recon, ctx.cap)


@lemma("perp_graph_connected", "finite", "the graph (P, perp) is connected")
def _perp_connected_graph(ctx):
    r = CheckReport("", cap=ctx.cap)
    comps = components(ctx.P, "perp")
    if len(comps) > 1:
        r.fail(tuple(members(c)[0] for c in comps))
    r.stats["components"] = len(comps)
    return r


CHECK_NAMES = tuple(name for name, _, _, _ in CHECKS)

SCOPE_REASON = {
    "polar": "reconstruction is not guaranteed to be a polar space (main hypotheses fail)",
    "weak": "weakened-setting hypotheses fail",
    "main": "main hypotheses fail",
    "planar": "planar hypotheses fail",
    "finite": "finite-order hypotheses (order >= 3, rank 2) fail",
}


def run_property_suite(obj, cap=DEFAULT_WITNESS_CAP, only=None, seed=0):
    """Run every lemma check on a polar space or on a partial linear space."""
    if isinstance(obj, PolarSpace):
        S, P = obj, hyperbolic_geometry(obj)
    elif isinstance(obj, PartialLinearSpace):
        S, P = None, obj
    else:
        raise TypeError(f"expected a PolarSpace or PartialLinearSpace, got {type(obj).__name__}")
    ctx = Context(P, S, cap, seed)
    rep = HypothesisReport("lemmas")
    for name, scope, summary, fn in CHECKS:
        if only is not None and name not in only:
            continue
        res = fn(ctx)
        res.name = name
        res.cap = cap
        if res.verdict == FAIL and not ctx.holds(scope):
            res.stats.update(reason=SCOPE_REASON[scope], violations=res.violations,
                             first_witness=res.witnesses[0] if res.witnesses else None)
            res.verdict, res.witnesses, res.truncated = NA, [], False
        rep.add(res)
    return rep
