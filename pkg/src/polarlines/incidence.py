"""Abstract partial linear spaces: collinearity, perp, subspaces and planes.

Conventions: a point is never collinear with itself; ``perp[x]`` holds x and
every point not collinear with x. Point sets are int bitsets throughout.
"""

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Optional

from .kernels import Kernel, bits
from .report import DEFAULT_WITNESS_CAP, NA, CheckReport, not_applicable


def mask_of(points):
    m = 0
    for p in points:
        m |= 1 << p
    return m


def members(mask):
    return tuple(bits(mask))


def popcount(mask):
    return mask.bit_count()


class PartialLinearSpace:
    """Points ``0..n-1`` and lines as sorted tuples of point ids.

    Construction never raises on a broken incidence structure; use
    :func:`validate_pls` to find out what is wrong with it.
    """

    def __init__(self, n, lines):
        self.n = n
        self.lines = tuple(tuple(sorted(l)) for l in lines)
        self.full = (1 << n) - 1
        self.line_masks = tuple(mask_of(l) for l in self.lines)
        pl = [[] for _ in range(n)]
        adj = [0] * n
        pair_line = {}
        self.conflicts = []
        for i, l in enumerate(self.lines):
            if any(not 0 <= p < n for p in l):
                continue
            for p in l:
                pl[p].append(i)
                adj[p] |= self.line_masks[i]
            for a, b in combinations(l, 2):
                if (a, b) in pair_line and pair_line[(a, b)] != i:
                    self.conflicts.append((a, b, pair_line[(a, b)], i))
                else:
                    pair_line[(a, b)] = i
        self.adj = tuple(adj[p] & ~(1 << p) for p in range(n))
        self.perp = tuple(self.full ^ a for a in self.adj)
        self.point_lines = tuple(tuple(x) for x in pl)
        self.pair_line = pair_line

    def __repr__(self):
        return f"PartialLinearSpace(n={self.n}, lines={len(self.lines)})"

    def __eq__(self, other):
        return (isinstance(other, PartialLinearSpace) and self.n == other.n
                and sorted(self.lines) == sorted(other.lines))

    def __hash__(self):
        return hash((self.n, tuple(sorted(self.lines))))

    @cached_property
    def kernel(self):
        return Kernel(self.n, self.lines)

    def line_of(self, a, b):
        return self.pair_line.get((a, b) if a < b else (b, a))

    def collinear(self, a, b):
        return (self.adj[a] >> b) & 1 == 1

    def is_perp(self, a, b):
        return (self.perp[a] >> b) & 1 == 1

    def set_perp(self, mask):
        """Intersection of perp[x] over x in mask (all points for the empty set)."""
        out = self.full
        for x in bits(mask):
            out &= self.perp[x]
        return out

    def double_perp(self, mask):
        return self.set_perp(self.set_perp(mask))

    def lines_in(self, X):
        """Ids of the lines contained in X, ascending."""
        found = set()
        for p in bits(X):
            rest = self.adj[p] & X
            while rest:
                low = rest & -rest
                l = self.line_of(p, low.bit_length() - 1)
                lm = self.line_masks[l]
                if lm & ~X == 0:
                    found.add(l)
                rest &= ~lm
        return sorted(found)

    def canonical(self):
        return PartialLinearSpace(self.n, sorted(self.lines))

    @cached_property
    def line_sizes(self):
        return sorted({len(l) for l in self.lines})

    def triangle_planes(self):
        """Distinct planes generated by x ~ y ~ z with x perp z."""
        return self.kernel.planes(triangles_only=True)[0]

    def all_planes(self):
        return self.kernel.planes(triangles_only=False)[0]

    @cached_property
    def _triangle_census(self):
        planes, rec = self.kernel.planes(triangles_only=True, record_pairs=True)
        pair_plane = {(l, m): pid for l, m, pid in rec}
        return planes, pair_plane

    def plane_of_lines(self, l, m):
        """The closure of two intersecting lines."""
        if l > m:
            l, m = m, l
        pid = self._triangle_census[1].get((l, m))
        if pid is not None:
            return self._triangle_census[0][pid]
        return self.closure(self.line_masks[l] | self.line_masks[m])

    def closure(self, mask):
        return self.kernel.closure(mask)


def validate_pls(P: PartialLinearSpace, cap=DEFAULT_WITNESS_CAP):
    r = CheckReport("partial_linear_space", cap=cap)
    for i, l in enumerate(P.lines):
        if len(l) < 2:
            r.fail(("short_line", i, list(l)))
        if len(set(l)) != len(l):
            r.fail(("repeated_point", i, list(l)))
        if any(not 0 <= p < P.n for p in l):
            r.fail(("point_out_of_range", i, list(l)))
    seen = {}
    for i, l in enumerate(P.lines):
        key = tuple(l)
        if key in seen:
            r.fail(("duplicate_line", seen[key], i))
        seen.setdefault(key, i)
    for a, b, l1, l2 in P.conflicts:
        if P.lines[l1] != P.lines[l2]:
            r.fail(("pair_on_two_lines", a, b, l1, l2))
    sizes = [len(l) for l in P.lines]
    r.stats.update(points=P.n, lines=len(P.lines),
                   min_line=min(sizes, default=0), max_line=max(sizes, default=0),
                   thick=all(s >= 3 for s in sizes), lines_at_least_4=all(s >= 4 for s in sizes))
    return r


def closure(P, X):
    return P.closure(X)


def is_subspace(P, X):
    for p in bits(X):
        rest = P.adj[p] & X
        while rest:
            low = rest & -rest
            lm = P.line_masks[P.line_of(p, low.bit_length() - 1)]
            if lm & ~X:
                return False
            rest &= ~lm
    return True


def transversal_classes(P, X, line):
    """The sets perp[x] & X for x on ``line`` (a line inside X)."""
    return [P.perp[x] & X for x in P.lines[line]]


def _partition_scan(P, X, inner, r):
    """Check the transversal partition for every line in ``inner``; return the
    partition (as a tuple ordered by smallest point) or None."""
    reference = None
    for l in inner:
        classes = transversal_classes(P, X, l)
        union, overlap = 0, False
        for c in classes:
            if c & union:
                overlap = True
            union |= c
        if overlap or union != X:
            r.fail(("not_a_partition", l))
            continue
        key = frozenset(classes)
        if reference is None:
            reference = key
        elif key != reference:
            r.fail(("partition_depends_on_line", l))
    if reference is None or not r.passed:
        return None
    return tuple(sorted(reference, key=lambda c: c & -c))


def is_transversal_subspace(P, X, cap=DEFAULT_WITNESS_CAP):
    r = CheckReport("transversal_subspace", cap=cap)
    if not is_subspace(P, X):
        raise ValueError("not a subspace")
    inner = P.lines_in(X)
    if not inner:
        raise ValueError("subspace contains no line")
    parts = _partition_scan(P, X, inner, r)
    r.stats["lines"] = len(inner)
    if parts is not None:
        r.stats["classes"] = len(parts)
        r.stats["class_sizes"] = sorted({popcount(c) for c in parts})
    return r


def transversals_of(P, X):
    rep = is_transversal_subspace(P, X)
    if not rep.passed:
        raise ValueError(f"not a transversal subspace: {rep.witnesses[:1]}")
    return sorted(transversal_classes(P, X, P.lines_in(X)[0]), key=lambda c: c & -c)


def is_linear(P, X):
    for x in bits(X):
        if (X & ~(1 << x)) & ~P.adj[x]:
            return False
    return True


# every projective plane of these orders is Desarguesian; from order 9 on
# the completion test cannot tell the two apart
DESARGUESIAN_ORDERS = frozenset({2, 3, 4, 5, 7, 8})


@dataclass(frozen=True)
class PlaneClassification:
    tag: str  # linear | dual_affine | transversal_other | other
    order: Optional[int]
    witness: int  # the plane's point set
    lines: tuple = ()  # ids of the lines inside the plane
    transversals: Optional[tuple] = None  # class masks when transversal


def _projective_plane_order(npts, lines):
    """Order n if (points 0..npts-1, lines) is a projective plane, else None."""
    if not lines:
        return None
    k = len(lines[0])
    if k < 3 or any(len(l) != k for l in lines):
        return None
    n = k - 1
    if npts != n * n + n + 1 or len(lines) != npts:
        return None
    seen = set()
    for l in lines:
        for a, b in combinations(l, 2):
            if (a, b) in seen:
                return None
            seen.add((a, b))
    if len(seen) != npts * (npts - 1) // 2:
        return None
    masks = [mask_of(l) for l in lines]
    for a, b in combinations(masks, 2):
        if popcount(a & b) != 1:
            return None
    # a quadrangle exists once k >= 3 and the pair/line counts hold
    return n


def classify_plane(P, X, trusted=False):
    """Classify the plane X.

    ``trusted`` skips re-deriving that X is the closure of two intersecting
    lines, for planes that come straight out of the plane enumeration.
    """
    inner = P.lines_in(X)
    if len(inner) < 2 or not is_subspace(P, X):
        raise ValueError("not a plane")
    if not trusted and not _is_generated(P, X, inner):
        raise ValueError("subspace is not generated by two intersecting lines")
    inner = tuple(inner)
    if is_linear(P, X):
        return PlaneClassification("linear", None, X, inner)
    parts = _partition_scan(P, X, inner, CheckReport("transversal_subspace"))
    if parts is None:
        return PlaneClassification("other", None, X, inner)
    pts = members(X)
    local = {p: i for i, p in enumerate(pts)}
    r = len(pts)
    comp = [tuple(local[p] for p in P.lines[l]) for l in inner]
    comp += [tuple(sorted(local[p] for p in bits(c))) + (r,) for c in parts]
    order = _projective_plane_order(r + 1, comp)
    if order is None:
        return PlaneClassification("transversal_other", None, X, inner, parts)
    return PlaneClassification("dual_affine", order, X, inner, parts)


def _is_generated(P, X, inner):
    for a, b in combinations(inner, 2):
        ma, mb = P.line_masks[a], P.line_masks[b]
        if ma & mb and P.closure(ma | mb) == X:
            return True
    return False


def check_delta_property(P, cap=DEFAULT_WITNESS_CAP):
    r = CheckReport("delta_property", cap=cap)
    for lid, lm in enumerate(P.line_masks):
        k = popcount(lm)
        for x in range(P.n):
            c = popcount(P.adj[x] & lm)
            if c != 0 and c != k - 1 and c != k:
                r.fail((x, lid, c))
    return r


def _bfs_components(within, nbrs):
    seen = 0
    comps = []
    for s in bits(within):
        if (seen >> s) & 1:
            continue
        comp = 0
        frontier = 1 << s
        while frontier:
            comp |= frontier
            nxt = 0
            for v in bits(frontier):
                nxt |= nbrs[v]
            frontier = nxt & ~comp
        seen |= comp
        comps.append(comp)
    return comps


def _eccentricity(s, nbrs, within):
    reached = 1 << s
    frontier = reached
    ecc = 0
    while True:
        nxt = 0
        for v in bits(frontier):
            nxt |= nbrs[v]
        nxt &= within & ~reached
        if not nxt:
            return ecc
        ecc += 1
        reached |= nxt
        frontier = nxt


def graph_neighbors(P, which, within=None):
    within = P.full if within is None else within
    if which in ("~", "collinear", "sim"):
        return [P.adj[v] & within for v in range(P.n)]
    if which in ("perp", "⊥"):
        return [(P.perp[v] & ~(1 << v)) & within for v in range(P.n)]
    raise ValueError(f"unknown graph {which!r}")


def components(P, which, within=None):
    within = P.full if within is None else within
    return _bfs_components(within, graph_neighbors(P, which, within))


def graph_diameter(P, which, per_component=True, within=None):
    """Diameters of the components of (P, ~) or (P, perp) restricted to ``within``.

    With ``per_component=False`` returns the diameter of the whole graph
    (``float('inf')`` when it is disconnected).
    """
    within = P.full if within is None else within
    nbrs = graph_neighbors(P, which, within)
    comps = _bfs_components(within, nbrs)
    diams = [max(_eccentricity(s, nbrs, c) for s in bits(c)) for c in comps]
    if per_component:
        return diams
    return diams[0] if len(diams) == 1 else float("inf")


def is_connected(P, which, within=None):
    return len(components(P, which, within)) <= 1


def no_4_lines_6_points(P, X):
    if not is_linear(P, X):
        raise ValueError("plane is not linear")
    r = CheckReport("no_4_lines_6_points")
    quad = P.kernel.quadrilateral(X)
    if quad is not None:
        r.fail(quad)
    r.stats["lines"] = len(P.lines_in(X))
    return r


def quadrilaterals_bruteforce(P, X):
    """All 4-subsets of lines of X pairwise meeting in 6 distinct points."""
    inner = P.lines_in(X)
    found = []
    for quad in combinations(inner, 4):
        masks = [P.line_masks[l] for l in quad]
        meets = [a & b for a, b in combinations(masks, 2)]
        if all(popcount(m) == 1 for m in meets) and popcount(mask_of(bits(sum(meets)))) == 6 \
                and len(set(meets)) == 6:
            found.append(quad)
    return found


SECTION_KINDS = ("empty", "point", "line", "transversal", "plane")


def section_kind(X, s, lines, classes):
    """Which of the allowed shapes the set s (a subset of X) has, or None."""
    if s == 0:
        return "empty"
    if s & (s - 1) == 0:
        return "point"
    if s == X:
        return "plane"
    if s in lines:
        return "line"
    if s in classes:
        return "transversal"
    return None


def section_kinds(P, X, lines, classes):
    """Per point x of P the shape of x^perp & X."""
    return [section_kind(X, P.perp[x] & X, lines, classes) for x in range(P.n)]


def perp_meets_plane_check(P, X, cap=DEFAULT_WITNESS_CAP, allow_plane=True,
                           classification=None):
    """x^perp & X must be empty, a point, a line, a transversal or X itself.

    With ``allow_plane=False`` the last outcome counts as a violation; either
    way its count is reported in ``stats["plane"]``.
    """
    r = CheckReport("perp_meets_plane", cap=cap)
    c = classification
    if c is None:
        if not is_subspace(P, X) or not P.lines_in(X):
            r.fail(("not_a_plane",))
            return r
        tr = is_transversal_subspace(P, X)
        if not tr.passed:
            r.fail(("not_transversal",) + tuple(tr.witnesses[:1]))
            return r
        inner, parts = P.lines_in(X), transversals_of(P, X)
    else:
        if c.transversals is None:
            r.fail(("not_transversal",))
            return r
        inner, parts = c.lines, c.transversals
    lines = {P.line_masks[l] for l in inner}
    classes = set(parts)
    tally = dict.fromkeys(SECTION_KINDS, 0)
    for x, kind in enumerate(section_kinds(P, X, lines, classes)):
        if kind is None:
            r.fail((x, members(P.perp[x] & X)))
            continue
        tally[kind] += 1
        if kind == "plane" and not allow_plane:
            r.fail((x, "full_plane"))
    r.stats.update(tally)
    return r


def double_perp_line_check(P, cap=DEFAULT_WITNESS_CAP, min_size=None):
    r = CheckReport("double_perp_lines", cap=cap)
    for lid, lm in enumerate(P.line_masks):
        if min_size is not None and popcount(lm) < min_size:
            r.fail(("short_line", lid, popcount(lm)))
            continue
        dp = P.double_perp(lm)
        if dp != lm:
            r.fail((lid, members(dp)))
    return r


def is_design(X, lines, v, k, lam):
    """(X, lines) is a 2-(v, k, lam) design; ``lines`` are point collections."""
    pts = set(bits(X)) if isinstance(X, int) else set(X)
    if len(pts) != v:
        return False
    cnt = {}
    for l in lines:
        l = tuple(sorted(l))
        if len(l) != k or not set(l) <= pts:
            return False
        for pair in combinations(l, 2):
            cnt[pair] = cnt.get(pair, 0) + 1
    for pair in combinations(sorted(pts), 2):
        if cnt.get(pair, 0) != lam:
            return False
    return True
