"""Classical polar spaces built from forms, and their hyperbolic lines.

Inside a polar space ``perp[x]`` holds x and every point collinear with it
(the polar convention), which is the opposite of the incidence-module
convention. Under :func:`hyperbolic_geometry` the two agree: the polar perp
of the space is the incidence perp of its hyperbolic-line geometry.
"""

from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from .field import sigma_epsilon_sets
from .forms import (HERMITIAN, QUADRATIC, eval_quadratic, is_isotropic, normalize,
                    phi_q, projective_points, radical, span_vectors)
from .incidence import PartialLinearSpace, mask_of, members, popcount
from .kernels import bits
from .report import DEFAULT_WITNESS_CAP, CheckReport

DEGENERATE = "degenerate"


class PolarError(ValueError):
    pass


@dataclass
class PolarSpace:
    """Points, lines and the reflexive polar perp.

    ``points`` holds the normalized vectors for spaces built from a form and
    is ``None`` for abstract spaces such as reconstructions.
    """

    n: int
    lines: tuple
    perp: tuple
    points: Optional[tuple] = None
    form: object = None
    warning: Optional[str] = None
    _dp: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self.lines = tuple(sorted(tuple(sorted(l)) for l in self.lines))
        self.full = (1 << self.n) - 1
        self.line_masks = tuple(mask_of(l) for l in self.lines)
        pl = [[] for _ in range(self.n)]
        for i, l in enumerate(self.lines):
            for p in l:
                pl[p].append(i)
        self.point_lines = tuple(tuple(x) for x in pl)

    def __repr__(self):
        return f"PolarSpace(n={self.n}, lines={len(self.lines)})"

    @property
    def pls(self):
        return PartialLinearSpace(self.n, self.lines)

    @property
    def index(self):
        return {v: i for i, v in enumerate(self.points or ())}

    def is_perp(self, x, y):
        return (self.perp[x] >> y) & 1 == 1

    def set_perp(self, mask):
        out = self.full
        for x in bits(mask):
            out &= self.perp[x]
        return out

    def double_perp(self, mask):
        return self.set_perp(self.set_perp(mask))

    def pair_double_perp(self, x, y):
        # {x,y}^perp^perp depends only on {x,y}^perp, so cache on that mask
        S = self.perp[x] & self.perp[y]
        out = self._dp.get(S)
        if out is None:
            out = self.set_perp(S)
            self._dp[S] = out
        return out


class GQOrder(NamedTuple):
    s: int
    t: int


def _form_rows(F, vectors):
    """Per point the pair (sigma(v), B v) so that f(v, w) = sigma(v) . (B w)."""
    K, B, d = F.field, F.bilinear, F.dim
    left, right = [], []
    for v in vectors:
        left.append(tuple(F.sigma(c) for c in v))
        bw = []
        for i in range(d):
            acc = 0
            for j in range(d):
                if B[i][j] and v[j]:
                    acc = K.add(acc, K.mul(B[i][j], v[j]))
            bw.append(acc)
        right.append(tuple(bw))
    return left, right


def _dot(K, a, b):
    acc = 0
    for x, y in zip(a, b):
        if x and y:
            acc = K.add(acc, K.mul(x, y))
    return acc


def build_polar(F):
    """Isotropic points and totally isotropic lines of the form F."""
    K = F.field
    pts = tuple(v for v in projective_points(K, F.dim) if is_isotropic(F, v))
    n = len(pts)
    if n == 0:
        return PolarSpace(0, (), (), (), F, warning="no isotropic points")
    index = {v: i for i, v in enumerate(pts)}
    left, right = _form_rows(F, pts)
    perp = [0] * n
    for x in range(n):
        lx = left[x]
        m = 1 << x
        for y in range(x + 1, n):
            if _dot(K, lx, right[y]) == 0:
                m |= 1 << y
                perp[y] |= 1 << x
        perp[x] |= m
    lines = []
    covered = [0] * n
    for a in range(n):
        for b in bits(perp[a] & ~((2 << a) - 1) & ~covered[a]):
            if (covered[a] >> b) & 1:
                continue
            va, vb = pts[a], pts[b]
            ids = [a, b]
            for lam in range(1, K.q):
                w = normalize(K, tuple(K.add(K.mul(lam, x), y) for x, y in zip(va, vb)))
                ids.append(index[w])
            lm = mask_of(ids)
            for p in ids:
                covered[p] |= lm
            lines.append(sorted(ids))
    return PolarSpace(n, tuple(lines), tuple(perp), pts, F)


def check_one_or_all(S, cap=DEFAULT_WITNESS_CAP):
    """A point off a line is collinear with exactly one or all of its points."""
    r = CheckReport("one_or_all", cap=cap)
    adj = [0] * S.n
    for lm in S.line_masks:
        for p in bits(lm):
            adj[p] |= lm
    one = all_ = 0
    for lid, lm in enumerate(S.line_masks):
        k = popcount(lm)
        for p in bits(S.full & ~lm):
            c = popcount(adj[p] & lm)
            if c == 1:
                one += 1
            elif c == k:
                all_ += 1
            else:
                r.fail((p, lid, c))
    r.stats.update(one=one, all=all_)
    return r


def check_line_perp_agreement(S, cap=DEFAULT_WITNESS_CAP):
    """The line-collinearity of S agrees with its perp bitsets."""
    r = CheckReport("lines_match_perp", cap=cap)
    adj = [1 << p for p in range(S.n)]
    for lid, lm in enumerate(S.line_masks):
        for p in bits(lm):
            adj[p] |= lm
            if lm & ~S.perp[p]:
                r.fail(("line_not_singular", lid, p))
    for p in range(S.n):
        if adj[p] != S.perp[p]:
            r.fail(("perp_pair_not_on_a_line", p, members(S.perp[p] & ~adj[p])[:3]))
    return r


def polar_radical(S):
    return [x for x in range(S.n) if S.perp[x] == S.full]


def is_nondegenerate(S):
    return not polar_radical(S)


def check_perp_separation(space, cap=DEFAULT_WITNESS_CAP, name="perp_separation"):
    """x^perp contained in y^perp forces x = y (exhaustive over ordered pairs)."""
    r = CheckReport(name, cap=cap)
    P = space.perp
    for x in range(space.n):
        px = P[x]
        for y in range(space.n):
            if x != y and px & ~P[y] == 0:
                r.fail((x, y))
    return r


def _require_nondegenerate(S):
    rad = polar_radical(S)
    if rad:
        raise PolarError(f"polar space is degenerate (radical point {rad[0]})")


def hyperbolic_line(S, x, y):
    if x == y or S.is_perp(x, y):
        raise PolarError("a hyperbolic line needs two distinct non-perp points")
    return S.pair_double_perp(x, y)


def hyperbolic_lines(S):
    _require_nondegenerate(S)
    seen = [0] * S.n
    out = []
    for x in range(S.n):
        for y in bits(S.full & ~S.perp[x] & ~((2 << x) - 1) & ~seen[x]):
            if (seen[x] >> y) & 1:
                continue
            H = S.pair_double_perp(x, y)
            for z in bits(H):
                seen[z] |= H
            out.append(H)
    return out


def hyperbolic_geometry(S):
    """Points of S with the hyperbolic lines as lines."""
    return PartialLinearSpace(S.n, sorted(members(H) for H in hyperbolic_lines(S)))


def check_hyperbolic_regeneration(S, cap=DEFAULT_WITNESS_CAP):
    """Any two points of a hyperbolic line are non-perp and span it again."""
    r = CheckReport("hyperbolic_line_regeneration", cap=cap)
    lines = hyperbolic_lines(S)
    for H in lines:
        pts = members(H)
        for i, a in enumerate(pts):
            for b in pts[i + 1:]:
                if S.is_perp(a, b):
                    r.fail(("perp_pair", members(H), a, b))
                elif S.pair_double_perp(a, b) != H:
                    r.fail(("different_double_perp", members(H), a, b))
    r.stats.update(hyperbolic_lines=len(lines),
                   sizes=sorted({popcount(H) for H in lines}))
    return r


def check_hyperbolic_coordinates(S, cap=DEFAULT_WITNESS_CAP):
    """Each hyperbolic line is the set of points in the span of two of its
    members, enlarged by the radical of f for quadratic forms."""
    F = S.form
    if F is None or S.points is None:
        raise PolarError("coordinates need a space built from a form")
    r = CheckReport("hyperbolic_coordinates", cap=cap)
    K = F.field
    rad = radical(F).basis if F.kind == QUADRATIC else ()
    index = S.index
    for H in hyperbolic_lines(S):
        a, b = members(H)[:2]
        span = span_vectors(K, (S.points[a], S.points[b]) + tuple(rad))
        expect = 0
        for v in span:
            if any(v) and is_isotropic(F, v):
                expect |= 1 << index[normalize(K, v)]
        if expect != H:
            r.fail((members(H), members(expect)))
    return r


def rank_search(n, perp, lines):
    """Largest r with a chain of singular subspaces of ranks 1..r.

    Subspaces are grown one point at a time: add a point perp to everything
    so far, then close under ``lines``. Branches that stop being pairwise perp
    are discarded. Results are memoized per subspace.
    """
    if n == 0:
        return 0
    line_masks = [mask_of(l) for l in lines]
    point_lines = [[] for _ in range(n)]
    for i, l in enumerate(lines):
        for p in l:
            point_lines[p].append(i)
    full = (1 << n) - 1

    def close(X):
        todo = list(bits(X))
        while todo:
            p = todo.pop()
            for l in point_lines[p]:
                lm = line_masks[l]
                inter = lm & X
                if inter & (inter - 1) and lm & ~X:
                    new = lm & ~X
                    X |= new
                    todo.extend(bits(new))
        return X

    def common_perp(X):
        out = full
        for x in bits(X):
            out &= perp[x]
        return out

    memo = {}

    def depth(X):
        got = memo.get(X)
        if got is not None:
            return got
        best = 1
        cand = common_perp(X) & ~X
        tried = 0
        for p in bits(cand):
            if (tried >> p) & 1:
                continue
            Y = close(X | (1 << p))
            tried |= Y
            if common_perp(Y) & Y != Y:
                continue
            best = max(best, 1 + depth(Y))
        memo[X] = best
        return best

    # abstract inputs need not be homogeneous, so start from every point
    return max(depth(1 << x) for x in range(n))


def polar_rank(S):
    _require_nondegenerate(S)
    return rank_search(S.n, S.perp, S.lines)


def gq_order(S):
    """(s, t) for a generalized quadrangle: non-degenerate, and no point off
    a line is collinear with all of it."""
    oa = check_one_or_all(S, cap=1)
    if not oa.passed or oa.stats["all"] or polar_radical(S):
        raise PolarError("not a generalized quadrangle: one-or-all fails, a point is collinear"
                         " with a whole line, or the space is degenerate")
    sizes = {len(l) for l in S.lines}
    degrees = {len(pl) for pl in S.point_lines}
    if len(sizes) != 1 or len(degrees) != 1:
        raise PolarError(f"not a generalized quadrangle: line sizes {sorted(sizes)},"
                         f" lines per point {sorted(degrees)}")
    return GQOrder(sizes.pop() - 1, degrees.pop() - 1)


class FieldCondition(NamedTuple):
    value: bool
    values: frozenset  # the field-side set that was tested


def field_condition(F):
    """The field-side set controlling plane structure and whether it is a
    commutative field of order at least 3."""
    K = F.field
    if F.kind == HERMITIAN:
        ts = sigma_epsilon_sets(K, F.eps, F.uses_sigma)
        # in characteristic 2 with sigma = id the lower set collapses to 0;
        # the upper set is then the one that parametrizes hyperbolic lines
        vals, is_field = (ts.lower, ts.lower_is_field) if ts.lower == ts.upper \
            else (ts.upper, ts.upper_is_field)
    elif F.kind == QUADRATIC:
        ph = phi_q(F)
        vals, is_field = ph.values, ph.is_field
    else:
        raise PolarError(f"unknown form kind {F.kind!r}")
    return FieldCondition(bool(is_field and len(vals) >= 3), vals)


def check_field_condition(F):
    return field_condition(F).value
