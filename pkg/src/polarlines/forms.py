"""Vectors, subspaces and (sigma, eps)-hermitian / quadratic forms over GF(q)^d.

Vectors are tuples of field elements. A projective point is represented by
its normalized vector (first nonzero coordinate equal to 1) and points are
ordered lexicographically by element index.
"""

from dataclasses import dataclass, field
from itertools import product
from typing import NamedTuple

from .field import FiniteField, is_subfield

HERMITIAN = "hermitian"
QUADRATIC = "quadratic"

FAMILIES = (
    "symplectic",
    "hermitian",
    "orthogonal-hyperbolic",
    "orthogonal-elliptic",
    "orthogonal-parabolic",
)


class FormError(ValueError):
    pass


@dataclass(frozen=True)
class GramForm:
    """A sesquilinear or quadratic form given by a matrix.

    For ``kind == "hermitian"`` the matrix is the Gram matrix of f, with
    ``f(v, w) = sum sigma(v_i) gram[i][j] w_j``. For ``kind == "quadratic"``
    it is an upper-triangular Q with ``q(v) = v^T Q v``; the bilinear form is
    the polarization ``Q + Q^T`` and is never stored.
    """

    kind: str
    field: FiniteField
    dim: int
    eps: int
    uses_sigma: bool
    gram: tuple
    family: str = field(default="custom", compare=False)
    _bil: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        F, d = self.field, self.dim
        gram = tuple(tuple(row) for row in self.gram)
        object.__setattr__(self, "gram", gram)
        if len(gram) != d or any(len(row) != d for row in gram):
            raise FormError("gram matrix must be d x d")
        if self.kind == HERMITIAN:
            if self.uses_sigma and not F.has_involution:
                raise FormError(f"{F!r} has no involutory automorphism")
            for i in range(d):
                for j in range(d):
                    if gram[j][i] != F.mul(self.sigma(gram[i][j]), self.eps):
                        raise FormError(f"gram is not ({'sigma' if self.uses_sigma else 'id'},"
                                        f" {self.eps})-hermitian at ({i}, {j})")
            bil = gram
        elif self.kind == QUADRATIC:
            if self.uses_sigma or self.eps != 1:
                raise FormError("quadratic forms use sigma = id and eps = 1")
            if any(gram[i][j] for i in range(d) for j in range(i)):
                raise FormError("quadratic form matrix must be upper triangular")
            bil = tuple(tuple(F.add(gram[i][j], gram[j][i]) for j in range(d)) for i in range(d))
        else:
            raise FormError(f"unknown form kind {self.kind!r}")
        object.__setattr__(self, "_bil", bil)

    def sigma(self, a):
        return self.field.sigma(a) if self.uses_sigma else a

    @property
    def bilinear(self):
        """Gram matrix of f (the polarization for quadratic kind)."""
        return self._bil

    def __repr__(self):
        return f"GramForm({self.family}, d={self.dim}, {self.field!r})"


class Subspace(NamedTuple):
    basis: tuple  # rows in reduced row echelon form

    @property
    def dim(self):
        return len(self.basis)


def _check_vec(F, v):
    if len(v) != F.dim:
        raise FormError(f"vector of length {len(v)} in dimension {F.dim}")


def eval_form(F, v, w):
    _check_vec(F, v)
    _check_vec(F, w)
    K = F.field
    mul, add = K.mul, K.add
    tot = 0
    for i, vi in enumerate(v):
        if vi:
            s = F.sigma(vi)
            row = F.bilinear[i]
            acc = 0
            for j, wj in enumerate(w):
                if wj and row[j]:
                    acc = add(acc, mul(row[j], wj))
            tot = add(tot, mul(s, acc))
    return tot


def eval_quadratic(F, v):
    if F.kind != QUADRATIC:
        raise FormError("eval_quadratic needs a quadratic form")
    _check_vec(F, v)
    K = F.field
    tot = 0
    for i in range(F.dim):
        if v[i]:
            for j in range(i, F.dim):
                if v[j] and F.gram[i][j]:
                    tot = K.add(tot, K.mul(K.mul(v[i], F.gram[i][j]), v[j]))
    return tot


def is_isotropic(F, v):
    if not any(v):
        raise FormError("the zero vector is not a point")
    if F.kind == QUADRATIC:
        return eval_quadratic(F, v) == 0
    return eval_form(F, v, v) == 0


def rref(K, rows):
    """Reduced row echelon form of ``rows`` over K, zero rows dropped."""
    m = [list(r) for r in rows]
    if not m:
        return ()
    ncols = len(m[0])
    out = []
    piv_row = 0
    for c in range(ncols):
        pr = next((r for r in range(piv_row, len(m)) if m[r][c]), None)
        if pr is None:
            continue
        m[piv_row], m[pr] = m[pr], m[piv_row]
        s = K.inv(m[piv_row][c])
        m[piv_row] = [K.mul(s, x) for x in m[piv_row]]
        for r in range(len(m)):
            if r != piv_row and m[r][c]:
                f = m[r][c]
                m[r] = [K.sub(x, K.mul(f, y)) for x, y in zip(m[r], m[piv_row])]
        piv_row += 1
        if piv_row == len(m):
            break
    for r in m[:piv_row]:
        out.append(tuple(r))
    return tuple(out)


def nullspace(K, rows, ncols):
    """Basis (in RREF) of {w : sum_j r_j w_j = 0 for every row r}."""
    R = rref(K, rows)
    pivots = []
    for r in R:
        pivots.append(next(j for j, x in enumerate(r) if x))
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for fj in free:
        w = [0] * ncols
        w[fj] = 1
        for r, pj in zip(R, pivots):
            w[pj] = K.neg(r[fj])
        basis.append(tuple(w))
    return rref(K, basis)


def subspace(F, vectors):
    return Subspace(rref(F.field, vectors))


def full_space(F):
    return Subspace(tuple(tuple(int(i == j) for j in range(F.dim)) for i in range(F.dim)))


def perp_subspace(F, U):
    """U^perp = {w : f(w, u) = 0 for all u in U}."""
    K, d = F.field, F.dim
    rows = []
    for u in U.basis:
        _check_vec(F, u)
        # f(w, u) = sum_i sigma(w_i) c_i with c = B u; apply sigma to get a linear row
        c = [0] * d
        for i in range(d):
            acc = 0
            for j in range(d):
                acc = K.add(acc, K.mul(F.bilinear[i][j], u[j]))
            c[i] = F.sigma(acc)
        rows.append(c)
    if not rows:
        return full_space(F)
    return Subspace(nullspace(K, rows, d))


def radical(F):
    return perp_subspace(F, full_space(F))


def span_vectors(K, basis):
    """All vectors of the span of ``basis`` (including zero)."""
    d = len(basis[0]) if basis else 0
    out = []
    for coeffs in product(range(K.q), repeat=len(basis)):
        v = [0] * d
        for c, b in zip(coeffs, basis):
            if c:
                v = [K.add(x, K.mul(c, y)) for x, y in zip(v, b)]
        out.append(tuple(v))
    return out


class PhiQ(NamedTuple):
    values: frozenset
    is_field: bool


def phi_q(F):
    """The values of q on the radical of its polarization."""
    if F.kind != QUADRATIC:
        raise FormError("phi_q needs a quadratic form")
    rad = radical(F)
    values = set()
    for r in span_vectors(F.field, rad.basis) if rad.basis else [(0,) * F.dim]:
        val = eval_quadratic(F, r)
        if any(r) and val == 0:
            raise FormError(f"nonzero isotropic radical vector {r}: q is degenerate")
        values.add(val)
    vals = frozenset(values)
    return PhiQ(vals, is_subfield(F.field, vals))


def normalize(K, v):
    for c in v:
        if c:
            if c == 1:
                return tuple(v)
            s = K.inv(c)
            return tuple(K.mul(s, x) for x in v)
    raise FormError("cannot normalize the zero vector")


def projective_points(K, d):
    """Normalized nonzero vectors of K^d in lexicographic index order."""
    for v in product(range(K.q), repeat=d):
        for c in v:
            if c:
                if c == 1:
                    yield v
                break


def _irreducible_binary(K):
    # smallest (b, c) with t^2 + b t + c irreducible
    for b in K.elements:
        for c in range(1, K.q):
            if all(K.add(K.add(K.mul(t, t), K.mul(b, t)), c) for t in K.elements):
                return b, c
    raise AssertionError


def standard_form(family, d, K):
    if d < 1:
        raise FormError("dimension must be positive")
    g = [[0] * d for _ in range(d)]
    one, m1 = 1, K.neg(1)
    if family == "symplectic":
        if d % 2:
            raise FormError("symplectic forms need even dimension")
        for i in range(0, d, 2):
            g[i][i + 1], g[i + 1][i] = one, m1
        return GramForm(HERMITIAN, K, d, m1, False, g, family)
    if family == "hermitian":
        if not K.has_involution:
            raise FormError(f"hermitian forms need a field of square order, not {K!r}")
        for i in range(d):
            j = d - 1 - i
            if i < j:
                g[i][j], g[j][i] = one, m1
            elif i == j:
                # middle entry c must satisfy c = -sigma(c)
                g[i][i] = next(c for c in range(1, K.q) if K.sigma(c) == K.neg(c))
        return GramForm(HERMITIAN, K, d, m1, True, g, family)
    if family == "orthogonal-hyperbolic":
        if d % 2:
            raise FormError("hyperbolic quadrics need even dimension")
        for i in range(0, d, 2):
            g[i][i + 1] = one
    elif family == "orthogonal-elliptic":
        if d % 2:
            raise FormError("elliptic quadrics need even dimension")
        for i in range(0, d - 2, 2):
            g[i][i + 1] = one
        b, c = _irreducible_binary(K)
        g[d - 2][d - 2], g[d - 2][d - 1], g[d - 1][d - 1] = one, b, c
    elif family == "orthogonal-parabolic":
        if d % 2 == 0:
            raise FormError("parabolic quadrics need odd dimension")
        for i in range(0, d - 1, 2):
            g[i][i + 1] = one
        g[d - 1][d - 1] = one
    else:
        raise FormError(f"unknown family {family!r}")
    return GramForm(QUADRATIC, K, d, 1, False, g, family)


def extend_by_radical(F, extra=1):
    """F on W plus ``extra`` new coordinates spanning a radical (zero rows/cols)."""
    d = F.dim + extra
    g = [list(row) + [0] * extra for row in F.gram] + [[0] * d for _ in range(extra)]
    return GramForm(F.kind, F.field, d, F.eps, F.uses_sigma, g, F.family + "+rad")
