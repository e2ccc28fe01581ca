"""Fischer spaces: 3-point-line geometries from forms over GF(2), GF(3), GF(4)."""

from .field import field_of_order
from .forms import eval_form, eval_quadratic, is_isotropic, normalize, projective_points, standard_form
from .incidence import PartialLinearSpace, components, members

KINDS = ("symplectic_f2", "unitary_f4", "orthogonal_f2", "orthogonal_f3")


class FischerError(ValueError):
    pass


def _two_space_points(K, a, b):
    return [normalize(K, tuple(K.add(K.mul(lam, x), y) for x, y in zip(a, b)))
            for lam in range(K.q)] + [a]


def _nonisotropic_lines(F, keep):
    """Points: non-isotropic 1-spaces. Lines: the non-isotropic points of the
    2-spaces whose number of isotropic points is accepted by ``keep``."""
    K = F.field
    allp = list(projective_points(K, F.dim))
    iso = {v: eval_quadratic(F, v) == 0 for v in allp}
    pts = [v for v in allp if not iso[v]]
    index = {v: i for i, v in enumerate(pts)}
    lines, seen = set(), set()
    for i, a in enumerate(pts):
        for b in pts[i + 1:]:
            if (a, b) in seen:
                continue
            span = _two_space_points(K, a, b)
            non = sorted(index[v] for v in span if not iso[v])
            for x in non:
                for y in non:
                    seen.add((pts[x], pts[y]))
            if keep(len(span) - len(non)):
                lines.add(tuple(non))
    return len(pts), sorted(lines), pts


def _three_point_lines(F):
    """Isotropic points of F with, as lines, the isotropic points of each
    non-degenerate 2-space; every such 2-space carries three of them."""
    K = F.field
    pts = [v for v in projective_points(K, F.dim) if is_isotropic(F, v)]
    index = {v: i for i, v in enumerate(pts)}
    lines = set()
    for i, a in enumerate(pts):
        for b in pts[i + 1:]:
            if eval_form(F, a, b) == 0:
                continue
            line = tuple(sorted(index[v] for v in set(_two_space_points(K, a, b))
                                if is_isotropic(F, v)))
            if len(line) != 3:
                raise FischerError(f"2-space through {a}, {b} has {len(line)} isotropic points")
            lines.add(line)
    return PartialLinearSpace(len(pts), sorted(lines)), pts


def symplectic_f2(d):
    """Nonzero vectors of GF(2)^d; lines {a, b, a+b} with f(a, b) = 1."""
    return _three_point_lines(standard_form("symplectic", d, field_of_order(2)))


def unitary_f4(d):
    """Isotropic points of the hermitian form over GF(4) with the 3-point
    hyperbolic lines."""
    return _three_point_lines(standard_form("hermitian", d, field_of_order(4)))


def orthogonal_f2(d, family=None):
    """Non-isotropic points with the elliptic (isotropic-free) 2-spaces as lines."""
    family = family or ("orthogonal-parabolic" if d % 2 else "orthogonal-elliptic")
    F = standard_form(family, d, field_of_order(2))
    n, lines, pts = _nonisotropic_lines(F, lambda iso: iso == 0)
    return PartialLinearSpace(n, lines), pts


def orthogonal_f3(d, family=None):
    """Non-isotropic points with the tangent 2-spaces (one isotropic point) as
    lines; returns the connected components as separate spaces."""
    family = family or ("orthogonal-parabolic" if d % 2 else "orthogonal-elliptic")
    F = standard_form(family, d, field_of_order(3))
    n, lines, pts = _nonisotropic_lines(F, lambda iso: iso == 1)
    whole = PartialLinearSpace(n, lines)
    out = []
    for comp in components(whole, "sim"):
        ids = members(comp)
        relabel = {p: i for i, p in enumerate(ids)}
        sub = [tuple(relabel[p] for p in l) for l in lines if l[0] in relabel]
        out.append((PartialLinearSpace(len(ids), sub), [pts[p] for p in ids]))
    return out


def build_fischer_space(kind, d, family=None, component=None):
    """The Fischer space of the given kind.

    For ``orthogonal_f3`` the components are returned as a list unless
    ``component`` selects one of them.
    """
    if kind == "symplectic_f2":
        return symplectic_f2(d)[0]
    if kind == "unitary_f4":
        return unitary_f4(d)[0]
    if kind == "orthogonal_f2":
        return orthogonal_f2(d, family)[0]
    if kind == "orthogonal_f3":
        comps = [P for P, _ in orthogonal_f3(d, family)]
        if component is None:
            return comps
        if not 0 <= component < len(comps):
            raise FischerError(f"component {component} out of range (0..{len(comps) - 1})")
        return comps[component]
    raise FischerError(f"unknown Fischer kind {kind!r}; expected one of {', '.join(KINDS)}")
