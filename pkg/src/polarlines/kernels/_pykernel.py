"""Pure-Python kernel: subspace closure and plane scans over int bitsets."""

from itertools import combinations


def bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class _LocalPlane:
    """Lines of a subspace, indexed by point, for closures inside it."""

    __slots__ = ("mask", "points", "line_ids", "line_masks", "point_lines")

    def __init__(self, kernel, mask):
        self.mask = mask
        self.points = list(bits(mask))
        ids = set()
        for p in self.points:
            for l in kernel.point_lines[p]:
                if kernel.line_masks[l] & ~mask == 0:
                    ids.add(l)
        self.line_ids = sorted(ids)
        self.line_masks = {l: kernel.line_masks[l] for l in self.line_ids}
        self.point_lines = {p: [l for l in kernel.point_lines[p] if l in self.line_masks]
                            for p in self.points}

    def closure(self, gen):
        X = gen
        todo = list(bits(gen))
        used = set()
        pl, lm = self.point_lines, self.line_masks
        while todo:
            p = todo.pop()
            for l in pl[p]:
                if l in used:
                    continue
                inter = lm[l] & X
                if inter & (inter - 1):
                    used.add(l)
                    new = lm[l] & ~X
                    if new:
                        X |= new
                        todo.extend(bits(new))
        return X


class Kernel:
    compiled = False

    def __init__(self, n, lines):
        self.n = n
        self.lines = [tuple(l) for l in lines]
        self.line_masks = []
        self.point_lines = [[] for _ in range(n)]
        adj = [0] * n
        for i, l in enumerate(self.lines):
            mask = 0
            for p in l:
                mask |= 1 << p
            self.line_masks.append(mask)
            for p in l:
                self.point_lines[p].append(i)
                adj[p] |= mask & ~(1 << p)
        full = (1 << n) - 1
        self.adj = adj
        self.perp = [full ^ a for a in adj]
        self.pair_line = {}
        for i, l in enumerate(self.lines):
            for a, b in combinations(l, 2):
                self.pair_line.setdefault((a, b), i)

    def line_of(self, a, b):
        return self.pair_line.get((a, b) if a < b else (b, a))

    def closure(self, mask):
        X = mask
        todo = list(bits(mask))
        used = set()
        lm, pl = self.line_masks, self.point_lines
        while todo:
            p = todo.pop()
            for l in pl[p]:
                if l in used:
                    continue
                inter = lm[l] & X
                if inter & (inter - 1):
                    used.add(l)
                    new = lm[l] & ~X
                    if new:
                        X |= new
                        todo.extend(bits(new))
        return X

    def _has_perp_pair(self, lm, mm, y):
        for x in bits(lm & ~(1 << y)):
            if mm & self.perp[x]:
                return True
        return False

    def planes(self, triangles_only=False, record_pairs=False):
        """Distinct closures of pairs of intersecting lines.

        With ``triangles_only`` only pairs carrying a non-collinear point pair
        are used. Planes are listed in order of first discovery, scanning the
        meeting point ascending and then line-id pairs ascending.
        """
        planes, index, local = [], {}, []
        line_planes = [[] for _ in self.lines]
        record = [] if record_pairs else None
        lm = self.line_masks

        def register(c):
            pid = index.get(c)
            if pid is None:
                pid = len(planes)
                index[c] = pid
                planes.append(c)
                lp = _LocalPlane(self, c)
                local.append(lp)
                for l in lp.line_ids:
                    line_planes[l].append(pid)
            return pid

        for y in range(self.n):
            L = self.point_lines[y]
            for a in range(len(L)):
                l = L[a]
                for b in range(a + 1, len(L)):
                    m = L[b]
                    if triangles_only and not self._has_perp_pair(lm[l], lm[m], y):
                        continue
                    gen = lm[l] | lm[m]
                    pid = None
                    for h in line_planes[l]:
                        if lm[m] & ~planes[h] == 0:
                            c = local[h].closure(gen)
                            pid = h if c == planes[h] else register(c)
                            break
                    if pid is None:
                        pid = register(self.closure(gen))
                    if record is not None:
                        record.append((l, m, pid))
        return planes, record

    def pair_generation_violations(self, plane, cap=10):
        """Intersecting line pairs inside ``plane`` whose closure is smaller."""
        lp = _LocalPlane(self, plane)
        count, out = 0, []
        for y in lp.points:
            L = lp.point_lines[y]
            for a in range(len(L)):
                for b in range(a + 1, len(L)):
                    if lp.closure(lp.line_masks[L[a]] | lp.line_masks[L[b]]) != plane:
                        count += 1
                        if len(out) < cap:
                            out.append((L[a], L[b]))
        return count, out

    def triple_generation_violations(self, plane, cap=10):
        """Triples of points of ``plane`` not on a common line that fail to generate it."""
        lp = _LocalPlane(self, plane)
        count, out = 0, []
        pts = lp.points
        for x, y, z in combinations(pts, 3):
            l = self.line_of(x, y)
            if l is not None and l in lp.line_masks and (lp.line_masks[l] >> z) & 1:
                continue
            if lp.closure((1 << x) | (1 << y) | (1 << z)) != plane:
                count += 1
                if len(out) < cap:
                    out.append((x, y, z))
        return count, out

    def quadrilateral(self, plane):
        """Four lines of ``plane`` meeting pairwise in six distinct points, or None."""
        lp = _LocalPlane(self, plane)
        lm = lp.line_masks
        pts = lp.points
        for a, b, c in combinations(pts, 3):
            ab, bc, ca = self.line_of(a, b), self.line_of(b, c), self.line_of(c, a)
            if ab is None or bc is None or ca is None or ab == bc:
                continue
            for u in bits(lm[ab] & ~((1 << a) | (1 << b))):
                for v in bits(lm[bc] & ~((1 << b) | (1 << c))):
                    uv = self.line_of(u, v)
                    if uv is None:
                        continue
                    w = lm[uv] & lm[ca] & ~((1 << a) | (1 << c))
                    if w:
                        return tuple(sorted((ab, bc, ca, uv)))
        return None
