# distutils: language = c++
# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernel: same API and output order as ``_pykernel.Kernel``."""

from libc.stdint cimport uint64_t
from libc.string cimport memcpy
from libcpp cimport bool as cbool
from libcpp.vector cimport vector

from itertools import combinations


cdef extern from "core.hpp" namespace "plk":
    cdef cppclass Core:
        int n, m, W
        Core(int, const vector[vector[int]]&) except +
        void closure(vector[uint64_t]&)
        void enumerate_planes(cbool, cbool, vector[int]&) except +
        int num_planes()
        const vector[uint64_t]& plane_bits(int)
        long pair_violations(const vector[uint64_t]&, int, vector[int]&) except +
        long triple_violations(const vector[uint64_t]&, int, vector[int]&) except +
        cbool quadrilateral(const vector[uint64_t]&, vector[int]&) except +


cdef vector[uint64_t] to_words(object mask, int W):
    cdef vector[uint64_t] out
    out.resize(W)
    cdef bytes raw = int(mask).to_bytes(W * 8, "little")
    memcpy(out.data(), <const char*>raw, W * 8)
    return out


cdef object from_words(const vector[uint64_t]& w):
    cdef Py_ssize_t nbytes = w.size() * 8
    cdef bytes raw = (<const char*>w.data())[:nbytes]
    return int.from_bytes(raw, "little")


cdef class Kernel:
    cdef Core* core
    cdef readonly int n
    cdef readonly list lines, line_masks, point_lines, adj, perp
    cdef readonly dict pair_line
    compiled = True

    def __cinit__(self, int n, lines):
        cdef vector[vector[int]] ls
        cdef vector[int] row
        self.lines = [tuple(l) for l in lines]
        for l in self.lines:
            row.clear()
            for p in l:
                row.push_back(p)
            ls.push_back(row)
        self.core = new Core(n, ls)
        self.n = n
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

    def __dealloc__(self):
        del self.core

    def line_of(self, a, b):
        return self.pair_line.get((a, b) if a < b else (b, a))

    def closure(self, mask):
        cdef vector[uint64_t] X = to_words(mask, self.core.W)
        self.core.closure(X)
        return from_words(X)

    def planes(self, triangles_only=False, record_pairs=False):
        cdef vector[int] rec
        self.core.enumerate_planes(triangles_only, record_pairs, rec)
        planes = [from_words(self.core.plane_bits(i)) for i in range(self.core.num_planes())]
        if not record_pairs:
            return planes, None
        return planes, [(rec[i], rec[i + 1], rec[i + 2]) for i in range(0, rec.size(), 3)]

    def pair_generation_violations(self, plane, cap=10):
        cdef vector[int] out
        cdef long count = self.core.pair_violations(to_words(plane, self.core.W), cap, out)
        return count, [(out[i], out[i + 1]) for i in range(0, out.size(), 2)]

    def triple_generation_violations(self, plane, cap=10):
        cdef vector[int] out
        cdef long count = self.core.triple_violations(to_words(plane, self.core.W), cap, out)
        return count, [(out[i], out[i + 1], out[i + 2]) for i in range(0, out.size(), 3)]

    def quadrilateral(self, plane):
        cdef vector[int] out
        if self.core.quadrilateral(to_words(plane, self.core.W), out):
            return tuple(out)
        return None
