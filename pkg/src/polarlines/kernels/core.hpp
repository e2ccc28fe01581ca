// Bitset kernels for partial linear spaces: closure and plane scans.
// Mirrors polarlines.kernels._pykernel; outputs must match it exactly.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

namespace plk {

typedef std::vector<uint64_t> Bits;

inline bool test(const uint64_t* w, int i) { return (w[i >> 6] >> (i & 63)) & 1ULL; }
inline void set(uint64_t* w, int i) { w[i >> 6] |= 1ULL << (i & 63); }

struct Local {
    // a subspace, re-indexed 0..v-1 in ascending global order
    std::vector<int> pts;
    int v = 0, LW = 1;
    std::vector<int> lid;               // global line ids, ascending
    std::vector<uint64_t> lmask;        // local masks, lid.size() * LW
    std::vector<std::vector<int>> plines;  // local point -> local line indices
    std::vector<int> pair;              // v*v local line index or -1
    Bits full;                          // global mask
};

class Core {
public:
    int n, m, W;
    std::vector<std::vector<int>> line_pts, point_lines;
    std::vector<uint64_t> line_w, adj_w, perp_w;

    Core(int n_, const std::vector<std::vector<int>>& lines)
        : n(n_), m((int)lines.size()), W((n_ + 63) / 64), line_pts(lines), point_lines(n_) {
        line_w.assign((size_t)m * W, 0);
        adj_w.assign((size_t)n * W, 0);
        perp_w.assign((size_t)n * W, 0);
        for (int l = 0; l < m; ++l) {
            for (int p : line_pts[l]) {
                set(&line_w[(size_t)l * W], p);
                point_lines[p].push_back(l);
            }
        }
        for (int l = 0; l < m; ++l)
            for (int p : line_pts[l])
                for (int k = 0; k < W; ++k) adj_w[(size_t)p * W + k] |= line_w[(size_t)l * W + k];
        for (int p = 0; p < n; ++p) {
            uint64_t* a = &adj_w[(size_t)p * W];
            a[p >> 6] &= ~(1ULL << (p & 63));
            for (int k = 0; k < W; ++k) {
                uint64_t full = (k == W - 1 && (n & 63)) ? ((1ULL << (n & 63)) - 1) : ~0ULL;
                perp_w[(size_t)p * W + k] = ~a[k] & full;
            }
        }
    }

    const uint64_t* line(int l) const { return &line_w[(size_t)l * W]; }

    void closure(Bits& X) const {
        std::vector<int> todo;
        std::vector<char> used(m, 0);
        for (int p = 0; p < n; ++p)
            if (test(X.data(), p)) todo.push_back(p);
        std::reverse(todo.begin(), todo.end());
        while (!todo.empty()) {
            int p = todo.back();
            todo.pop_back();
            for (int l : point_lines[p]) {
                if (used[l]) continue;
                const uint64_t* lw = line(l);
                int cnt = 0;
                for (int k = 0; k < W && cnt < 2; ++k) cnt += __builtin_popcountll(lw[k] & X[k]);
                if (cnt >= 2) {
                    used[l] = 1;
                    for (int q : line_pts[l])
                        if (!test(X.data(), q)) {
                            set(X.data(), q);
                            todo.push_back(q);
                        }
                }
            }
        }
    }

    Local make_local(const Bits& mask) const {
        Local L;
        L.full = mask;
        std::vector<int> gidx(n, -1);
        for (int p = 0; p < n; ++p)
            if (test(mask.data(), p)) {
                gidx[p] = (int)L.pts.size();
                L.pts.push_back(p);
            }
        L.v = (int)L.pts.size();
        L.LW = std::max(1, (L.v + 63) / 64);
        std::vector<int> cand;
        for (int p : L.pts)
            for (int l : point_lines[p]) {
                bool inside = true;
                const uint64_t* lw = line(l);
                for (int k = 0; k < W; ++k)
                    if (lw[k] & ~mask[k]) { inside = false; break; }
                if (inside) cand.push_back(l);
            }
        std::sort(cand.begin(), cand.end());
        cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
        L.lid = cand;
        L.lmask.assign(cand.size() * L.LW, 0);
        L.plines.assign(L.v, {});
        L.pair.assign((size_t)L.v * L.v, -1);
        for (size_t i = 0; i < cand.size(); ++i) {
            const std::vector<int>& lp = line_pts[cand[i]];
            for (int p : lp) {
                int a = gidx[p];
                set(&L.lmask[i * L.LW], a);
            }
            for (size_t x = 0; x < lp.size(); ++x)
                for (size_t y = 0; y < lp.size(); ++y)
                    if (x != y) {
                        size_t key = (size_t)gidx[lp[x]] * L.v + gidx[lp[y]];
                        if (L.pair[key] < 0) L.pair[key] = (int)i;
                    }
        }
        // point -> local lines, in ascending global line id (matches point_lines order)
        for (int a = 0; a < L.v; ++a)
            for (int l : point_lines[L.pts[a]]) {
                auto it = std::lower_bound(cand.begin(), cand.end(), l);
                if (it != cand.end() && *it == l) L.plines[a].push_back((int)(it - cand.begin()));
            }
        return L;
    }

    static void local_closure(const Local& L, Bits& X) {
        std::vector<int> todo;
        std::vector<char> used(L.lid.size(), 0);
        for (int p = L.v - 1; p >= 0; --p)
            if (test(X.data(), p)) todo.push_back(p);
        while (!todo.empty()) {
            int p = todo.back();
            todo.pop_back();
            for (int li : L.plines[p]) {
                if (used[li]) continue;
                const uint64_t* lw = &L.lmask[(size_t)li * L.LW];
                int cnt = 0;
                for (int k = 0; k < L.LW && cnt < 2; ++k) cnt += __builtin_popcountll(lw[k] & X[k]);
                if (cnt >= 2) {
                    used[li] = 1;
                    for (int k = 0; k < L.LW; ++k) {
                        uint64_t nw = lw[k] & ~X[k];
                        X[k] |= nw;
                        while (nw) {
                            int b = __builtin_ctzll(nw);
                            todo.push_back(k * 64 + b);
                            nw &= nw - 1;
                        }
                    }
                }
            }
        }
    }

    static bool local_is_full(const Local& L, const Bits& X) {
        for (int k = 0; k < L.LW; ++k) {
            int lo = k * 64, hi = std::min(L.v, lo + 64);
            uint64_t want = (hi - lo == 64) ? ~0ULL : ((1ULL << (hi - lo)) - 1);
            if (X[k] != want) return false;
        }
        return true;
    }

    Bits local_to_global(const Local& L, const Bits& X) const {
        Bits g(W, 0);
        for (int a = 0; a < L.v; ++a)
            if (test(X.data(), a)) set(g.data(), L.pts[a]);
        return g;
    }

    bool has_perp_pair(int l, int mm, int y) const {
        const uint64_t* mw = line(mm);
        for (int x : line_pts[l]) {
            if (x == y) continue;
            const uint64_t* pw = &perp_w[(size_t)x * W];
            for (int k = 0; k < W; ++k)
                if (mw[k] & pw[k]) return true;
        }
        return false;
    }

    int num_planes() const { return (int)planes.size(); }
    const Bits& plane_bits(int pid) const { return planes[pid].full; }

    // plane enumeration state
    std::vector<Local> planes;
    std::map<Bits, int> plane_index;
    std::vector<std::vector<int>> line_planes;

    int register_plane(const Bits& c) {
        auto it = plane_index.find(c);
        if (it != plane_index.end()) return it->second;
        int pid = (int)planes.size();
        plane_index[c] = pid;
        planes.push_back(make_local(c));
        for (int l : planes.back().lid) line_planes[l].push_back(pid);
        return pid;
    }

    void enumerate_planes(bool triangles_only, bool record, std::vector<int>& rec) {
        planes.clear();
        plane_index.clear();
        line_planes.assign(m, {});
        for (int y = 0; y < n; ++y) {
            const std::vector<int>& Ly = point_lines[y];
            for (size_t a = 0; a < Ly.size(); ++a) {
                int l = Ly[a];
                for (size_t b = a + 1; b < Ly.size(); ++b) {
                    int mm = Ly[b];
                    if (triangles_only && !has_perp_pair(l, mm, y)) continue;
                    int pid = -1;
                    for (int h : line_planes[l]) {
                        const Local& P = planes[h];
                        const uint64_t* mw = line(mm);
                        bool inside = true;
                        for (int k = 0; k < W; ++k)
                            if (mw[k] & ~P.full[k]) { inside = false; break; }
                        if (!inside) continue;
                        int la = (int)(std::lower_bound(P.lid.begin(), P.lid.end(), l) - P.lid.begin());
                        int lb = (int)(std::lower_bound(P.lid.begin(), P.lid.end(), mm) - P.lid.begin());
                        Bits X(P.LW, 0);
                        for (int k = 0; k < P.LW; ++k)
                            X[k] = P.lmask[(size_t)la * P.LW + k] | P.lmask[(size_t)lb * P.LW + k];
                        local_closure(P, X);
                        if (local_is_full(P, X)) {
                            pid = h;
                        } else {
                            Bits g = local_to_global(P, X);
                            pid = register_plane(g);
                        }
                        break;
                    }
                    if (pid < 0) {
                        Bits X(W, 0);
                        const uint64_t* lw = line(l);
                        const uint64_t* mw = line(mm);
                        for (int k = 0; k < W; ++k) X[k] = lw[k] | mw[k];
                        closure(X);
                        pid = register_plane(X);
                    }
                    if (record) {
                        rec.push_back(l);
                        rec.push_back(mm);
                        rec.push_back(pid);
                    }
                }
            }
        }
    }

    long pair_violations(const Bits& mask, int cap, std::vector<int>& out) const {
        Local L = make_local(mask);
        long count = 0;
        for (int a = 0; a < L.v; ++a) {
            const std::vector<int>& pl = L.plines[a];
            for (size_t i = 0; i < pl.size(); ++i)
                for (size_t j = i + 1; j < pl.size(); ++j) {
                    Bits X(L.LW, 0);
                    for (int k = 0; k < L.LW; ++k)
                        X[k] = L.lmask[(size_t)pl[i] * L.LW + k] | L.lmask[(size_t)pl[j] * L.LW + k];
                    local_closure(L, X);
                    if (!local_is_full(L, X)) {
                        ++count;
                        if ((int)out.size() < 2 * cap) {
                            out.push_back(L.lid[pl[i]]);
                            out.push_back(L.lid[pl[j]]);
                        }
                    }
                }
        }
        return count;
    }

    long triple_violations(const Bits& mask, int cap, std::vector<int>& out) const {
        Local L = make_local(mask);
        long count = 0;
        int v = L.v;
        for (int x = 0; x < v; ++x)
            for (int y = x + 1; y < v; ++y) {
                int lxy = L.pair[(size_t)x * v + y];
                for (int z = y + 1; z < v; ++z) {
                    if (lxy >= 0 && test(&L.lmask[(size_t)lxy * L.LW], z)) continue;
                    Bits X(L.LW, 0);
                    set(X.data(), x);
                    set(X.data(), y);
                    set(X.data(), z);
                    local_closure(L, X);
                    if (!local_is_full(L, X)) {
                        ++count;
                        if ((int)out.size() < 3 * cap) {
                            out.push_back(L.pts[x]);
                            out.push_back(L.pts[y]);
                            out.push_back(L.pts[z]);
                        }
                    }
                }
            }
        return count;
    }

    bool quadrilateral(const Bits& mask, std::vector<int>& out) const {
        Local L = make_local(mask);
        int v = L.v, LW = L.LW;
        auto pl = [&](int a, int b) { return L.pair[(size_t)a * v + b]; };
        for (int a = 0; a < v; ++a)
            for (int b = a + 1; b < v; ++b) {
                int ab = pl(a, b);
                if (ab < 0) continue;
                for (int c = b + 1; c < v; ++c) {
                    int bc = pl(b, c), ca = pl(c, a);
                    if (bc < 0 || ca < 0 || ab == bc) continue;
                    const uint64_t* mab = &L.lmask[(size_t)ab * LW];
                    const uint64_t* mbc = &L.lmask[(size_t)bc * LW];
                    const uint64_t* mca = &L.lmask[(size_t)ca * LW];
                    for (int u = 0; u < v; ++u) {
                        if (u == a || u == b || !test(mab, u)) continue;
                        for (int w2 = 0; w2 < v; ++w2) {
                            if (w2 == b || w2 == c || !test(mbc, w2)) continue;
                            int uv = pl(u, w2);
                            if (uv < 0) continue;
                            const uint64_t* muv = &L.lmask[(size_t)uv * LW];
                            for (int k = 0; k < LW; ++k) {
                                uint64_t meet = muv[k] & mca[k];
                                if ((a >> 6) == k) meet &= ~(1ULL << (a & 63));
                                if ((c >> 6) == k) meet &= ~(1ULL << (c & 63));
                                if (meet) {
                                    std::vector<int> r = {L.lid[ab], L.lid[bc], L.lid[ca], L.lid[uv]};
                                    std::sort(r.begin(), r.end());
                                    out = r;
                                    return true;
                                }
                            }
                        }
                    }
                }
            }
        return false;
    }
};

}  // namespace plk
