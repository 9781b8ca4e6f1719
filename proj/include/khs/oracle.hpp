#pragma once

// Brute-force reference implementations over the full cube of resolutions:
// Khovanov homology by per-bidegree Smith normal form, and the Lee-theory
// s-invariant read from the q-filtration of Lee homology in degree 0.
// Deliberately independent of the tangle engine: the cube is materialized
// vertex by vertex and homology is computed by plain linear algebra.

#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "engine.hpp"  // KhResult, TorsionRecord
#include "pd.hpp"
#include "snf.hpp"

namespace khs {

struct oracle_cap_exceeded : std::runtime_error {
    explicit oracle_cap_exceeded(const std::string& m) : std::runtime_error(m) {}
};

namespace cube_detail {

// Smoothing data of one cube vertex: number of loops and arc -> loop index,
// loops numbered by their minimal arc label.
struct VertexSmoothing {
    int nloops = 0;
    std::vector<int> loop_of_arc;  // 1-based arcs
};

inline VertexSmoothing vertex_smoothing(const LinkDiagram& d, std::uint32_t v) {
    const int n = d.crossings();
    std::vector<int> uf(2 * n + 1);
    std::iota(uf.begin(), uf.end(), 0);
    auto find = [&](int a) {
        while (uf[a] != a) a = uf[a] = uf[uf[a]];
        return a;
    };
    for (int c = 0; c < n; ++c) {
        auto pairs = LinkDiagram::resolution_pairs(v >> c & 1);
        for (auto& pr : pairs) {
            int a = d.arc_at(c, pr[0]), b = d.arc_at(c, pr[1]);
            uf[find(a)] = find(b);
        }
    }
    VertexSmoothing s;
    s.loop_of_arc.assign(2 * n + 1, -1);
    std::map<int, int> roots;
    for (int a = 1; a <= 2 * n; ++a) {
        int r = find(a);
        auto it = roots.find(r);
        if (it == roots.end()) it = roots.insert({r, s.nloops++}).first;
        s.loop_of_arc[a] = it->second;
    }
    // sort loops by minimal arc: roots map is keyed by root id, re-map by
    // first appearance order of arcs (already in arc order)
    return s;
}

struct SparseMat {
    int rows = 0, cols = 0;
    std::vector<std::vector<std::pair<int, long long>>> col;  // per column: (row, coeff)
};

// rank over Z/p of the submatrix using columns [0, ncols) in the given
// order, reporting the rank after each prefix boundary in `marks`
inline std::vector<int> ranks_mod_p_by_prefix(const SparseMat& m, const std::vector<int>& order,
                                              const std::vector<int>& marks, std::uint64_t p) {
    std::vector<std::map<int, std::uint64_t>> basis;  // reduced rows of the echelon basis
    std::map<int, int> pivot_of_row;                  // leading row -> basis idx
    std::vector<int> out;
    int rank = 0;
    size_t mi = 0;
    auto inv_mod = [&](std::uint64_t a) {
        std::uint64_t r = 1, b = p - 2, base = a % p;
        while (b) {
            if (b & 1) r = r * base % p;
            base = base * base % p;
            b >>= 1;
        }
        return r;
    };
    for (size_t k = 0; k <= order.size(); ++k) {
        while (mi < marks.size() && (int)k == marks[mi]) {
            out.push_back(rank);
            ++mi;
        }
        if (k == order.size()) break;
        std::map<int, std::uint64_t> vec;
        for (auto& [r, c] : m.col[order[k]]) {
            long long cc = c % (long long)p;
            if (cc < 0) cc += p;
            if (cc) vec[r] = (std::uint64_t)cc;
        }
        while (!vec.empty()) {
            int lead = vec.begin()->first;
            auto it = pivot_of_row.find(lead);
            if (it == pivot_of_row.end()) {
                // normalize and store
                std::uint64_t iv = inv_mod(vec.begin()->second);
                for (auto& [r, val] : vec) val = val * iv % p;
                pivot_of_row[lead] = (int)basis.size();
                basis.push_back(std::move(vec));
                ++rank;
                break;
            }
            std::uint64_t f = vec.begin()->second;
            for (auto& [r, val] : basis[it->second]) {
                auto vit = vec.find(r);
                std::uint64_t sub = f * val % p;
                std::uint64_t cur = vit == vec.end() ? 0 : vit->second;
                std::uint64_t nv = (cur + p - sub) % p;
                if (nv == 0) {
                    if (vit != vec.end()) vec.erase(vit);
                } else {
                    vec[r] = nv;
                }
            }
        }
    }
    while (mi < marks.size()) {
        out.push_back(rank);
        ++mi;
    }
    return out;
}

} // namespace cube_detail

// ---------------------------------------------------------------------------
// Full-cube Khovanov homology.  Free ranks always; torsion records filled for
// the integer ring.  ring_mode: 0 = Z, -1 = Q, p = mod p.

inline KhResult cube_kh(const LinkDiagram& d, int ring_mode, int cap = 12) {
    const int n = d.crossings();
    if (n > cap)
        throw oracle_cap_exceeded("cube oracle cap " + std::to_string(cap) + " exceeded");
    KhResult res;

    std::vector<cube_detail::VertexSmoothing> sm(1u << n);
    for (std::uint32_t v = 0; v < (1u << n); ++v) {
        sm[v] = cube_detail::vertex_smoothing(d, v);
        sm[v].nloops += d.pd.free_loops;  // crossingless components
    }

    // generators grouped by (r, q): per group a list of (vertex, xbits)
    struct Gen {
        std::uint32_t v, xbits;
    };
    std::map<std::pair<int, int>, std::vector<Gen>> gens;
    std::map<std::pair<std::uint32_t, std::uint32_t>, int> index_in_group;
    for (std::uint32_t v = 0; v < (1u << n); ++v) {
        int r = __builtin_popcount(v) - d.n_minus;
        int L = sm[v].nloops;
        for (std::uint32_t xb = 0; xb < (1u << L); ++xb) {
            int q = (L - 2 * __builtin_popcount(xb)) + __builtin_popcount(v) + d.n_plus -
                    2 * d.n_minus;
            auto& g = gens[{r, q}];
            index_in_group[{v, xb}] = (int)g.size();
            g.push_back({v, xb});
        }
    }

    // per-(r, q) integer matrix of d: (r,q) -> (r+1,q); then SNF once
    std::map<std::pair<int, int>, std::vector<long long>> snf_of;  // keyed by source (r,q)
    for (auto& [key, src] : gens) {
        auto [r, q] = key;
        auto tgt_it = gens.find({r + 1, q});
        if (tgt_it == gens.end()) continue;
        auto& tgt = tgt_it->second;
        std::vector<std::vector<long long>> m(tgt.size(), std::vector<long long>(src.size(), 0));
        bool nonzero = false;
        for (size_t ci = 0; ci < src.size(); ++ci) {
            auto [v, xb] = src[ci];
            for (int i = 0; i < n; ++i) {
                if (v >> i & 1) continue;
                std::uint32_t v2 = v | (1u << i);
                long long sign = (__builtin_popcount(v & ((1u << i) - 1)) & 1) ? -1 : 1;
                // the two local strands pass through slots 0 and 2; comparing
                // their loops before/after the flip detects merge vs split
                const auto& s1 = sm[v];
                const auto& s2 = sm[v2];
                int src_l1 = s1.loop_of_arc[d.arc_at(i, 0)];
                int src_l2 = s1.loop_of_arc[d.arc_at(i, 2)];
                int tgt_l1 = s2.loop_of_arc[d.arc_at(i, 0)];
                int tgt_l2 = s2.loop_of_arc[d.arc_at(i, 2)];
                // transfer x-labels of unaffected loops by representative arcs
                std::uint32_t xb2_base = 0;
                bool ok = true;
                for (int a = 1; a <= 2 * n && ok; ++a) {
                    int ls = s1.loop_of_arc[a], lt = s2.loop_of_arc[a];
                    if (ls == src_l1 || ls == src_l2) continue;
                    if (lt == tgt_l1 || lt == tgt_l2) continue;
                    if (xb >> ls & 1) xb2_base |= 1u << lt;
                }
                // free loops: identical in both (appended at the end)
                for (int fl = 0; fl < d.pd.free_loops; ++fl)
                    if (xb >> (s1.nloops - d.pd.free_loops + fl) & 1)
                        xb2_base |= 1u << (s2.nloops - d.pd.free_loops + fl);
                auto emit = [&](std::uint32_t xb2) {
                    int row = index_in_group.at({v2, xb2});
                    m[row][ci] += sign;
                    nonzero = true;
                };
                if (src_l1 != src_l2 && tgt_l1 == tgt_l2) {
                    // merge: m(1,1)=1; m(1,x)=m(x,1)=x; m(x,x)=0
                    bool x1 = xb >> src_l1 & 1, x2 = xb >> src_l2 & 1;
                    if (x1 && x2) continue;
                    std::uint32_t xb2 = xb2_base;
                    if (x1 || x2) xb2 |= 1u << tgt_l1;
                    emit(xb2);
                } else if (src_l1 == src_l2 && tgt_l1 != tgt_l2) {
                    // split: D(1) = 1 x + x 1; D(x) = x x
                    bool x0 = xb >> src_l1 & 1;
                    if (x0) {
                        emit(xb2_base | (1u << tgt_l1) | (1u << tgt_l2));
                    } else {
                        emit(xb2_base | (1u << tgt_l1));
                        emit(xb2_base | (1u << tgt_l2));
                    }
                } else {
                    throw std::logic_error("cube edge neither merge nor split");
                }
            }
        }
        if (nonzero) snf_of[key] = smith_invariants(m);
        else snf_of[key] = {};
    }

    auto rank_for_ring = [&](const std::vector<long long>& inv) {
        if (ring_mode <= 0) return (int)inv.size();
        int r = 0;
        for (long long dvi : inv)
            if (dvi % ring_mode != 0) ++r;
        return r;
    };

    for (auto& [key, g] : gens) {
        auto [r, q] = key;
        int dim = (int)g.size();
        int rank_out = 0, rank_in = 0;
        auto ito = snf_of.find({r, q});
        if (ito != snf_of.end()) rank_out = rank_for_ring(ito->second);
        auto iti = snf_of.find({r - 1, q});
        if (iti != snf_of.end()) {
            rank_in = rank_for_ring(iti->second);
            if (ring_mode == 0)
                for (long long dv : iti->second)
                    if (dv > 1) res.torsion.push_back({q, r, dv});
        }
        int h = dim - rank_out - rank_in;
        if (h < 0) throw std::logic_error("negative homology rank in cube oracle");
        if (h > 0) res.poly.add_term(q, r, h);
    }
    std::sort(res.torsion.begin(), res.torsion.end());
    return res;
}

// ---------------------------------------------------------------------------
// Lee homology s-invariant for knots.  Generators as above; the Lee
// differential adds the degree +4 parts m(x,x) = 1 and D(x) = ... + 1 (x) 1.
// The q-filtration level of the two surviving classes in degree 0 gives
// s = s_min + 1.  Ranks are taken mod two large primes with structural
// consistency checks (dim H^0 = 2, s_max - s_min = 2).

inline int lee_s(const LinkDiagram& d, int cap = 12) {
    const int n = d.crossings();
    if (n > cap)
        throw oracle_cap_exceeded("lee oracle cap " + std::to_string(cap) + " exceeded");
    if (d.component_count != 1) throw std::invalid_argument("lee_s needs a knot");

    std::vector<cube_detail::VertexSmoothing> sm(1u << n);
    for (std::uint32_t v = 0; v < (1u << n); ++v) sm[v] = cube_detail::vertex_smoothing(d, v);

    struct Gen {
        std::uint32_t v, xbits;
        int q;
    };
    // generators for homological degrees -1, 0, +1 (all that matter here)
    std::map<int, std::vector<Gen>> gens;
    std::map<std::pair<std::uint32_t, std::uint32_t>, int> idx;
    for (std::uint32_t v = 0; v < (1u << n); ++v) {
        int r = __builtin_popcount(v) - d.n_minus;
        if (r < -1 || r > 1) continue;
        int L = sm[v].nloops;
        for (std::uint32_t xb = 0; xb < (1u << L); ++xb) {
            int q = (L - 2 * __builtin_popcount(xb)) + __builtin_popcount(v) + d.n_plus -
                    2 * d.n_minus;
            idx[{v, xb}] = (int)gens[r].size();
            gens[r].push_back({v, xb, q});
        }
    }

    auto build = [&](int r_src) {
        cube_detail::SparseMat m;
        auto& src = gens[r_src];
        auto& tgt = gens[r_src + 1];
        m.rows = (int)tgt.size();
        m.cols = (int)src.size();
        m.col.resize(m.cols);
        for (int ci = 0; ci < m.cols; ++ci) {
            auto [v, xb, qq] = src[ci];
            (void)qq;
            for (int i = 0; i < n; ++i) {
                if (v >> i & 1) continue;
                std::uint32_t v2 = v | (1u << i);
                long long sign = (__builtin_popcount(v & ((1u << i) - 1)) & 1) ? -1 : 1;
                const auto& s1 = sm[v];
                const auto& s2 = sm[v2];
                int src_l1 = s1.loop_of_arc[d.arc_at(i, 0)];
                int src_l2 = s1.loop_of_arc[d.arc_at(i, 2)];
                int tgt_l1 = s2.loop_of_arc[d.arc_at(i, 0)];
                int tgt_l2 = s2.loop_of_arc[d.arc_at(i, 2)];
                std::uint32_t xb2_base = 0;
                for (int a = 1; a <= 2 * n; ++a) {
                    int ls = s1.loop_of_arc[a], lt = s2.loop_of_arc[a];
                    if (ls == src_l1 || ls == src_l2) continue;
                    if (lt == tgt_l1 || lt == tgt_l2) continue;
                    if (xb >> ls & 1) xb2_base |= 1u << lt;
                }
                auto emit = [&](std::uint32_t xb2, long long c) {
                    m.col[ci].push_back({idx.at({v2, xb2}), c * sign});
                };
                if (src_l1 != src_l2 && tgt_l1 == tgt_l2) {
                    bool x1 = xb >> src_l1 & 1, x2 = xb >> src_l2 & 1;
                    if (x1 && x2) emit(xb2_base, 1);  // Lee: m(x,x) = 1
                    else if (x1 || x2) emit(xb2_base | (1u << tgt_l1), 1);
                    else emit(xb2_base, 1);  // m(1,1) = 1 -> "1" label = no bit
                } else if (src_l1 == src_l2 && tgt_l1 != tgt_l2) {
                    bool x0 = xb >> src_l1 & 1;
                    if (x0) {
                        emit(xb2_base | (1u << tgt_l1) | (1u << tgt_l2), 1);
                        emit(xb2_base, 1);  // Lee: D(x) += 1 (x) 1
                    } else {
                        emit(xb2_base | (1u << tgt_l1), 1);
                        emit(xb2_base | (1u << tgt_l2), 1);
                    }
                } else {
                    throw std::logic_error("cube edge neither merge nor split");
                }
            }
            // combine duplicate rows
            auto& col = m.col[ci];
            std::sort(col.begin(), col.end());
            std::vector<std::pair<int, long long>> c2;
            for (auto& e : col) {
                if (!c2.empty() && c2.back().first == e.first) c2.back().second += e.second;
                else c2.push_back(e);
            }
            c2.erase(std::remove_if(c2.begin(), c2.end(),
                                    [](auto& e) { return e.second == 0; }),
                     c2.end());
            col = std::move(c2);
        }
        return m;
    };

    cube_detail::SparseMat d0 = build(0);
    cube_detail::SparseMat dm1 = build(-1);

    // q-degrees at r = 0, descending
    std::vector<int> qs;
    for (auto& g : gens[0]) qs.push_back(g.q);
    std::sort(qs.begin(), qs.end());
    qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
    std::reverse(qs.begin(), qs.end());

    // column order: r=0 generators by descending q
    std::vector<int> order(gens[0].size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (gens[0][a].q != gens[0][b].q) return gens[0][a].q > gens[0][b].q;
        return a < b;
    });
    std::vector<int> marks;  // prefix sizes per q threshold
    {
        size_t k = 0;
        for (int q : qs) {
            while (k < order.size() && gens[0][order[k]].q >= q) ++k;
            marks.push_back((int)k);
        }
    }

    auto compute_s = [&](std::uint64_t p) -> std::pair<int, bool> {
        // rank of d0 columns with q >= threshold
        auto rank_d0 = cube_detail::ranks_mod_p_by_prefix(d0, order, marks, p);
        // rank of [dm1 | E_j]: eliminate dm1 fully, then coordinate columns
        // in descending q; emulate by a combined matrix
        cube_detail::SparseMat comb;
        comb.rows = d0.cols;  // space of r=0 chains
        comb.cols = dm1.cols + (int)order.size();
        comb.col.resize(comb.cols);
        for (int ci = 0; ci < dm1.cols; ++ci) {
            // dm1 maps into r=0 chains: its "rows" live in gens[0]
            comb.col[ci] = dm1.col[ci];
        }
        for (size_t k = 0; k < order.size(); ++k)
            comb.col[dm1.cols + k] = {{order[k], 1}};
        std::vector<int> order2(comb.cols);
        std::iota(order2.begin(), order2.end(), 0);
        std::vector<int> marks2;
        marks2.push_back(dm1.cols);  // rank of dm1 alone
        for (int mk : marks) marks2.push_back(dm1.cols + mk);
        auto ranks2 = cube_detail::ranks_mod_p_by_prefix(comb, order2, marks2, p);
        int rank_dm1 = ranks2[0];

        // dim F_j H^0 = indep_j - rank_d0_j
        int dimH = -1, s_min = 0, s_max = 0;
        bool seen_nonzero = false, ok = true;
        // full H^0 dim: last thresholds
        int total_k = (int)order.size();
        (void)total_k;
        std::vector<int> dims;
        for (size_t qi = 0; qi < qs.size(); ++qi) {
            int indep = ranks2[qi + 1] - rank_dm1;
            int dimF = indep - rank_d0[qi];
            dims.push_back(dimF);
            if (dimF > 0 && !seen_nonzero) {
                seen_nonzero = true;
                s_max = qs[qi];
            }
        }
        dimH = dims.empty() ? 0 : dims.back();
        if (dimH != 2) ok = false;
        s_min = 0;
        for (size_t qi = 0; qi < qs.size(); ++qi)
            if (dims[qi] == dimH) {
                s_min = qs[qi];
                break;
            }
        if (ok && s_max - s_min != 2) ok = false;
        return {s_min + 1, ok};
    };

    auto [s1, ok1] = compute_s(1073741789ULL);
    auto [s2, ok2] = compute_s(2147483629ULL);
    if (!ok1 || !ok2 || s1 != s2)
        throw std::logic_error("lee oracle consistency check failed");
    return s1;
}

} // namespace khs
