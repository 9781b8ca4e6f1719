#pragma once

// The incrementally-built tangle complex.  Crossings of a diagram are
// absorbed one at a time: attach (planar tensor with the two-term crossing
// complex), deloop (split closed loops into shifted summands), eliminate
// (homological Gaussian elimination of invertible differential entries, in
// diagonal blocks).  All object and entry orderings are deterministic so
// that runs, checkpoints and resumed runs are bit-identical.

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "cobordism.hpp"
#include "pd.hpp"

namespace khs {

struct ChainObject {
    Smoothing sm;
    int qshift = 0;

    friend bool operator==(const ChainObject& a, const ChainObject& b) {
        return a.qshift == b.qshift && a.sm == b.sm;
    }
};

template <class R>
class TangleComplex {
public:
    using Mor = MorLinComb<R>;
    using EntryKey = std::pair<int, int>;  // (col = source index, row = target index)
    using Diff = std::map<EntryKey, Mor>;

    R rc;
    std::vector<int> boundary_arcs;          // arc labels, in point-index order
    int hmin = 0;                            // homological height of heights_[0]
    std::vector<std::vector<ChainObject>> objs;
    std::vector<Diff> diffs;                 // diffs[i]: height (hmin+i) -> (hmin+i+1)

    explicit TangleComplex(const R& ring) : rc(ring) {}

    static TangleComplex initial(const R& ring, int free_loops = 0) {
        TangleComplex c(ring);
        c.objs.push_back({ChainObject{Smoothing::empty(free_loops), 0}});
        return c;
    }

    int heights() const { return (int)objs.size(); }
    int hmax() const { return hmin + heights() - 1; }

    size_t object_count() const {
        size_t n = 0;
        for (auto& v : objs) n += v.size();
        return n;
    }
    size_t entry_count() const {
        size_t n = 0;
        for (auto& d : diffs) n += d.size();
        return n;
    }
    size_t term_count() const {
        size_t n = 0;
        for (auto& d : diffs)
            for (auto& [k, m] : d) n += m.terms.size();
        return n;
    }

    // rough live-memory estimate in bytes, for the budget policy
    size_t memory_estimate() const {
        size_t bytes = 0;
        for (auto& v : objs)
            for (auto& o : v) bytes += 32 + 2 * o.sm.match.size();
        for (auto& d : diffs)
            for (auto& [k, m] : d) {
                bytes += 96 + 4 * m.src.match.size();
                for (auto& t : m.terms)
                    bytes += 48 + t.first.comp.size() + t.first.dots.size();
            }
        return bytes;
    }

    // ------------------------------------------------------------------
    // Attach one crossing of the diagram (planar composition with its
    // two-term complex).  Objects acquire loops here; call deloop() next.

    void attach_crossing(const LinkDiagram& d, int c) {
        const int nold = (int)boundary_arcs.size();

        // local resolutions of the crossing on points 0..3 (slots)
        Smoothing res[2];
        res[0].match = {1, 0, 3, 2};  // pairs (0,1),(2,3)
        res[1].match = {3, 2, 1, 0};  // pairs (0,3),(1,2)

        // gluing pairs in the combined index space [tangle points | slots]
        std::vector<std::pair<int, int>> pairs;
        std::vector<bool> slot_glued(4, false);
        for (int s = 0; s < 4; ++s) {
            if (slot_glued[s]) continue;
            int lab = d.arc_at(c, s);
            for (int s2 = s + 1; s2 < 4; ++s2)
                if (d.arc_at(c, s2) == lab && !slot_glued[s2]) {  // kink arc
                    pairs.push_back({nold + s, nold + s2});
                    slot_glued[s] = slot_glued[s2] = true;
                    break;
                }
            if (slot_glued[s]) continue;
            for (int p = 0; p < nold; ++p)
                if (boundary_arcs[p] == lab) {
                    pairs.push_back({p, nold + s});
                    slot_glued[s] = true;
                    break;
                }
        }
        // new boundary arcs: surviving old ones, then new slots in slot order
        std::vector<bool> old_glued(nold, false);
        for (auto& [p, q] : pairs) {
            if (p < nold) old_glued[p] = true;
            if (q < nold) old_glued[q] = true;
        }
        std::vector<int> new_arcs;
        for (int p = 0; p < nold; ++p)
            if (!old_glued[p]) new_arcs.push_back(boundary_arcs[p]);
        for (int s = 0; s < 4; ++s)
            if (!slot_glued[s]) new_arcs.push_back(d.arc_at(c, s));

        const int lh[2] = {d.local_height(c, 0), d.local_height(c, 1)};
        const int lq[2] = {d.local_qshift(c, 0), d.local_qshift(c, 1)};

        // new heights: old range + {lh0, lh1}
        int new_hmin = hmin + std::min(lh[0], lh[1]);
        int new_hmax = hmax() + std::max(lh[0], lh[1]);
        int nh = new_hmax - new_hmin + 1;

        // object placement: per new height, r = 0 block then r = 1 block
        std::vector<std::vector<ChainObject>> nobjs(nh);
        // (old height idx, old obj idx, r) -> new obj idx
        std::vector<std::array<std::vector<int>, 2>> idxmap(heights());
        for (int hi = 0; hi < heights(); ++hi)
            for (int r = 0; r < 2; ++r) idxmap[hi][r].assign(objs[hi].size(), -1);

        // precompute per-object glued smoothing via a paired identity gluing
        for (int nhi = 0; nhi < nh; ++nhi) {
            int h = new_hmin + nhi;
            for (int r = 0; r < 2; ++r) {
                int ohi = (h - lh[r]) - hmin;
                if (ohi < 0 || ohi >= heights()) continue;
                for (size_t oi = 0; oi < objs[ohi].size(); ++oi) {
                    const ChainObject& o = objs[ohi][oi];
                    Mor glued = mor_glue_points(
                        rc, mor_juxtapose(rc, mor_identity(rc, o.sm), mor_identity(rc, res[r])),
                        pairs);
                    idxmap[ohi][r][oi] = (int)nobjs[nhi].size();
                    nobjs[nhi].push_back(ChainObject{glued.src, o.qshift + lq[r]});
                }
            }
        }

        // saddle between the two local resolutions
        Mor saddle = mor_zero<R>(res[0], res[1]);
        {
            Cobordism cb;
            cb.comp.assign(circles_of(res[0], res[1]).total, 0);
            cb.dots.assign(1, 0);
            add_term(rc, saddle, cb, rc.one());
        }

        std::vector<Diff> ndiffs(nh > 0 ? nh - 1 : 0);
        // d_T (x) id on both resolutions
        for (size_t hi = 0; hi < diffs.size(); ++hi) {
            for (auto& [key, mor] : diffs[hi]) {
                auto [col, row] = key;
                for (int r = 0; r < 2; ++r) {
                    int ncol = idxmap[hi][r][col];
                    int nrow = idxmap[hi + 1][r][row];
                    int nhi = (hmin + hi + lh[r]) - new_hmin;
                    Mor m = mor_glue_points(
                        rc, mor_juxtapose(rc, mor, mor_identity(rc, res[r])), pairs);
                    if (!m.is_zero()) ndiffs[nhi][{ncol, nrow}] = std::move(m);
                }
            }
        }
        // (-1)^h id (x) saddle
        for (int hi = 0; hi < heights(); ++hi) {
            int h = hmin + hi;
            for (size_t oi = 0; oi < objs[hi].size(); ++oi) {
                int ncol = idxmap[hi][0][oi];
                int nrow = idxmap[hi][1][oi];
                int nhi = (h + lh[0]) - new_hmin;
                Mor m = mor_glue_points(
                    rc, mor_juxtapose(rc, mor_identity(rc, objs[hi][oi].sm), saddle), pairs);
                if (h & 1) mor_negate(rc, m);
                if (!m.is_zero()) ndiffs[nhi][{ncol, nrow}] = std::move(m);
            }
        }

        boundary_arcs = std::move(new_arcs);
        hmin = new_hmin;
        objs = std::move(nobjs);
        diffs = std::move(ndiffs);
    }

    // ------------------------------------------------------------------
    // Delooping: an object with L loops becomes 2^L loop-free objects with
    // quantum shifts adjusted by +-1 per loop; adjacent differentials are
    // rewritten through the dotted cap/cup isomorphisms.

    void deloop() {
        bool any = false;
        for (auto& v : objs)
            for (auto& o : v)
                if (o.sm.nloops > 0) { any = true; break; }
        if (!any) return;

        // per height: new objects + transforms to/from old ones
        struct Split {
            int first_new = 0;                // index of first copy
            int copies = 1;                   // 2^nloops
            std::vector<Mor> phi, psi;        // old -> copy_p, copy_p -> old
        };
        std::vector<std::vector<Split>> splits(heights());
        std::vector<std::vector<ChainObject>> nobjs(heights());

        for (int hi = 0; hi < heights(); ++hi) {
            splits[hi].resize(objs[hi].size());
            for (size_t oi = 0; oi < objs[hi].size(); ++oi) {
                const ChainObject& o = objs[hi][oi];
                Split& sp = splits[hi][oi];
                sp.first_new = (int)nobjs[hi].size();
                int L = o.sm.nloops;
                if (L == 0) {
                    nobjs[hi].push_back(o);
                    continue;
                }
                sp.copies = 1 << L;
                Smoothing bare = o.sm;
                bare.nloops = 0;
                for (int p = 0; p < sp.copies; ++p) {
                    int dq = 0;
                    for (int i = 0; i < L; ++i) dq += (p >> i & 1) ? -1 : +1;
                    nobjs[hi].push_back(ChainObject{bare, o.qshift + dq});
                    // phi_p: old -> copy: caps removing loops L-1 .. 0,
                    // dotted on loop i when bit_i == 0
                    Mor phi = mor_identity(rc, o.sm);
                    for (int i = L - 1; i >= 0; --i)
                        phi = mor_compose(rc, mor_cap(rc, phi.tgt, (p >> i & 1) == 0), phi);
                    // psi_p: copy -> old: cups adding loops 0 .. L-1,
                    // dotted on loop i when bit_i == 1
                    Mor psi = mor_identity(rc, bare);
                    for (int i = 0; i < L; ++i)
                        psi = mor_compose(rc, mor_cup(rc, psi.tgt, (p >> i & 1) == 1), psi);
                    sp.phi.push_back(std::move(phi));
                    sp.psi.push_back(std::move(psi));
                }
            }
        }

        std::vector<Diff> ndiffs(diffs.size());
        for (size_t hi = 0; hi < diffs.size(); ++hi) {
            for (auto& [key, mor] : diffs[hi]) {
                auto [col, row] = key;
                const Split& sc = splits[hi][col];
                const Split& sr = splits[hi + 1][row];
                if (sc.copies == 1 && sr.copies == 1) {
                    ndiffs[hi][{sc.first_new, sr.first_new}] = mor;
                    continue;
                }
                for (int p = 0; p < sc.copies; ++p) {
                    Mor mid = sc.copies == 1 ? mor : mor_compose(rc, mor, sc.psi[p]);
                    if (mid.is_zero()) continue;
                    for (int q = 0; q < sr.copies; ++q) {
                        Mor m = sr.copies == 1 ? mid : mor_compose(rc, sr.phi[q], mid);
                        if (!m.is_zero())
                            ndiffs[hi][{sc.first_new + p, sr.first_new + q}] = std::move(m);
                    }
                }
            }
        }
        objs = std::move(nobjs);
        diffs = std::move(ndiffs);
    }

    // ------------------------------------------------------------------
    // Gaussian elimination.  Repeatedly sweeps all differentials for
    // diagonal blocks of invertible entries and cancels them.  Returns the
    // number of cancelled pairs.

    size_t eliminate() {
        size_t total = 0;
        bool progress = true;
        std::vector<std::vector<char>> dead(heights());
        for (int hi = 0; hi < heights(); ++hi) dead[hi].assign(objs[hi].size(), 0);

        while (progress) {
            progress = false;
            for (size_t hi = 0; hi < diffs.size(); ++hi) {
                // select a diagonal block of isomorphisms
                std::vector<std::tuple<int, int, typename R::Elem>> block;
                std::vector<char> col_used(objs[hi].size(), 0), row_used(objs[hi + 1].size(), 0);
                for (auto& [key, mor] : diffs[hi]) {
                    auto [col, row] = key;
                    if (col_used[col] || row_used[row]) continue;
                    typename R::Elem inv;
                    if (!mor_is_isomorphism(rc, mor, inv)) continue;
                    bool diag = true;
                    for (auto& [c2, r2, i2] : block) {
                        (void)i2;
                        if (diffs[hi].count({col, r2}) || diffs[hi].count({c2, row})) {
                            diag = false;
                            break;
                        }
                    }
                    if (!diag) continue;
                    col_used[col] = row_used[row] = 1;
                    block.push_back({col, row, inv});
                }
                if (block.empty()) continue;
                progress = true;
                total += block.size();

                for (auto& [col, row, inv] : block) {
                    // correction: for delta: (j2 -> row), gamma: (col -> i2):
                    // d(j2 -> i2) -= gamma o (inv * delta)
                    std::vector<std::pair<int, const Mor*>> deltas, gammas;
                    for (auto& [key, mor] : diffs[hi]) {
                        auto [c2, r2] = key;
                        if (r2 == row && c2 != col) deltas.push_back({c2, &mor});
                        if (c2 == col && r2 != row) gammas.push_back({r2, &mor});
                    }
                    for (auto& [j2, dmor] : deltas) {
                        Mor mid = *dmor;              // j2 -> row object
                        mid.tgt = objs[hi][col].sm;   // retarget through inv * identity
                        mor_scale(rc, mid, inv);
                        for (auto& [i2, gmor] : gammas) {
                            Mor corr = mor_compose(rc, *gmor, mid);
                            if (corr.is_zero()) continue;
                            mor_negate(rc, corr);
                            auto it = diffs[hi].find({j2, i2});
                            if (it == diffs[hi].end()) {
                                diffs[hi][{j2, i2}] = std::move(corr);
                            } else {
                                mor_add(rc, it->second, corr);
                                if (it->second.is_zero()) diffs[hi].erase(it);
                            }
                        }
                    }
                    dead[hi][col] = 1;
                    dead[hi + 1][row] = 1;
                    // erase all entries touching the cancelled objects
                    auto erase_touching = [](Diff& dd, int col_idx, int row_idx) {
                        for (auto it = dd.begin(); it != dd.end();) {
                            if ((col_idx >= 0 && it->first.first == col_idx) ||
                                (row_idx >= 0 && it->first.second == row_idx))
                                it = dd.erase(it);
                            else
                                ++it;
                        }
                    };
                    erase_touching(diffs[hi], col, row);
                    if (hi > 0) erase_touching(diffs[hi - 1], -1, col);
                    if (hi + 1 < diffs.size()) erase_touching(diffs[hi + 1], row, -1);
                }
            }
        }
        if (total) compact(dead);
        return total;
    }

    // drop dead objects, remap indices, trim empty boundary heights
    void compact(const std::vector<std::vector<char>>& dead) {
        std::vector<std::vector<int>> remap(heights());
        std::vector<std::vector<ChainObject>> nobjs(heights());
        for (int hi = 0; hi < heights(); ++hi) {
            remap[hi].assign(objs[hi].size(), -1);
            for (size_t oi = 0; oi < objs[hi].size(); ++oi)
                if (!dead[hi][oi]) {
                    remap[hi][oi] = (int)nobjs[hi].size();
                    nobjs[hi].push_back(std::move(objs[hi][oi]));
                }
        }
        std::vector<Diff> ndiffs(diffs.size());
        for (size_t hi = 0; hi < diffs.size(); ++hi)
            for (auto& [key, mor] : diffs[hi]) {
                int c = remap[hi][key.first], r = remap[hi + 1][key.second];
                if (c >= 0 && r >= 0) ndiffs[hi][{c, r}] = std::move(mor);
            }
        objs = std::move(nobjs);
        diffs = std::move(ndiffs);
        trim();
    }

    void trim() {
        while (heights() > 1 && objs.front().empty()) {
            objs.erase(objs.begin());
            if (!diffs.empty()) diffs.erase(diffs.begin());
            hmin++;
        }
        while (heights() > 1 && objs.back().empty()) {
            objs.pop_back();
            if (!diffs.empty()) diffs.pop_back();
        }
        if ((int)diffs.size() > std::max(0, heights() - 1)) diffs.resize(heights() - 1);
    }

    // ------------------------------------------------------------------
    // d o d = 0 on all heights (debug / invariant tests)

    bool d_squared_is_zero() const {
        for (size_t hi = 0; hi + 1 < diffs.size(); ++hi) {
            std::map<EntryKey, Mor> acc;
            for (auto& [k1, m1] : diffs[hi])
                for (auto& [k2, m2] : diffs[hi + 1]) {
                    if (k2.first != k1.second) continue;
                    Mor m = mor_compose(rc, m2, m1);
                    if (m.is_zero()) continue;
                    auto it = acc.find({k1.first, k2.second});
                    if (it == acc.end())
                        acc[{k1.first, k2.second}] = std::move(m);
                    else {
                        mor_add(rc, it->second, m);
                        if (it->second.is_zero()) acc.erase(it);
                    }
                }
            if (!acc.empty()) return false;
        }
        return true;
    }
};

} // namespace khs
