#pragma once

// Driver: run the attach / deloop / eliminate pipeline over a chosen crossing
// order and read the graded homology off the reduced complex.  Over a field
// the reduced complex has zero differentials; over the integers the residual
// scalar matrices are diagonalized per quantum degree (free ranks + torsion).

#include <chrono>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "complex.hpp"
#include "laurent.hpp"
#include "ordering.hpp"
#include "snf.hpp"

namespace khs {

struct TorsionRecord {
    int j = 0;        // quantum degree
    int r = 0;        // homological degree
    long long order = 0;
    friend bool operator<(const TorsionRecord& a, const TorsionRecord& b) {
        return std::tie(a.r, a.j, a.order) < std::tie(b.r, b.j, b.order);
    }
    friend bool operator==(const TorsionRecord& a, const TorsionRecord& b) {
        return a.r == b.r && a.j == b.j && a.order == b.order;
    }
};

struct KhResult {
    TwoVarPoly poly;                     // free ranks per (q, t) degree
    std::vector<TorsionRecord> torsion;  // integer mode only
    CrossingOrder order;
    GirthProfile profile;
    double seconds = 0;
    size_t peak_objects = 0;
    size_t eliminated = 0;
};

struct budget_exceeded : std::runtime_error {
    explicit budget_exceeded(const std::string& m) : std::runtime_error(m) {}
};

struct EngineOptions {
    bool verbose = false;
    std::ostream* log = nullptr;       // progress stream (stderr in the CLI)
    bool check_d2 = false;             // assert d(d(x)) = 0 after every step
    size_t memory_budget = 0;          // bytes; 0 = unlimited
    // called after each crossing has been fully absorbed; m = 1-based count
    std::function<void(int m)> on_crossing_done;
};

namespace engine_detail {

template <class R>
void report_step(const EngineOptions& opt, int m, int total,
                 const TangleComplex<R>& cx, size_t removed, double secs) {
    if (!opt.verbose || !opt.log) return;
    std::ostringstream os;
    os << "step m=" << m << "/" << total << " girth=" << cx.boundary_arcs.size()
       << " objects=" << cx.object_count() << " entries=" << cx.entry_count()
       << " eliminated=" << removed << " heights=";
    for (int hi = 0; hi < cx.heights(); ++hi) {
        if (hi) os << ",";
        os << (cx.hmin + hi) << ":" << cx.objs[hi].size();
    }
    os << " mem=" << cx.memory_estimate() / 1024 << "KiB"
       << " elapsed=" << secs << "s";
    (*opt.log) << os.str() << "\n";
}

} // namespace engine_detail

// One full pipeline step.  Exposed separately so resumed runs and the paging
// layer can drive the loop themselves.
template <class R>
size_t engine_step(TangleComplex<R>& cx, const LinkDiagram& d, int crossing,
                   bool check_d2 = false) {
    cx.attach_crossing(d, crossing);
    if (check_d2 && !cx.d_squared_is_zero())
        throw std::logic_error("d^2 != 0 after attach");
    cx.deloop();
    if (check_d2 && !cx.d_squared_is_zero())
        throw std::logic_error("d^2 != 0 after deloop");
    size_t removed = cx.eliminate();
    if (check_d2 && !cx.d_squared_is_zero())
        throw std::logic_error("d^2 != 0 after eliminate");
    return removed;
}

// Read homology off a fully reduced closed complex.
template <class R>
void read_off_field(const TangleComplex<R>& cx, KhResult& out) {
    for (size_t hi = 0; hi < cx.diffs.size(); ++hi)
        if (!cx.diffs[hi].empty())
            throw std::logic_error("residual differential over a field");
    for (int hi = 0; hi < cx.heights(); ++hi)
        for (auto& o : cx.objs[hi]) {
            if (o.sm.points() != 0 || o.sm.nloops != 0)
                throw std::logic_error("read-off on a non-closed complex");
            out.poly.add_term(o.qshift, cx.hmin + hi, 1);
        }
}

inline void read_off_integral(const TangleComplex<IntRing>& cx, KhResult& out) {
    // residual entries are integer multiples of the identity between equal
    // quantum degrees; diagonalize per quantum degree
    std::map<int, std::map<int, std::vector<int>>> gens;  // q -> height -> obj idx
    for (int hi = 0; hi < cx.heights(); ++hi)
        for (size_t oi = 0; oi < cx.objs[hi].size(); ++oi) {
            auto& o = cx.objs[hi][oi];
            if (o.sm.points() != 0 || o.sm.nloops != 0)
                throw std::logic_error("read-off on a non-closed complex");
            gens[o.qshift][cx.hmin + hi].push_back((int)oi);
        }
    for (auto& [q, byh] : gens) {
        std::map<int, std::vector<long long>> inv_into;  // height h -> invariants of d: h-1 -> h
        std::map<int, int> rank_out;                     // height h -> rank of d: h -> h+1
        for (auto& [h, cols] : byh) {
            int hi = h - cx.hmin;
            if (hi >= (int)cx.diffs.size()) continue;
            auto rows_it = byh.find(h + 1);
            if (rows_it == byh.end()) continue;
            auto& rows = rows_it->second;
            std::vector<std::vector<long long>> m(rows.size(),
                                                  std::vector<long long>(cols.size(), 0));
            for (size_t ci = 0; ci < cols.size(); ++ci)
                for (size_t ri = 0; ri < rows.size(); ++ri) {
                    auto it = cx.diffs[hi].find({cols[ci], rows[ri]});
                    if (it == cx.diffs[hi].end()) continue;
                    if (it->second.terms.size() != 1)
                        throw std::logic_error("residual entry not scalar");
                    m[ri][ci] = it->second.terms[0].second;
                }
            auto inv = smith_invariants(m);
            rank_out[h] = (int)inv.size();
            inv_into[h + 1] = inv;
        }
        // entries across distinct quantum degrees must be absent (degree 0)
        for (auto& [h, cols] : byh) {
            int free_rank = (int)cols.size() - rank_out[h];
            auto it = inv_into.find(h);
            if (it != inv_into.end()) {
                free_rank -= (int)it->second.size();
                for (long long dv : it->second)
                    if (dv > 1) out.torsion.push_back({q, h, dv});
            }
            if (free_rank < 0) throw std::logic_error("negative rank in read-off");
            if (free_rank > 0) out.poly.add_term(q, h, free_rank);
        }
    }
    std::sort(out.torsion.begin(), out.torsion.end());
}

template <class R>
KhResult compute_kh(const R& rc, const LinkDiagram& d, const CrossingOrder& order,
                    const EngineOptions& opt = {}) {
    auto t0 = std::chrono::steady_clock::now();
    KhResult res;
    res.order = order;
    res.profile = d.crossings() ? girth_profile(d, order) : GirthProfile{};

    TangleComplex<R> cx = TangleComplex<R>::initial(rc, d.pd.free_loops);
    cx.deloop();

    for (int m = 0; m < (int)order.perm.size(); ++m) {
        size_t removed = engine_step(cx, d, order.perm[m], opt.check_d2);
        res.eliminated += removed;
        res.peak_objects = std::max(res.peak_objects, cx.object_count());
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        engine_detail::report_step(opt, m + 1, (int)order.perm.size(), cx, removed, secs);
        if (opt.memory_budget && cx.memory_estimate() > opt.memory_budget)
            throw budget_exceeded("memory budget exceeded after crossing " +
                                  std::to_string(m + 1));
        if (opt.on_crossing_done) opt.on_crossing_done(m + 1);
    }

    if constexpr (std::is_same_v<R, IntRing>)
        read_off_integral(cx, res);
    else
        read_off_field(cx, res);
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (opt.verbose && opt.log)
        (*opt.log) << "done objects_peak=" << res.peak_objects
                   << " eliminated=" << res.eliminated << " elapsed=" << res.seconds << "s\n";
    return res;
}

template <class R>
KhResult compute_kh(const R& rc, const LinkDiagram& d, const EngineOptions& opt = {},
                    int trials = 1000, std::uint64_t seed = 0, bool reorder = true) {
    CrossingOrder order =
        reorder && d.crossings() ? find_small_girth_order(d, trials, seed).first
                                 : presentation_order(d);
    return compute_kh(rc, d, order, opt);
}

} // namespace khs
