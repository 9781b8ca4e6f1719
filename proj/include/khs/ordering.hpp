#pragma once

// Crossing-order selection.  The cost of the tangle algorithm is governed by
// the girth: the maximum number of boundary points among the intermediate
// subtangles.  A randomized greedy search picks each next crossing maximally
// connected to the current tangle, breaking ties toward the smaller resulting
// boundary and then by seeded random choice.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "pd.hpp"

namespace khs {

struct CrossingOrder {
    std::vector<int> perm;  // crossing indices in attachment order
    bool connected = true;  // every crossing after the first shares an arc
};

struct GirthProfile {
    std::vector<int> boundary;  // boundary point count after each crossing
    int max_girth = 0;
};

// Deterministic 64-bit generator (splitmix64); the standard engines are not
// bit-stable across library implementations, and checkpoints must be.
struct SplitMix64 {
    std::uint64_t s;
    explicit SplitMix64(std::uint64_t seed) : s(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
};

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    SplitMix64 g(seed ^ (0x2545f4914f6cdd1dULL * (salt + 1)));
    return g.next();
}

namespace ord_detail {

// arcs incident to each crossing, kink arcs listed once with multiplicity 2
struct IncidentArcs {
    std::vector<std::vector<std::pair<int, int>>> arcs;  // crossing -> (label, count)
    explicit IncidentArcs(const LinkDiagram& d) {
        arcs.resize(d.crossings());
        for (int c = 0; c < d.crossings(); ++c) {
            std::vector<int> lab(4);
            for (int s = 0; s < 4; ++s) lab[s] = d.arc_at(c, s);
            std::sort(lab.begin(), lab.end());
            for (int s = 0; s < 4;) {
                int s2 = s;
                while (s2 < 4 && lab[s2] == lab[s]) ++s2;
                arcs[c].push_back({lab[s], s2 - s});
                s = s2;
            }
        }
    }
};

} // namespace ord_detail

inline GirthProfile girth_profile(const LinkDiagram& d, const CrossingOrder& o) {
    const int n = d.crossings();
    if ((int)o.perm.size() != n) throw std::invalid_argument("order size mismatch");
    ord_detail::IncidentArcs inc(d);
    std::vector<int> arc_state(2 * n + 1, 0);  // times an endpoint was processed
    GirthProfile g;
    int boundary = 0;
    for (int c : o.perm) {
        for (auto& [lab, cnt] : inc.arcs[c]) {
            // each processed endpoint flips the arc: absent->boundary->internal
            for (int i = 0; i < cnt; ++i) {
                if (arc_state[lab] == 0) boundary++;
                else if (arc_state[lab] == 1) boundary--;
                arc_state[lab]++;
            }
        }
        g.boundary.push_back(boundary);
        g.max_girth = std::max(g.max_girth, boundary);
    }
    return g;
}

inline CrossingOrder greedy_order(const LinkDiagram& d, std::uint64_t seed) {
    const int n = d.crossings();
    SplitMix64 rng(seed);
    ord_detail::IncidentArcs inc(d);
    CrossingOrder o;
    if (n == 0) return o;

    std::vector<char> done(n, 0);
    std::vector<int> arc_state(2 * n + 1, 0);
    int boundary = 0;

    auto shared_and_delta = [&](int c, int& shared, int& delta) {
        shared = 0;
        delta = 0;
        for (auto& [lab, cnt] : inc.arcs[c]) {
            int st0 = arc_state[lab];
            if (st0 >= 1) shared += cnt;  // arc already on the tangle boundary
            for (int i = 0; i < cnt; ++i)
                delta += (st0 + i == 0) ? 1 : -1;
        }
    };

    for (int step = 0; step < n; ++step) {
        std::vector<int> best;
        int best_shared = -1, best_delta = 0;
        for (int c = 0; c < n; ++c) {
            if (done[c]) continue;
            int sh, de;
            shared_and_delta(c, sh, de);
            if (step > 0 && sh == 0) continue;  // stay connected when possible
            if (sh > best_shared || (sh == best_shared && de < best_delta)) {
                best_shared = sh;
                best_delta = de;
                best = {c};
            } else if (sh == best_shared && de == best_delta) {
                best.push_back(c);
            }
        }
        if (best.empty()) {  // disconnected remainder: random restart
            o.connected = false;
            for (int c = 0; c < n; ++c)
                if (!done[c]) best.push_back(c);
        }
        int pick = best[rng.below(best.size())];
        done[pick] = 1;
        for (auto& [lab, cnt] : inc.arcs[pick])
            for (int i = 0; i < cnt; ++i) {
                if (arc_state[lab] == 0) boundary++;
                else if (arc_state[lab] == 1) boundary--;
                arc_state[lab]++;
            }
        o.perm.push_back(pick);
    }
    return o;
}

inline std::pair<CrossingOrder, GirthProfile> find_small_girth_order(const LinkDiagram& d,
                                                                     int trials,
                                                                     std::uint64_t seed = 0) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    CrossingOrder best_o;
    GirthProfile best_g;
    bool have = false;
    for (int i = 0; i < trials; ++i) {
        CrossingOrder o = greedy_order(d, mix_seed(seed, (std::uint64_t)i));
        GirthProfile g = girth_profile(d, o);
        if (!have || g.max_girth < best_g.max_girth ||
            (g.max_girth == best_g.max_girth && g.boundary < best_g.boundary)) {
            best_o = std::move(o);
            best_g = std::move(g);
            have = true;
        }
    }
    return {best_o, best_g};
}

// identity order (the -O mode: process crossings as presented)
inline CrossingOrder presentation_order(const LinkDiagram& d) {
    CrossingOrder o;
    o.perm.resize(d.crossings());
    for (int i = 0; i < d.crossings(); ++i) o.perm[i] = i;
    return o;
}

} // namespace khs
