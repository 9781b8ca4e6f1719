#pragma once

// Planar-diagram (PD) notation: parsing, validation, orientation recovery and
// crossing signs.  A crossing X[a,b,c,d] lists the four incident arc labels
// counterclockwise starting from the incoming under-strand, so slot 0 is the
// under-strand head and slot 2 its tail; which of slots 1/3 is the over-strand
// head is recovered by constraint propagation (every arc has exactly one head
// and one tail).

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "laurent.hpp"  // parse_error

namespace khs {

struct PDCode {
    std::vector<std::array<int, 4>> x;  // arc labels per crossing, CCW from under-in
    int free_loops = 0;                 // crossingless unknot components

    size_t size() const { return x.size(); }

    std::string str() const {
        std::string s = "PD[";
        for (size_t i = 0; i < x.size(); ++i) {
            if (i) s += ",";
            s += "X[" + std::to_string(x[i][0]) + "," + std::to_string(x[i][1]) + "," +
                 std::to_string(x[i][2]) + "," + std::to_string(x[i][3]) + "]";
        }
        s += "]";
        return s;
    }
};

// One endpoint of an arc: (crossing, slot).
struct ArcEnd {
    int crossing = -1;
    int slot = -1;
    friend bool operator==(const ArcEnd& a, const ArcEnd& b) {
        return a.crossing == b.crossing && a.slot == b.slot;
    }
};

class LinkDiagram {
public:
    PDCode pd;
    std::vector<int> sign;             // +1/-1 per crossing
    std::vector<ArcEnd> head, tail;    // per arc label (1-based index)
    std::vector<int> arc_component;    // per arc label (1-based), 0-based component ids
    int component_count = 0;
    int n_plus = 0, n_minus = 0;

    int crossings() const { return (int)pd.x.size(); }
    int writhe() const { return n_plus - n_minus; }
    int arcs() const { return 2 * crossings(); }

    int arc_at(int c, int s) const { return pd.x[c][s]; }

    // Resolution r of a crossing pairs its slots: r=0 -> (0,1),(2,3);
    // r=1 -> (0,3),(1,2).  Together with the sign-dependent height placement
    // in the engine this normalizes the unknot to q + q^-1.
    static std::array<std::array<int, 2>, 2> resolution_pairs(int r) {
        if (r == 0) return {{{0, 1}, {2, 3}}};
        return {{{0, 3}, {1, 2}}};
    }

    // local homological height and quantum shift of resolution r
    int local_height(int c, int r) const { return sign[c] > 0 ? r : r - 1; }
    int local_qshift(int c, int r) const { return sign[c] > 0 ? r + 1 : r - 2; }

    LinkDiagram mirrored() const;
};

namespace detail {

inline void skip_space(const std::string& s, size_t& i) {
    while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
}

inline long long read_int(const std::string& s, size_t& i) {
    skip_space(s, i);
    bool neg = false;
    if (i < s.size() && s[i] == '-') { neg = true; ++i; }
    if (i >= s.size() || !std::isdigit((unsigned char)s[i]))
        throw parse_error("expected integer at offset " + std::to_string(i));
    long long v = 0;
    while (i < s.size() && std::isdigit((unsigned char)s[i])) v = v * 10 + (s[i++] - '0');
    return neg ? -v : v;
}

inline void expect(const std::string& s, size_t& i, char c) {
    skip_space(s, i);
    if (i >= s.size() || s[i] != c)
        throw parse_error(std::string("expected '") + c + "' at offset " + std::to_string(i));
    ++i;
}

} // namespace detail

inline PDCode parse_pd_text(const std::string& text) {
    size_t i = 0;
    detail::skip_space(text, i);
    if (text.compare(i, 2, "PD") != 0) throw parse_error("PD expression must start with 'PD'");
    i += 2;
    detail::expect(text, i, '[');
    PDCode pd;
    detail::skip_space(text, i);
    if (i < text.size() && text[i] == ']') { ++i; pd.free_loops = 1; return pd; }  // PD[] = unknot
    while (true) {
        detail::skip_space(text, i);
        if (text.compare(i, 1, "X") != 0) throw parse_error("expected crossing 'X[...]'");
        ++i;
        detail::expect(text, i, '[');
        std::array<int, 4> q{};
        for (int k = 0; k < 4; ++k) {
            long long v = detail::read_int(text, i);
            if (v <= 0 || v > 1 << 24) throw parse_error("arc labels must be small positive integers");
            q[k] = (int)v;
            if (k < 3) detail::expect(text, i, ',');
        }
        detail::expect(text, i, ']');
        pd.x.push_back(q);
        detail::skip_space(text, i);
        if (i < text.size() && text[i] == ',') { ++i; continue; }
        detail::expect(text, i, ']');
        break;
    }
    detail::skip_space(text, i);
    if (i != text.size()) throw parse_error("trailing characters after PD expression");
    return pd;
}

// Validate a PD code and recover orientations/signs.  Throws parse_error on
// violated invariants.  Split diagrams are rejected unless allow_split.
inline LinkDiagram analyze_pd(const PDCode& pd_in, bool allow_split = false) {
    LinkDiagram d;
    d.pd = pd_in;
    const int n = (int)pd_in.x.size();
    if (n == 0) {
        d.component_count = pd_in.free_loops;
        return d;
    }

    // collect label occurrences
    std::map<int, std::vector<ArcEnd>> occ;
    for (int c = 0; c < n; ++c)
        for (int s = 0; s < 4; ++s) occ[pd_in.x[c][s]].push_back({c, s});
    for (auto& [lab, ends] : occ)
        if (ends.size() != 2)
            throw parse_error("arc label " + std::to_string(lab) + " appears " +
                              std::to_string(ends.size()) + " times (want exactly 2)");

    // relabel to 1..2n preserving numeric order (normalization)
    std::map<int, int> relabel;
    {
        int next = 1;
        for (auto& [lab, ends] : occ) { (void)ends; relabel[lab] = next++; }
    }
    std::vector<std::array<ArcEnd, 2>> ends(2 * n + 1);
    std::vector<int> end_count(2 * n + 1, 0);
    for (int c = 0; c < n; ++c)
        for (int s = 0; s < 4; ++s) {
            int lab = relabel[pd_in.x[c][s]];
            d.pd.x[c][s] = lab;
            ends[lab][end_count[lab]++] = {c, s};
        }

    // unoriented link components: arcs joined through passages
    // (under passage: slots 0-2; over passage: slots 1-3)
    std::vector<int> comp(2 * n + 1, -1);
    {
        std::vector<int> uf(2 * n + 1);
        for (int a = 1; a <= 2 * n; ++a) uf[a] = a;
        auto find = [&](int a) { while (uf[a] != a) a = uf[a] = uf[uf[a]]; return a; };
        for (int c = 0; c < n; ++c) {
            uf[find(d.pd.x[c][0])] = find(d.pd.x[c][2]);
            uf[find(d.pd.x[c][1])] = find(d.pd.x[c][3]);
        }
        std::map<int, int> roots;
        for (int a = 1; a <= 2 * n; ++a) {
            int r = find(a);
            if (!roots.count(r)) roots[r] = (int)roots.size();
            comp[a] = roots[r];
        }
        d.component_count = (int)roots.size() + pd_in.free_loops;
    }
    d.arc_component.assign(2 * n + 1, -1);
    for (int a = 1; a <= 2 * n; ++a) d.arc_component[a] = comp[a];

    // diagram connectivity (crossings joined by arcs)
    {
        std::vector<int> uf(n);
        for (int c = 0; c < n; ++c) uf[c] = c;
        auto find = [&](int a) { while (uf[a] != a) a = uf[a] = uf[uf[a]]; return a; };
        for (int a = 1; a <= 2 * n; ++a)
            uf[find(ends[a][0].crossing)] = find(ends[a][1].crossing);
        int r0 = find(0);
        for (int c = 1; c < n; ++c)
            if (find(c) != r0 && !allow_split)
                throw parse_error("diagram is split (pass allow_split to accept)");
        if (pd_in.free_loops > 0 && !allow_split)
            throw parse_error("diagram is split (pass allow_split to accept)");
    }

    // Orientation: boolean b[c] = true when the over-strand head is slot 1.
    // head(slot0)=true, head(slot2)=false, head(slot1)=b, head(slot3)=!b.
    // Each arc needs exactly one head among its two ends.
    enum { UNSET = -1 };
    std::vector<int> b(n, UNSET);
    auto head_state = [&](const ArcEnd& e) -> int {
        // returns: 2 = head, 3 = tail (fixed), or crossing variable encoding:
        // ((c+1)<<2)|0 -> head iff b[c], ((c+1)<<2)|1 -> head iff !b[c]
        switch (e.slot) {
            case 0: return 2;
            case 2: return 3;
            case 1: return ((e.crossing + 1) << 2) | 0;
            default: return ((e.crossing + 1) << 2) | 1;
        }
    };
    // propagate constraints (arc has one head, one tail)
    std::vector<std::vector<std::pair<int, int>>> adj(n);  // c -> (c', parity)
    std::vector<std::pair<int, bool>> forced;              // (c, value)
    for (int a = 1; a <= 2 * n; ++a) {
        int s0 = head_state(ends[a][0]), s1 = head_state(ends[a][1]);
        bool f0 = s0 < 4, f1 = s1 < 4;
        if (f0 && f1) {
            if (s0 == s1)
                throw parse_error("inconsistent orientation at arc " + std::to_string(a));
        } else if (f0 || f1) {
            int fixed = f0 ? s0 : s1, var = f0 ? s1 : s0;
            int c = (var >> 2) - 1, pol = var & 3;
            // var end must be the opposite of the fixed end
            bool var_is_head = (fixed == 3);
            bool val = (pol == 0) ? var_is_head : !var_is_head;
            forced.push_back({c, val});
        } else {
            int c0 = (s0 >> 2) - 1, p0 = s0 & 3, c1 = (s1 >> 2) - 1, p1 = s1 & 3;
            if (c0 == c1) continue;  // over-strand kink, no constraint
            // head(e0) != head(e1):  (b[c0] ^ p0) != (b[c1] ^ p1)
            int parity = 1 ^ p0 ^ p1;  // b[c0] ^ b[c1] must equal this
            adj[c0].push_back({c1, parity});
            adj[c1].push_back({c0, parity});
        }
    }
    std::vector<int> order_seen;
    auto bfs_assign = [&](int c0, bool v0) {
        std::vector<int> stack{c0};
        b[c0] = v0 ? 1 : 0;
        while (!stack.empty()) {
            int c = stack.back();
            stack.pop_back();
            for (auto [c2, par] : adj[c]) {
                int want = b[c] ^ par;
                if (b[c2] == UNSET) {
                    b[c2] = want;
                    stack.push_back(c2);
                } else if (b[c2] != want) {
                    throw parse_error("inconsistent orientation (over-strand cycle)");
                }
            }
        }
    };
    for (auto [c, val] : forced) {
        if (b[c] == UNSET) bfs_assign(c, val);
        else if (b[c] != (val ? 1 : 0))
            throw parse_error("inconsistent orientation (conflicting constraints)");
    }
    // leftover free components (all-over cycles): prefer the assignment where
    // over-strands follow increasing arc labels within their link component
    for (int c = 0; c < n; ++c) {
        if (b[c] != UNSET) continue;
        int lab_in1 = d.pd.x[c][1], lab_in3 = d.pd.x[c][3];
        // successor of label a within its component's sorted label cycle
        auto succ = [&](int a) {
            int cmp = comp[a], best = 0, minl = 0;
            for (int l = a + 1; l <= 2 * n; ++l)
                if (comp[l] == cmp) { best = l; break; }
            if (best) return best;
            for (int l = 1; l <= 2 * n; ++l)
                if (comp[l] == cmp) { minl = l; break; }
            return minl;
        };
        bool v;
        if (succ(lab_in1) == lab_in3) v = true;        // in at slot 1, out at slot 3
        else if (succ(lab_in3) == lab_in1) v = false;  // in at slot 3
        else v = true;
        bfs_assign(c, v);
    }

    // record heads/tails and check 1-regularity of orientation
    d.head.assign(2 * n + 1, ArcEnd{});
    d.tail.assign(2 * n + 1, ArcEnd{});
    std::vector<int> nheads(2 * n + 1, 0), ntails(2 * n + 1, 0);
    for (int c = 0; c < n; ++c) {
        auto mark = [&](int slot, bool is_head) {
            int a = d.pd.x[c][slot];
            if (is_head) { d.head[a] = {c, slot}; nheads[a]++; }
            else { d.tail[a] = {c, slot}; ntails[a]++; }
        };
        mark(0, true);
        mark(2, false);
        mark(1, b[c] == 1);
        mark(3, b[c] != 1);
    }
    for (int a = 1; a <= 2 * n; ++a)
        if (nheads[a] != 1 || ntails[a] != 1)
            throw parse_error("inconsistent orientation at arc " + std::to_string(a));

    // sign: positive when the over-strand head is slot 3 (west, pointing east)
    d.sign.assign(n, 0);
    for (int c = 0; c < n; ++c) {
        d.sign[c] = (b[c] == 1) ? -1 : +1;
        (d.sign[c] > 0 ? d.n_plus : d.n_minus)++;
    }
    return d;
}

inline LinkDiagram parse_pd(const std::string& text, bool allow_split = false) {
    return analyze_pd(parse_pd_text(text), allow_split);
}

// Mirror image: swap over/under at every crossing, keeping the planar shadow.
// The new under-in slot is the old over-in slot; the quadruple is re-read
// counterclockwise from there.
inline LinkDiagram LinkDiagram::mirrored() const {
    PDCode m;
    m.free_loops = pd.free_loops;
    for (int c = 0; c < crossings(); ++c) {
        int over_in = (sign[c] > 0) ? 3 : 1;
        std::array<int, 4> q{};
        for (int k = 0; k < 4; ++k) q[k] = pd.x[c][(over_in + k) & 3];
        m.x.push_back(q);
    }
    return analyze_pd(m, true);
}

// ---------------------------------------------------------------------------
// Faces of the diagram (rotation system = CCW slot order).  Each face is a
// cyclic list of darts; a dart is an arc traversed in one direction, encoded
// as (arc, at_head).  Used by the Reidemeister-move generators.

struct Dart {
    int arc = 0;
    bool to_head = true;  // traversal direction: towards head end
    friend bool operator<(const Dart& a, const Dart& b) {
        return a.arc != b.arc ? a.arc < b.arc : a.to_head < b.to_head;
    }
    friend bool operator==(const Dart& a, const Dart& b) {
        return a.arc == b.arc && a.to_head == b.to_head;
    }
};

inline std::vector<std::vector<Dart>> diagram_faces(const LinkDiagram& d) {
    // end_of(dart) = the ArcEnd the dart runs into; the next dart of the face
    // leaves from the next slot counterclockwise at that crossing.
    const int n = d.crossings();
    std::vector<std::array<ArcEnd, 2>> ends(2 * n + 1);
    for (int c = 0; c < n; ++c)
        for (int s = 0; s < 4; ++s) {
            int a = d.pd.x[c][s];
            if (ends[a][0].crossing < 0) ends[a][0] = {c, s};
            else ends[a][1] = {c, s};
        }
    auto dart_target = [&](Dart t) -> ArcEnd {
        ArcEnd h = d.head[t.arc], ta = d.tail[t.arc];
        return t.to_head ? h : ta;
    };
    auto next_dart = [&](Dart t) -> Dart {
        ArcEnd e = dart_target(t);
        int s2 = (e.slot + 1) & 3;  // turn CCW
        int a2 = d.pd.x[e.crossing][s2];
        ArcEnd from{e.crossing, s2};
        bool to_head = !(d.head[a2] == from);
        return Dart{a2, to_head};
    };
    std::set<Dart> seen;
    std::vector<std::vector<Dart>> faces;
    for (int a = 1; a <= 2 * n; ++a)
        for (int dir = 0; dir < 2; ++dir) {
            Dart t{a, dir == 1};
            if (seen.count(t)) continue;
            std::vector<Dart> face;
            Dart u = t;
            do {
                face.push_back(u);
                seen.insert(u);
                u = next_dart(u);
            } while (!(u == t));
            faces.push_back(std::move(face));
        }
    return faces;
}

} // namespace khs
