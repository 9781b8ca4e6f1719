#pragma once

// Arithmetic in the dotted cobordism category over a pluggable coefficient
// ring.  Objects are crossingless tangles (Smoothing): a fixed-point-free
// involution on boundary points plus a count of closed loops.  Morphisms are
// linear combinations of dotted surfaces in canonical form: every connected
// component has genus 0 and at most one dot, enforced by the relations
//
//   sphere = 0,  dotted sphere = 1,  two dots on a component = 0,
//   genus-g component = 2^g * (genus 0, +g dots).
//
// A component is encoded by the set of boundary circles it carries; circles
// are enumerated canonically from the source/target matchings, so equality of
// morphisms is syntactic.

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "rings.hpp"

namespace khs {

// ---------------------------------------------------------------------------

struct Smoothing {
    std::vector<int16_t> match;  // match[p] = partner of boundary point p
    int16_t nloops = 0;          // closed loops (removed by delooping before storage)

    int points() const { return (int)match.size(); }

    static Smoothing empty(int loops = 0) {
        Smoothing s;
        s.nloops = (int16_t)loops;
        return s;
    }

    void check() const {
        for (int p = 0; p < points(); ++p) {
            if (match[p] < 0 || match[p] >= points() || match[p] == p ||
                match[match[p]] != p)
                throw std::logic_error("invalid smoothing matching");
        }
    }

    friend bool operator==(const Smoothing& a, const Smoothing& b) {
        return a.nloops == b.nloops && a.match == b.match;
    }
    friend bool operator<(const Smoothing& a, const Smoothing& b) {
        if (a.nloops != b.nloops) return a.nloops < b.nloops;
        return a.match < b.match;
    }

    std::string str() const {
        std::string s = "(";
        for (int p = 0; p < points(); ++p) {
            if (p) s += " ";
            s += std::to_string(match[p]);
        }
        s += ")";
        if (nloops) s += "+" + std::to_string(nloops) + "o";
        return s;
    }
};

// Canonical circle enumeration for cobordisms s -> t.  Point circles come
// first, ordered by their minimal point; then the source loops, then the
// target loops.
struct CircleIndex {
    std::vector<int> point_cid;  // per point
    int n_point = 0;
    int src_base = 0, tgt_base = 0, total = 0;

    int src_loop(int i) const { return src_base + i; }
    int tgt_loop(int i) const { return tgt_base + i; }
};

inline CircleIndex circles_of(const Smoothing& s, const Smoothing& t) {
    assert(s.points() == t.points());
    const int n = s.points();
    CircleIndex ci;
    ci.point_cid.assign(n, -1);
    int cid = 0;
    for (int p0 = 0; p0 < n; ++p0) {
        if (ci.point_cid[p0] >= 0) continue;
        int p = p0;
        while (true) {
            ci.point_cid[p] = cid;
            int q = s.match[p];
            ci.point_cid[q] = cid;
            p = t.match[q];
            if (p == p0) break;
        }
        ++cid;
    }
    ci.n_point = cid;
    ci.src_base = cid;
    ci.tgt_base = cid + s.nloops;
    ci.total = cid + s.nloops + t.nloops;
    return ci;
}

// ---------------------------------------------------------------------------

struct Cobordism {
    std::vector<uint8_t> comp;  // circle -> component id, first-occurrence order
    std::vector<uint8_t> dots;  // per component, 0 or 1

    int components() const { return (int)dots.size(); }

    friend bool operator==(const Cobordism& a, const Cobordism& b) {
        return a.comp == b.comp && a.dots == b.dots;
    }
    friend bool operator<(const Cobordism& a, const Cobordism& b) {
        if (a.comp != b.comp) return a.comp < b.comp;
        return a.dots < b.dots;
    }
};

template <class R>
struct MorLinComb {
    Smoothing src, tgt;
    std::vector<std::pair<Cobordism, typename R::Elem>> terms;  // sorted by Cobordism

    bool is_zero() const { return terms.empty(); }
};

namespace cob_detail {

// Renumber a raw (circle -> arbitrary component label) map into canonical
// first-occurrence form, with dots per component.  Labels < 0 mark circles
// that vanished (never valid here).
inline Cobordism canonicalize(const std::vector<int>& raw_comp,
                              const std::vector<int>& raw_dots_by_label,
                              int nlabels) {
    Cobordism c;
    c.comp.resize(raw_comp.size());
    std::vector<int> renum(nlabels, -1);
    int next = 0;
    for (size_t i = 0; i < raw_comp.size(); ++i) {
        int l = raw_comp[i];
        if (renum[l] < 0) {
            renum[l] = next++;
            c.dots.push_back((uint8_t)raw_dots_by_label[l]);
        }
        c.comp[i] = (uint8_t)renum[l];
    }
    return c;
}

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(n) {
        for (int i = 0; i < n; ++i) p[i] = i;
    }
    int find(int a) {
        while (p[a] != a) a = p[a] = p[p[a]];
        return a;
    }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

} // namespace cob_detail

template <class R>
void add_term(const R& rc, MorLinComb<R>& m, const Cobordism& c, typename R::Elem k) {
    if (rc.is_zero(k)) return;
    auto it = std::lower_bound(m.terms.begin(), m.terms.end(), c,
                               [](const auto& t, const Cobordism& c2) { return t.first < c2; });
    if (it != m.terms.end() && it->first == c) {
        it->second = rc.add(it->second, k);
        if (rc.is_zero(it->second)) m.terms.erase(it);
    } else {
        m.terms.insert(it, {c, k});
    }
}

template <class R>
MorLinComb<R> mor_zero(const Smoothing& s, const Smoothing& t) {
    return MorLinComb<R>{s, t, {}};
}

template <class R>
MorLinComb<R>& mor_add(const R& rc, MorLinComb<R>& a, const MorLinComb<R>& b) {
    assert(a.src == b.src && a.tgt == b.tgt);
    for (auto& [c, k] : b.terms) add_term(rc, a, c, k);
    return a;
}

template <class R>
void mor_scale(const R& rc, MorLinComb<R>& a, typename R::Elem k) {
    if (rc.is_zero(k)) { a.terms.clear(); return; }
    for (auto& [c, v] : a.terms) v = rc.mul(v, k);
}

template <class R>
void mor_negate(const R& rc, MorLinComb<R>& a) {
    for (auto& [c, v] : a.terms) v = rc.neg(v);
}

// identity cylinder on s (works for smoothings with loops too)
template <class R>
MorLinComb<R> mor_identity(const R& rc, const Smoothing& s) {
    CircleIndex ci = circles_of(s, s);
    Cobordism c;
    c.comp.resize(ci.total);
    // each point circle is its own component; source loop i pairs with target loop i
    for (int i = 0; i < ci.n_point; ++i) c.comp[i] = (uint8_t)i;
    for (int i = 0; i < s.nloops; ++i) {
        c.comp[ci.src_loop(i)] = (uint8_t)(ci.n_point + i);
        c.comp[ci.tgt_loop(i)] = (uint8_t)(ci.n_point + i);
    }
    c.dots.assign(ci.n_point + s.nloops, 0);
    return MorLinComb<R>{s, s, {{c, rc.one()}}};
}

// cap: kill the last loop of s (morphism s -> s minus one loop), a disc with
// an optional dot on the vanishing loop, identity elsewhere
template <class R>
MorLinComb<R> mor_cap(const R& rc, const Smoothing& s, bool dotted) {
    assert(s.nloops >= 1);
    Smoothing t = s;
    t.nloops--;
    CircleIndex ci = circles_of(s, t);
    Cobordism c;
    c.comp.resize(ci.total);
    for (int i = 0; i < ci.n_point; ++i) c.comp[i] = (uint8_t)i;
    int ncomp = ci.n_point;
    for (int i = 0; i < t.nloops; ++i) {  // surviving loops: cylinders
        c.comp[ci.src_loop(i)] = (uint8_t)(ncomp + i);
        c.comp[ci.tgt_loop(i)] = (uint8_t)(ncomp + i);
    }
    ncomp += t.nloops;
    c.comp[ci.src_loop(s.nloops - 1)] = (uint8_t)ncomp;  // the disc
    ncomp++;
    c.dots.assign(ncomp, 0);
    if (dotted) c.dots.back() = 1;
    return MorLinComb<R>{s, t, {{c, rc.one()}}};
}

// cup: create a loop (morphism s -> s plus one loop)
template <class R>
MorLinComb<R> mor_cup(const R& rc, const Smoothing& s, bool dotted) {
    Smoothing t = s;
    t.nloops++;
    CircleIndex ci = circles_of(s, t);
    Cobordism c;
    c.comp.resize(ci.total);
    for (int i = 0; i < ci.n_point; ++i) c.comp[i] = (uint8_t)i;
    int ncomp = ci.n_point;
    for (int i = 0; i < s.nloops; ++i) {
        c.comp[ci.src_loop(i)] = (uint8_t)(ncomp + i);
        c.comp[ci.tgt_loop(i)] = (uint8_t)(ncomp + i);
    }
    ncomp += s.nloops;
    c.comp[ci.tgt_loop(t.nloops - 1)] = (uint8_t)ncomp;
    ncomp++;
    c.dots.assign(ncomp, 0);
    if (dotted) c.dots.back() = 1;
    return MorLinComb<R>{s, t, {{c, rc.one()}}};
}

namespace cob_detail {

// Shared tail of every gluing operation: given merged pieces with Euler
// characteristics, dot counts and their new boundary circles, fold genus into
// coefficient (x 2^g) and dots, evaluate closed pieces, and rebuild the
// canonical component map.  Returns false when the term dies (dots >= 2 or a
// closed component evaluating to zero).
template <class R>
bool normalize_pieces(const R& rc,
                      const std::vector<int>& circle_root,  // new circle -> piece root
                      std::vector<int>& chi_at_root,
                      std::vector<int>& dots_at_root,
                      const std::vector<int>& roots,  // distinct piece roots
                      typename R::Elem& coeff,
                      Cobordism& out) {
    const int ncirc = (int)circle_root.size();
    std::vector<int> beta(chi_at_root.size(), 0);
    for (int i = 0; i < ncirc; ++i) beta[circle_root[i]]++;
    for (int r : roots) {
        int chi = chi_at_root[r], d = dots_at_root[r];
        if (beta[r] == 0) {
            // closed component: genus from chi = 2 - 2g
            if ((2 - chi) % 2 != 0 || chi > 2) throw std::logic_error("bad closed surface chi");
            int g = (2 - chi) / 2;
            if (d + g != 1) return false;  // sphere or >=2 dots: zero
            if (g == 1) coeff = rc.add(coeff, coeff);  // torus = 2
            // dotted sphere = 1: no factor
        } else {
            int g2 = 2 - beta[r] - chi;
            if (g2 < 0 || g2 % 2 != 0) throw std::logic_error("bad surface chi");
            int g = g2 / 2;
            for (int i = 0; i < g; ++i) coeff = rc.add(coeff, coeff);
            d += g;
            if (d >= 2) return false;
            dots_at_root[r] = d;
        }
    }
    // canonical rebuild over the open pieces
    std::vector<int> renum(chi_at_root.size(), -1);
    out.comp.resize(ncirc);
    out.dots.clear();
    int next = 0;
    for (int i = 0; i < ncirc; ++i) {
        int r = circle_root[i];
        if (renum[r] < 0) {
            renum[r] = next++;
            out.dots.push_back((uint8_t)dots_at_root[r]);
        }
        out.comp[i] = (uint8_t)renum[r];
    }
    return true;
}

} // namespace cob_detail

// ---------------------------------------------------------------------------
// Vertical composition: f after g (g: a -> b, f: b -> c).

template <class R>
MorLinComb<R> mor_compose(const R& rc, const MorLinComb<R>& f, const MorLinComb<R>& g) {
    if (!(g.tgt == f.src)) throw std::logic_error("composition boundary mismatch");
    const Smoothing &a = g.src, &b = g.tgt, &c = f.tgt;
    MorLinComb<R> out = mor_zero<R>(a, c);
    if (f.terms.empty() || g.terms.empty()) return out;

    CircleIndex cg = circles_of(a, b);
    CircleIndex cf = circles_of(b, c);
    CircleIndex cr = circles_of(a, c);

    for (auto& [cob_g, k_g] : g.terms) {
        for (auto& [cob_f, k_f] : f.terms) {
            const int ng = cob_g.components(), nf = cob_f.components();
            cob_detail::UnionFind uf(ng + nf);  // f components offset by ng
            std::vector<int> chi(ng + nf, 2), dots(ng + nf, 0), arm(ng + nf, 0);
            for (int i = 0; i < cg.total; ++i) chi[cob_g.comp[i]]--;
            for (int i = 0; i < cf.total; ++i) chi[ng + cob_f.comp[i]]--;
            for (int i = 0; i < ng; ++i) dots[i] = cob_g.dots[i];
            for (int i = 0; i < nf; ++i) dots[ng + i] = cob_f.dots[i];

            // glue along the arcs of b (one interval per arc)
            for (int p = 0; p < b.points(); ++p) {
                if (b.match[p] < p) continue;
                int pg = cob_g.comp[cg.point_cid[p]];
                int pf = ng + cob_f.comp[cf.point_cid[p]];
                int r1 = uf.find(pg), r2 = uf.find(pf);
                if (r1 != r2) {
                    uf.p[r1] = r2;
                    chi[r2] += chi[r1];
                    dots[r2] += dots[r1];
                    arm[r2] += arm[r1];
                }
                arm[uf.find(pf)]++;
            }
            // glue along the loops of b (circles: no chi change)
            for (int i = 0; i < b.nloops; ++i) {
                int pg = cob_g.comp[cg.tgt_loop(i)];
                int pf = ng + cob_f.comp[cf.src_loop(i)];
                int r1 = uf.find(pg), r2 = uf.find(pf);
                if (r1 != r2) {
                    uf.p[r1] = r2;
                    chi[r2] += chi[r1];
                    dots[r2] += dots[r1];
                    arm[r2] += arm[r1];
                }
            }
            // assign result circles to pieces
            std::vector<int> circle_root(cr.total, -1);
            for (int i = 0; i < a.nloops; ++i)
                circle_root[cr.src_loop(i)] = uf.find(cob_g.comp[cg.src_loop(i)]);
            for (int i = 0; i < c.nloops; ++i)
                circle_root[cr.tgt_loop(i)] = uf.find(ng + cob_f.comp[cf.tgt_loop(i)]);
            for (int p = 0; p < a.points(); ++p) {
                int i = cr.point_cid[p];
                if (circle_root[i] < 0)
                    circle_root[i] = uf.find(cob_g.comp[cg.point_cid[p]]);
            }
            // finalize chi at roots and collect them
            std::vector<int> roots;
            std::vector<char> seen(ng + nf, 0);
            for (int i = 0; i < ng + nf; ++i) {
                int r = uf.find(i);
                if (!seen[r]) { seen[r] = 1; roots.push_back(r); }
            }
            for (int r : roots) chi[r] -= arm[r];

            typename R::Elem coeff = rc.mul(k_f, k_g);
            Cobordism cob;
            if (cob_detail::normalize_pieces(rc, circle_root, chi, dots, roots, coeff, cob))
                add_term(rc, out, cob, coeff);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Planar gluing.  glue_points identifies pairs of boundary points of a single
// morphism (self-gluing); mor_juxtapose places two morphisms side by side.
// Attaching a crossing to the growing tangle is juxtapose + glue_points.

template <class R>
MorLinComb<R> mor_juxtapose(const R& rc, const MorLinComb<R>& m1, const MorLinComb<R>& m2) {
    const int n1 = m1.src.points(), n2 = m2.src.points();
    Smoothing src, tgt;
    src.match.resize(n1 + n2);
    tgt.match.resize(n1 + n2);
    for (int p = 0; p < n1; ++p) {
        src.match[p] = m1.src.match[p];
        tgt.match[p] = m1.tgt.match[p];
    }
    for (int p = 0; p < n2; ++p) {
        src.match[n1 + p] = (int16_t)(m2.src.match[p] + n1);
        tgt.match[n1 + p] = (int16_t)(m2.tgt.match[p] + n1);
    }
    src.nloops = (int16_t)(m1.src.nloops + m2.src.nloops);
    tgt.nloops = (int16_t)(m1.tgt.nloops + m2.tgt.nloops);

    CircleIndex c1 = circles_of(m1.src, m1.tgt);
    CircleIndex c2 = circles_of(m2.src, m2.tgt);
    CircleIndex cj = circles_of(src, tgt);
    // circle remaps into the juxtaposed enumeration
    std::vector<int> map1(c1.total), map2(c2.total);
    for (int p = 0; p < n1; ++p) map1[c1.point_cid[p]] = cj.point_cid[p];
    for (int p = 0; p < n2; ++p) map2[c2.point_cid[p]] = cj.point_cid[n1 + p];
    for (int i = 0; i < m1.src.nloops; ++i) map1[c1.src_loop(i)] = cj.src_loop(i);
    for (int i = 0; i < m2.src.nloops; ++i) map2[c2.src_loop(i)] = cj.src_loop(m1.src.nloops + i);
    for (int i = 0; i < m1.tgt.nloops; ++i) map1[c1.tgt_loop(i)] = cj.tgt_loop(i);
    for (int i = 0; i < m2.tgt.nloops; ++i) map2[c2.tgt_loop(i)] = cj.tgt_loop(m1.tgt.nloops + i);

    MorLinComb<R> out = mor_zero<R>(src, tgt);
    for (auto& [cb1, k1] : m1.terms)
        for (auto& [cb2, k2] : m2.terms) {
            const int nc1 = cb1.components();
            std::vector<int> raw(cj.total, -1), dots(nc1 + cb2.components(), 0);
            for (int i = 0; i < c1.total; ++i) raw[map1[i]] = cb1.comp[i];
            for (int i = 0; i < c2.total; ++i) raw[map2[i]] = nc1 + cb2.comp[i];
            for (int i = 0; i < nc1; ++i) dots[i] = cb1.dots[i];
            for (int i = 0; i < cb2.components(); ++i) dots[nc1 + i] = cb2.dots[i];
            add_term(rc, out, cob_detail::canonicalize(raw, dots, nc1 + cb2.components()),
                     rc.mul(k1, k2));
        }
    return out;
}

namespace cob_detail {

// splice a matching through glued pairs; records closed chains as loops
inline void splice_matching(const std::vector<int16_t>& m, const std::vector<int>& partner,
                            const std::vector<int>& newidx, std::vector<int16_t>& out,
                            std::vector<int>& loop_reps) {
    const int n = (int)m.size();
    std::vector<char> visited(n, 0);
    for (int p = 0; p < n; ++p) {
        if (newidx[p] < 0 || visited[p]) continue;
        visited[p] = 1;
        int q = m[p];
        while (partner[q] >= 0) {
            visited[q] = 1;
            q = partner[q];
            visited[q] = 1;
            q = m[q];
        }
        visited[q] = 1;
        out[newidx[p]] = (int16_t)newidx[q];
        out[newidx[q]] = (int16_t)newidx[p];
    }
    for (int p = 0; p < n; ++p) {
        if (newidx[p] >= 0 || visited[p]) continue;
        loop_reps.push_back(p);
        int q = p;
        do {
            visited[q] = 1;
            int r = partner[q];
            visited[r] = 1;
            q = m[r];
        } while (q != p);
    }
}

} // namespace cob_detail

// Identify the given pairs of boundary points of m (gluing bottom arc ends,
// top arc ends and the vertical boundary lines).  Surviving points are
// reindexed in increasing order.
template <class R>
MorLinComb<R> mor_glue_points(const R& rc, const MorLinComb<R>& m,
                              const std::vector<std::pair<int, int>>& pairs) {
    const int n = m.src.points();
    std::vector<int> partner(n, -1);
    for (auto& [p, q] : pairs) {
        if (p == q || partner[p] >= 0 || partner[q] >= 0)
            throw std::logic_error("invalid gluing pairs");
        partner[p] = q;
        partner[q] = p;
    }
    std::vector<int> newidx(n, -1);
    int nnew = 0;
    for (int p = 0; p < n; ++p)
        if (partner[p] < 0) newidx[p] = nnew++;

    Smoothing src, tgt;
    src.match.assign(nnew, -1);
    tgt.match.assign(nnew, -1);
    std::vector<int> src_loop_reps, tgt_loop_reps;
    cob_detail::splice_matching(m.src.match, partner, newidx, src.match, src_loop_reps);
    cob_detail::splice_matching(m.tgt.match, partner, newidx, tgt.match, tgt_loop_reps);
    src.nloops = (int16_t)(m.src.nloops + src_loop_reps.size());
    tgt.nloops = (int16_t)(m.tgt.nloops + tgt_loop_reps.size());

    CircleIndex co = circles_of(m.src, m.tgt);
    CircleIndex cn = circles_of(src, tgt);

    MorLinComb<R> out = mor_zero<R>(src, tgt);
    for (auto& [cob, k] : m.terms) {
        const int nc = cob.components();
        cob_detail::UnionFind uf(nc);
        std::vector<int> chi(nc, 2), dots(nc, 0), arm(nc, 0);
        for (int i = 0; i < co.total; ++i) chi[cob.comp[i]]--;
        for (int i = 0; i < nc; ++i) dots[i] = cob.dots[i];
        for (auto& [p, q] : pairs) {
            int a1 = cob.comp[co.point_cid[p]];
            int a2 = cob.comp[co.point_cid[q]];
            int r1 = uf.find(a1), r2 = uf.find(a2);
            if (r1 != r2) {
                uf.p[r1] = r2;
                chi[r2] += chi[r1];
                dots[r2] += dots[r1];
                arm[r2] += arm[r1];
            }
            arm[uf.find(a2)]++;
        }
        // map new circles to pieces
        std::vector<int> circle_root(cn.total, -1);
        for (int p = 0; p < n; ++p) {
            if (newidx[p] < 0) continue;
            int i = cn.point_cid[newidx[p]];
            if (circle_root[i] < 0)
                circle_root[i] = uf.find(cob.comp[co.point_cid[p]]);
        }
        for (int i = 0; i < m.src.nloops; ++i)
            circle_root[cn.src_loop(i)] = uf.find(cob.comp[co.src_loop(i)]);
        for (size_t i = 0; i < src_loop_reps.size(); ++i)
            circle_root[cn.src_loop(m.src.nloops + (int)i)] =
                uf.find(cob.comp[co.point_cid[src_loop_reps[i]]]);
        for (int i = 0; i < m.tgt.nloops; ++i)
            circle_root[cn.tgt_loop(i)] = uf.find(cob.comp[co.tgt_loop(i)]);
        for (size_t i = 0; i < tgt_loop_reps.size(); ++i)
            circle_root[cn.tgt_loop(m.tgt.nloops + (int)i)] =
                uf.find(cob.comp[co.point_cid[tgt_loop_reps[i]]]);

        std::vector<int> roots;
        std::vector<char> seen(nc, 0);
        for (int i = 0; i < nc; ++i) {
            int r = uf.find(i);
            if (!seen[r]) { seen[r] = 1; roots.push_back(r); }
        }
        for (int r : roots) chi[r] -= arm[r];

        typename R::Elem coeff = k;
        Cobordism cob2;
        if (cob_detail::normalize_pieces(rc, circle_root, chi, dots, roots, coeff, cob2))
            add_term(rc, out, cob2, coeff);
    }
    return out;
}

// ---------------------------------------------------------------------------

// When f is an invertible multiple of the identity cylinder, return the
// inverse coefficient.
template <class R>
bool mor_is_isomorphism(const R& rc, const MorLinComb<R>& f, typename R::Elem& inv_out) {
    if (f.terms.size() != 1) return false;
    if (!(f.src == f.tgt)) return false;
    const Cobordism& c = f.terms[0].first;
    CircleIndex ci = circles_of(f.src, f.tgt);
    if (c.components() != ci.n_point + f.src.nloops) return false;
    for (auto d : c.dots)
        if (d) return false;
    // each point circle alone; src loop i with tgt loop i
    std::vector<int> sz(c.components(), 0);
    for (int i = 0; i < ci.total; ++i) sz[c.comp[i]]++;
    for (int i = 0; i < ci.n_point; ++i)
        if (sz[c.comp[i]] != 1) return false;
    for (int i = 0; i < f.src.nloops; ++i)
        if (c.comp[ci.src_loop(i)] != c.comp[ci.tgt_loop(i)]) return false;
    if (!rc.is_unit(f.terms[0].second)) return false;
    inv_out = rc.inv(f.terms[0].second);
    return true;
}

} // namespace khs
