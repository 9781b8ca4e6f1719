#include <catch2/catch_amalgamated.hpp>

#include "khs/cobordism.hpp"
#include "khs/ordering.hpp"  // SplitMix64 for the randomized associativity test

using namespace khs;

namespace {

const IntRing Z;

Smoothing loops(int n) { return Smoothing::empty(n); }

// morphism between 0-point smoothings given by loop counts, one component
// per explicit circle set
MorLinComb<IntRing> scalar(long long k) {
    MorLinComb<IntRing> m = mor_zero<IntRing>(loops(0), loops(0));
    Cobordism c;  // empty surface
    add_term(Z, m, c, k);
    return m;
}

} // namespace

TEST_CASE("identity composes to itself") {
    Smoothing s;
    s.match = {1, 0, 3, 2};
    auto id = mor_identity(Z, s);
    auto id2 = mor_compose(Z, id, id);
    CHECK(id2.terms == id.terms);

    // saddle: {0-1,2-3} -> {0-3,1-2}
    Smoothing t;
    t.match = {3, 2, 1, 0};
    MorLinComb<IntRing> saddle = mor_zero<IntRing>(s, t);
    {
        Cobordism c;
        c.comp.assign(circles_of(s, t).total, 0);
        c.dots.assign(1, 0);
        add_term(Z, saddle, c, 1);
    }
    auto left = mor_compose(Z, mor_identity(Z, t), saddle);
    auto right = mor_compose(Z, saddle, mor_identity(Z, s));
    CHECK(left.terms == saddle.terms);
    CHECK(right.terms == saddle.terms);
}

TEST_CASE("sphere relations") {
    // cap o cup: closed undotted sphere = 0
    auto cup = mor_cup(Z, loops(0), false);
    auto cap = mor_cap(Z, loops(1), false);
    auto sphere = mor_compose(Z, cap, cup);
    CHECK(sphere.is_zero());

    // dotted sphere = 1 (either dot placement)
    auto s1 = mor_compose(Z, mor_cap(Z, loops(1), true), cup);
    REQUIRE(s1.terms.size() == 1);
    CHECK(s1.terms[0].second == 1);
    CHECK(s1.terms[0].first.components() == 0);

    auto s2 = mor_compose(Z, cap, mor_cup(Z, loops(0), true));
    REQUIRE(s2.terms.size() == 1);
    CHECK(s2.terms[0].second == 1);

    // two dots on the sphere = 0
    auto s3 = mor_compose(Z, mor_cap(Z, loops(1), true), mor_cup(Z, loops(0), true));
    CHECK(s3.is_zero());
}

TEST_CASE("two dots kill a cylinder") {
    // dotted cylinder on a loop, composed with another dotted cylinder
    Smoothing l1 = loops(1);
    auto dotcyl = mor_identity(Z, l1);
    dotcyl.terms[0].first.dots[0] = 1;
    auto twice = mor_compose(Z, dotcyl, dotcyl);
    CHECK(twice.is_zero());
    // one dot survives
    auto once = mor_compose(Z, dotcyl, mor_identity(Z, l1));
    CHECK(once.terms == dotcyl.terms);
}

TEST_CASE("delooping isomorphisms are orthonormal (sphere evaluations)") {
    Smoothing l1 = loops(1);
    // phi+ = dotted cap, phi- = plain cap; psi+ = plain cup, psi- = dotted cup
    auto phi_p = mor_cap(Z, l1, true);
    auto phi_m = mor_cap(Z, l1, false);
    auto psi_p = mor_cup(Z, loops(0), false);
    auto psi_m = mor_cup(Z, loops(0), true);
    CHECK(mor_compose(Z, phi_p, psi_p).terms == scalar(1).terms);
    CHECK(mor_compose(Z, phi_m, psi_m).terms == scalar(1).terms);
    CHECK(mor_compose(Z, phi_p, psi_m).is_zero());
    CHECK(mor_compose(Z, phi_m, psi_p).is_zero());
}

TEST_CASE("closed genus-1 component evaluates to 2") {
    // pair of pants made by self-gluing a saddle, then closed with a bent
    // cylinder and a cap: the resulting closed genus-1 surface is 2
    Smoothing s, t;
    s.match = {1, 0, 3, 2};
    t.match = {3, 2, 1, 0};
    MorLinComb<IntRing> saddle = mor_zero<IntRing>(s, t);
    {
        Cobordism c;
        c.comp.assign(circles_of(s, t).total, 0);
        c.dots.assign(1, 0);
        add_term(Z, saddle, c, 1);
    }
    // glue 0~1 and 2~3: src becomes two loops, tgt one loop
    auto pants = mor_glue_points(Z, saddle, {{0, 1}, {2, 3}});
    REQUIRE(pants.src.nloops == 2);
    REQUIRE(pants.tgt.nloops == 1);
    REQUIRE(pants.terms.size() == 1);
    CHECK(pants.terms[0].first.components() == 1);

    // bent cylinder: empty -> 2 loops, both circles on one component
    MorLinComb<IntRing> bent = mor_zero<IntRing>(loops(0), loops(2));
    {
        Cobordism c;
        c.comp = {0, 0};
        c.dots = {0};
        add_term(Z, bent, c, 1);
    }
    auto torus_open = mor_compose(Z, pants, bent);  // empty -> 1 loop, genus 1
    // normalization: genus folded into coefficient x2 and a dot
    REQUIRE(torus_open.terms.size() == 1);
    CHECK(torus_open.terms[0].second == 2);
    CHECK(torus_open.terms[0].first.dots[0] == 1);

    // closing with a plain cap evaluates the dotted sphere: total 2
    auto closed = mor_compose(Z, mor_cap(Z, loops(1), false), torus_open);
    REQUIRE(closed.terms.size() == 1);
    CHECK(closed.terms[0].second == 2);

    // closing with a dotted cap gives two dots: 0
    auto dead = mor_compose(Z, mor_cap(Z, loops(1), true), torus_open);
    CHECK(dead.is_zero());
}

TEST_CASE("kink self-gluing makes a loop") {
    Smoothing s;
    s.match = {1, 0, 3, 2};
    auto id = mor_identity(Z, s);
    auto glued = mor_glue_points(Z, id, {{0, 1}});
    CHECK(glued.src.points() == 2);
    CHECK(glued.src.nloops == 1);
    CHECK(glued.tgt.nloops == 1);
    REQUIRE(glued.terms.size() == 1);
    // the loop cylinder and the surviving arc cylinder are separate components
    CHECK(glued.terms[0].first.components() == 2);
}

TEST_CASE("is_isomorphism") {
    Smoothing s;
    s.match = {1, 0, 3, 2};
    auto id = mor_identity(Z, s);
    IntRing::Elem inv;
    CHECK(mor_is_isomorphism(Z, id, inv));
    CHECK(inv == 1);

    auto two = id;
    mor_scale(Z, two, 2);
    CHECK_FALSE(mor_is_isomorphism(Z, two, inv));  // 2 not a unit in Z

    ModRing f5(5);
    auto id5 = mor_identity(f5, s);
    mor_scale(f5, id5, f5.from_int(2));
    ModRing::Elem inv5;
    CHECK(mor_is_isomorphism(f5, id5, inv5));
    CHECK(inv5 == 3);

    // a saddle is not an isomorphism
    Smoothing t;
    t.match = {3, 2, 1, 0};
    MorLinComb<IntRing> saddle = mor_zero<IntRing>(s, t);
    Cobordism c;
    c.comp.assign(circles_of(s, t).total, 0);
    c.dots.assign(1, 0);
    add_term(Z, saddle, c, 1);
    CHECK_FALSE(mor_is_isomorphism(Z, saddle, inv));

    // a dotted cylinder is not an isomorphism
    auto dotted = mor_identity(Z, s);
    dotted.terms[0].first.dots[0] = 1;
    CHECK_FALSE(mor_is_isomorphism(Z, dotted, inv));
}

TEST_CASE("composition is associative on random dotted tangle morphisms") {
    // random matchings on 6 points with random component dots; canonical form
    // must agree for (f g) h and f (g h)
    SplitMix64 rng(12345);
    auto random_matching = [&](int n) {
        Smoothing s;
        s.match.assign(n, -1);
        std::vector<int> free;
        for (int i = 0; i < n; ++i) free.push_back(i);
        while (!free.empty()) {
            int a = free[0];
            free.erase(free.begin());
            int k = (int)rng.below(free.size());
            int b = free[k];
            free.erase(free.begin() + k);
            s.match[a] = (int16_t)b;
            s.match[b] = (int16_t)a;
        }
        return s;
    };
    for (int trial = 0; trial < 200; ++trial) {
        Smoothing a = random_matching(6), b = random_matching(6),
                  c = random_matching(6), d = random_matching(6);
        auto mk = [&](const Smoothing& s0, const Smoothing& t0) {
            CircleIndex ci = circles_of(s0, t0);
            MorLinComb<IntRing> m = mor_zero<IntRing>(s0, t0);
            Cobordism cb;
            cb.comp.resize(ci.total);
            // random partition: each circle joins component 0 or its own
            int ncomp = 0;
            std::vector<int> raw(ci.total), dots;
            for (int i = 0; i < ci.total; ++i) {
                if (i > 0 && rng.below(2) == 0) raw[i] = raw[rng.below(i)];
                else raw[i] = ncomp++;
            }
            std::vector<int> dd(ncomp);
            for (int i = 0; i < ncomp; ++i) dd[i] = (int)rng.below(2);
            add_term(Z, m, cob_detail::canonicalize(raw, dd, ncomp), 1 + (long long)rng.below(3));
            return m;
        };
        auto f = mk(c, d), g = mk(b, c), h = mk(a, b);
        auto left = mor_compose(Z, mor_compose(Z, f, g), h);
        auto right = mor_compose(Z, f, mor_compose(Z, g, h));
        REQUIRE(left.terms == right.terms);
    }
}
