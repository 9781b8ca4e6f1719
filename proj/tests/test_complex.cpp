#include <catch2/catch_amalgamated.hpp>

#include "khs/complex.hpp"

using namespace khs;

namespace {
const IntRing Z;
}

TEST_CASE("attaching one crossing gives the two-term crossing complex") {
    LinkDiagram d = parse_pd("PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]");
    auto cx = TangleComplex<IntRing>::initial(Z);
    cx.attach_crossing(d, 0);
    // negative crossing: heights -1, 0 with shifts -2, -1
    CHECK(cx.hmin == -1);
    CHECK(cx.heights() == 2);
    REQUIRE(cx.objs[0].size() == 1);
    REQUIRE(cx.objs[1].size() == 1);
    CHECK(cx.objs[0][0].qshift == -2);
    CHECK(cx.objs[1][0].qshift == -1);
    CHECK(cx.objs[0][0].sm.points() == 4);
    CHECK(cx.diffs.size() == 1);
    CHECK(cx.diffs[0].size() == 1);
    CHECK(cx.d_squared_is_zero());
}

TEST_CASE("positive kink closes to q + q^-1") {
    LinkDiagram d = parse_pd("PD[X[1,1,2,2]]");
    REQUIRE(d.n_plus == 1);
    auto cx = TangleComplex<IntRing>::initial(Z);
    cx.attach_crossing(d, 0);
    CHECK(cx.d_squared_is_zero());
    cx.deloop();
    CHECK(cx.d_squared_is_zero());
    cx.eliminate();
    CHECK(cx.d_squared_is_zero());
    // the reduced complex is two empty objects at height 0, shifts +-1
    REQUIRE(cx.heights() == 1);
    CHECK(cx.hmin == 0);
    REQUIRE(cx.objs[0].size() == 2);
    std::vector<int> shifts = {cx.objs[0][0].qshift, cx.objs[0][1].qshift};
    std::sort(shifts.begin(), shifts.end());
    CHECK(shifts == std::vector<int>{-1, 1});
}

TEST_CASE("negative kink closes to q + q^-1") {
    LinkDiagram d = parse_pd("PD[X[1,2,2,1]]");
    REQUIRE(d.n_minus == 1);
    auto cx = TangleComplex<IntRing>::initial(Z);
    cx.attach_crossing(d, 0);
    cx.deloop();
    cx.eliminate();
    REQUIRE(cx.heights() == 1);
    CHECK(cx.hmin == 0);
    REQUIRE(cx.objs[0].size() == 2);
    std::vector<int> shifts = {cx.objs[0][0].qshift, cx.objs[0][1].qshift};
    std::sort(shifts.begin(), shifts.end());
    CHECK(shifts == std::vector<int>{-1, 1});
}

TEST_CASE("deloop splits a free loop into two shifted objects") {
    auto cx = TangleComplex<IntRing>::initial(Z, 1);
    cx.deloop();
    REQUIRE(cx.objs[0].size() == 2);
    std::vector<int> shifts = {cx.objs[0][0].qshift, cx.objs[0][1].qshift};
    std::sort(shifts.begin(), shifts.end());
    CHECK(shifts == std::vector<int>{-1, 1});

    // two loops: four summands with shifts (+2, 0, 0, -2)
    auto cx2 = TangleComplex<IntRing>::initial(Z, 2);
    cx2.deloop();
    REQUIRE(cx2.objs[0].size() == 4);
    std::vector<int> s2;
    for (auto& o : cx2.objs[0]) s2.push_back(o.qshift);
    std::sort(s2.begin(), s2.end());
    CHECK(s2 == std::vector<int>{-2, 0, 0, 2});
}

TEST_CASE("elimination contracts an identity two-term complex") {
    // [A --1*id--> A] at heights 0,1
    Smoothing a;
    a.match = {1, 0};
    auto cx = TangleComplex<IntRing>::initial(Z);
    cx.boundary_arcs = {7, 9};
    cx.objs.clear();
    cx.objs.push_back({ChainObject{a, 0}});
    cx.objs.push_back({ChainObject{a, 0}});
    cx.diffs.resize(1);
    cx.diffs[0][{0, 0}] = mor_identity(Z, a);
    size_t removed = cx.eliminate();
    CHECK(removed == 1);
    CHECK(cx.object_count() == 0);
}

TEST_CASE("block elimination matches iterated single eliminations") {
    // two independent identity pairs in one differential; block pass must
    // remove both and leave nothing
    Smoothing a;
    a.match = {1, 0};
    auto cx = TangleComplex<IntRing>::initial(Z);
    cx.boundary_arcs = {7, 9};
    cx.objs.clear();
    cx.objs.push_back({ChainObject{a, 0}, ChainObject{a, 2}});
    cx.objs.push_back({ChainObject{a, 0}, ChainObject{a, 2}});
    cx.diffs.resize(1);
    cx.diffs[0][{0, 0}] = mor_identity(Z, a);
    cx.diffs[0][{1, 1}] = mor_identity(Z, a);
    size_t removed = cx.eliminate();
    CHECK(removed == 2);
    CHECK(cx.object_count() == 0);
    CHECK(cx.entry_count() == 0);
}

TEST_CASE("trefoil: d squared stays zero through the pipeline") {
    LinkDiagram d = parse_pd("PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]");
    auto cx = TangleComplex<IntRing>::initial(Z);
    for (int c = 0; c < 3; ++c) {
        cx.attach_crossing(d, c);
        REQUIRE(cx.d_squared_is_zero());
        cx.deloop();
        REQUIRE(cx.d_squared_is_zero());
        cx.eliminate();
        REQUIRE(cx.d_squared_is_zero());
    }
    // closed: all boundary arcs consumed
    CHECK(cx.boundary_arcs.empty());
}
