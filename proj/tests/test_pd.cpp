#include <catch2/catch_amalgamated.hpp>

#include "khs/pd.hpp"

using namespace khs;

static const char* TREFOIL = "PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]";

TEST_CASE("trefoil parses with all-negative signs") {
    LinkDiagram d = parse_pd(TREFOIL);
    CHECK(d.crossings() == 3);
    CHECK(d.component_count == 1);
    CHECK(d.n_minus == 3);
    CHECK(d.n_plus == 0);
    CHECK(d.writhe() == -3);
}

TEST_CASE("one-crossing kinks") {
    LinkDiagram pos = parse_pd("PD[X[1,1,2,2]]");
    CHECK(pos.crossings() == 1);
    CHECK(pos.component_count == 1);
    CHECK(pos.writhe() == 1);

    LinkDiagram neg = parse_pd("PD[X[1,2,2,1]]");
    CHECK(neg.writhe() == -1);
}

TEST_CASE("invalid PD codes are rejected") {
    CHECK_THROWS_AS(parse_pd("PD[X[1,2,3,4]]"), parse_error);          // labels once
    CHECK_THROWS_AS(parse_pd("PD[X[1,1,1,2]]"), parse_error);          // label thrice
    CHECK_THROWS_AS(parse_pd("PD[X[1,4,2,5]"), parse_error);           // syntax
    CHECK_THROWS_AS(parse_pd("PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]] x"), parse_error);
    // orientation: arc 1 would need a head at both crossings
    CHECK_THROWS_AS(parse_pd("PD[X[1,2,3,4],X[1,4,3,2]]"), parse_error);
}

TEST_CASE("split diagram flag") {
    // two disjoint kinks
    std::string split = "PD[X[1,1,2,2],X[3,3,4,4]]";
    CHECK_THROWS_AS(parse_pd(split), parse_error);
    LinkDiagram d = parse_pd(split, true);
    CHECK(d.component_count == 2);
}

TEST_CASE("arc labels normalized to 1..2n") {
    LinkDiagram d = parse_pd("PD[X[10,40,20,50],X[30,60,40,10],X[50,20,60,30]]");
    LinkDiagram ref = parse_pd(TREFOIL);
    CHECK(d.pd.x == ref.pd.x);
    CHECK(d.pd.str() == ref.pd.str());
}

TEST_CASE("serialize round trip") {
    LinkDiagram d = parse_pd(TREFOIL);
    LinkDiagram d2 = parse_pd(d.pd.str());
    CHECK(d.pd.x == d2.pd.x);
    CHECK(d.sign == d2.sign);
}

TEST_CASE("mirror flips signs and is an involution on the shadow") {
    LinkDiagram d = parse_pd(TREFOIL);
    LinkDiagram m = d.mirrored();
    CHECK(m.n_plus == 3);
    CHECK(m.n_minus == 0);
    LinkDiagram mm = m.mirrored();
    CHECK(mm.n_minus == 3);
    CHECK(mm.crossings() == 3);
}

TEST_CASE("faces of the trefoil diagram") {
    LinkDiagram d = parse_pd(TREFOIL);
    auto faces = diagram_faces(d);
    // Euler: V - E + F = 2 with V = 3, E = 6 (each arc once... darts/2)
    CHECK(faces.size() == 5);
    size_t darts = 0;
    for (auto& f : faces) darts += f.size();
    CHECK(darts == 12);  // every arc in two faces
}

TEST_CASE("Hopf link from a braid-closure style code") {
    // positive Hopf link: closure of sigma_1^2
    LinkDiagram d = parse_pd("PD[X[2,3,1,4],X[4,1,3,2]]");
    CHECK(d.component_count == 2);
    CHECK(d.crossings() == 2);
    CHECK((d.writhe() == 2 || d.writhe() == -2));
}
