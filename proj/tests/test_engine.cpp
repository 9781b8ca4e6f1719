#include <catch2/catch_amalgamated.hpp>

#include "khs/engine.hpp"

using namespace khs;

namespace {
const IntRing Z;
const RationalRing Q;

TwoVarPoly kh_q(const std::string& pd, bool reorder = true) {
    LinkDiagram d = parse_pd(pd);
    return compute_kh(Q, d, {}, 50, 7, reorder).poly;
}
} // namespace

TEST_CASE("unknots normalize to q + q^-1") {
    TwoVarPoly expect = parse_two_var_poly("q + q^-1");
    CHECK(kh_q("PD[X[1,1,2,2]]") == expect);
    CHECK(kh_q("PD[X[1,2,2,1]]") == expect);
    // 0-crossing unknot
    LinkDiagram d = parse_pd("PD[]");
    CHECK(compute_kh(Q, d).poly == expect);
}

TEST_CASE("left trefoil over Q") {
    TwoVarPoly p = kh_q("PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]");
    CHECK(p == parse_two_var_poly("q^-1 + q^-3 + q^-5 t^-2 + q^-9 t^-3"));
}

TEST_CASE("right trefoil (mirror) over Q and the mirror identity") {
    LinkDiagram d = parse_pd("PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]");
    LinkDiagram m = d.mirrored();
    TwoVarPoly pm = compute_kh(Q, m).poly;
    CHECK(pm == parse_two_var_poly("q + q^3 + q^5 t^2 + q^9 t^3"));
    TwoVarPoly p = compute_kh(Q, d).poly;
    CHECK(pm == p.mirrored());
}

TEST_CASE("trefoil is order independent over all 3! orders") {
    LinkDiagram d = parse_pd("PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]");
    TwoVarPoly expect = parse_two_var_poly("q^-1 + q^-3 + q^-5 t^-2 + q^-9 t^-3");
    std::vector<int> perm = {0, 1, 2};
    do {
        CrossingOrder o;
        o.perm = perm;
        CHECK(compute_kh(Q, d, o).poly == expect);
    } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST_CASE("integral trefoil has Z/2 torsion") {
    LinkDiagram d = parse_pd("PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]");
    KhResult r = compute_kh(Z, d.mirrored());
    // right trefoil: free part q+q^3+q^5t^2+q^9t^3, torsion Z/2 at q^7 t^3
    CHECK(r.poly == parse_two_var_poly("q + q^3 + q^5 t^2 + q^9 t^3"));
    REQUIRE(r.torsion.size() == 1);
    CHECK(r.torsion[0].order == 2);
    CHECK(r.torsion[0].r == 3);
    CHECK(r.torsion[0].j == 7);
}

TEST_CASE("figure-eight-like twist diagrams are mirror symmetric") {
    // closure of (sigma_1 sigma_2^-1)^2: the figure eight knot
    // PD built by hand from the braid closure
    LinkDiagram d = parse_pd("PD[X[4,2,5,1],X[8,6,1,5],X[6,3,7,4],X[2,7,3,8]]");
    TwoVarPoly p = compute_kh(Q, d).poly;
    CHECK(p == p.mirrored());
    CHECK(p.eval11() == 10);  // total rank of the figure eight over Q
}

TEST_CASE("mod-p computations match known trefoil dimensions") {
    LinkDiagram d = parse_pd("PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]").mirrored();
    ModRing f2(2), f3(3);
    // over F2 the Z/2 torsion thickens homology by 2 dimensions
    TwoVarPoly p2 = compute_kh(f2, d).poly;
    CHECK(p2.eval11() == 6);
    TwoVarPoly p3 = compute_kh(f3, d).poly;
    CHECK(p3.eval11() == 4);
}

TEST_CASE("progress reporting emits step lines") {
    LinkDiagram d = parse_pd("PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]");
    std::ostringstream log;
    EngineOptions opt;
    opt.verbose = true;
    opt.log = &log;
    compute_kh(Q, d, opt);
    std::string s = log.str();
    CHECK(s.find("step m=1/3") != std::string::npos);
    CHECK(s.find("girth=") != std::string::npos);
    CHECK(s.find("heights=") != std::string::npos);
    CHECK(s.find("done") != std::string::npos);
}

TEST_CASE("memory budget aborts loudly") {
    LinkDiagram d = parse_pd("PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]");
    EngineOptions opt;
    opt.memory_budget = 1;  // 1 byte: must trip immediately
    CHECK_THROWS_AS(compute_kh(Q, d, opt), budget_exceeded);
}
