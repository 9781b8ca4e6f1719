#include <catch2/catch_amalgamated.hpp>

#include "khs/laurent.hpp"

using namespace khs;

TEST_CASE("two-variable round trip and canonical print") {
    TwoVarPoly p;
    p.add_term(1, 0, 1);
    p.add_term(-1, 0, 1);
    CHECK(p.str() == "q^-1 + q");
    TwoVarPoly q = parse_two_var_poly(p.str());
    CHECK(q == p);

    // LaTeX-ish input with braces, arbitrary order, repeated monomials
    TwoVarPoly r = parse_two_var_poly("q^{-23} t^{-14} + 2 q^{5}t^{2} + q^5 t^2 - q^5 t^2");
    CHECK(r.coeff(-23, -14) == 1);
    CHECK(r.coeff(5, 2) == 2);
    CHECK(parse_two_var_poly(r.str()) == r);
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_two_var_poly("q^"), parse_error);
    CHECK_THROWS_AS(parse_two_var_poly("3 +"), parse_error);
    CHECK_THROWS_AS(parse_two_var_poly("q 4"), parse_error);
}

TEST_CASE("substitution t = -q^-4 and division by q+q^-1") {
    // unknot: q + q^-1 -> s = 0
    TwoVarPoly unknot = parse_two_var_poly("q + q^-1");
    LaurentPoly s = unknot.subst_t_minus_qinv4();
    LaurentPoly quo = s.div_q_plus_qinv();
    CHECK(quo == LaurentPoly::mono(0, 1));

    // right trefoil: q + q^3 + q^5 t^2 + q^9 t^3 -> q^2
    TwoVarPoly tref = parse_two_var_poly("q + q^3 + q^5 t^2 + q^9 t^3");
    LaurentPoly s3 = tref.subst_t_minus_qinv4();
    // q + q^3 + q^-3 - q^-3 = q + q^3; / (q+q^-1) = q^2
    CHECK(s3.div_q_plus_qinv() == LaurentPoly::mono(2, 1));
}

TEST_CASE("division by 1 + q^2k t") {
    TwoVarPoly f = parse_two_var_poly("q^-1 + q^3 t + 2 q^5 t^2");
    TwoVarPoly prod;
    // f * (1 + q^4 t)
    prod = f + f.shifted(4, 1);
    TwoVarPoly back;
    REQUIRE(prod.divide_by_one_plus_q2kt(2, back));
    CHECK(back == f);

    TwoVarPoly notdiv = parse_two_var_poly("q");
    TwoVarPoly out;
    CHECK_FALSE((notdiv + TwoVarPoly::mono(3, 1, 1)).divide_by_one_plus_q2kt(2, out));
}

TEST_CASE("csv table round trip") {
    TwoVarPoly p = parse_two_var_poly("3 q^-5 t^-1 + q + q^-1 + q^27 t^18");
    std::string csv = two_var_poly_csv(p);
    CHECK(csv.find("l,r,coefficient") == 0);
    CHECK(parse_two_var_poly_csv(csv) == p);
}

TEST_CASE("mirror and rank evaluation") {
    TwoVarPoly tref = parse_two_var_poly("q + q^3 + q^5 t^2 + q^9 t^3");
    TwoVarPoly m = tref.mirrored();
    CHECK(m == parse_two_var_poly("q^-1 + q^-3 + q^-5 t^-2 + q^-9 t^-3"));
    CHECK(tref.eval11() == 4);
}
