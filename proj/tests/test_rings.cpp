#include <catch2/catch_amalgamated.hpp>

#include "khs/rings.hpp"

using namespace khs;

TEST_CASE("integer ring units and overflow") {
    IntRing z;
    CHECK(z.is_unit(1));
    CHECK(z.is_unit(-1));
    CHECK(!z.is_unit(2));
    CHECK(!z.is_unit(0));
    CHECK(z.inv(-1) == -1);
    CHECK(z.mul(3, -4) == -12);
    CHECK_THROWS_AS(z.mul((1LL << 62), 4), overflow_error);
}

TEST_CASE("rationals normalize and invert") {
    RationalRing q;
    auto half = RationalRing::make(2, 4);
    CHECK(half.num == 1);
    CHECK(half.den == 2);
    auto x = q.add(half, RationalRing::make(1, 3));
    CHECK(x == RationalRing::make(5, 6));
    CHECK(q.mul(x, q.inv(x)) == q.one());
    CHECK(q.is_unit(RationalRing::make(-7, 3)));
    CHECK(!q.is_unit(q.zero()));
    CHECK(RationalRing::make(3, -6) == RationalRing::make(-1, 2));
}

TEST_CASE("mod-p arithmetic") {
    ModRing f5(5);
    CHECK(f5.from_int(-3) == 2);
    CHECK(f5.mul(3, 4) == 2);
    CHECK(f5.inv(2) == 3);        // 2*3 = 6 = 1 mod 5
    CHECK(f5.is_unit(4));
    CHECK(!f5.is_unit(0));
    CHECK_THROWS(ModRing(6));
    ModRing f2(2);
    CHECK(f2.add(1, 1) == 0);
    // spec example: 2*identity not invertible over Z, inverse 3 over mod 5
    IntRing z;
    CHECK(!z.is_unit(2));
    CHECK(f5.inv(f5.from_int(2)) == 3);
}
