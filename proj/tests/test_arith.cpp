#include "doctest.h"

#include "orbigraph/rational.hpp"

using namespace orbigraph;

TEST_CASE("gcd basics") {
    CHECK(gcd(12, 8) == 4);
    CHECK(gcd(7, 0) == 7);
    CHECK(gcd(-5, 3) == 1);
    CHECK(gcd(0, 0) == 0);
}

TEST_CASE("mod_inverse") {
    CHECK(mod_inverse(3, 4) == 3);
    CHECK(mod_inverse(1, 7) == 1);
    CHECK(mod_inverse(2, 7) == 4);
    CHECK_THROWS_AS(mod_inverse(2, 4), NotCoprime);
    for (Int m = 2; m <= 40; ++m)
        for (Int a = 1; a < m; ++a) {
            if (gcd(a, m) != 1)
                continue;
            Int ai = mod_inverse(a, m);
            CHECK(mod_floor(a * ai, m) == 1);
            CHECK(mod_inverse(ai, m) == mod_floor(a, m));
        }
}

TEST_CASE("rational arithmetic is exact") {
    Rational a(Int(1), Int(3)), b(Int(1), Int(6));
    CHECK((a + b).str() == "1/2");
    CHECK((a + b - b) == a);
    CHECK((Rational(Int(-4), Int(6))).str() == "-2/3");
    CHECK(Rational(Int(3), Int(-6)).den() == 2);
    CHECK_THROWS_AS(Rational(Int(1), Int(0)), InvalidInput);
    CHECK(parse_rational("-7/21").str() == "-1/3");
    CHECK(parse_rational("5").str() == "5");
    CHECK_THROWS_AS(parse_rational("x/y"), InvalidInput);
    for (long n1 = -6; n1 <= 6; ++n1)
        for (long d1 = 1; d1 <= 5; ++d1)
            for (long n2 = -6; n2 <= 6; ++n2)
                for (long d2 = 1; d2 <= 5; ++d2) {
                    Rational x{Int(n1), Int(d1)}, y{Int(n2), Int(d2)};
                    CHECK(x + y - y == x);
                }
}

TEST_CASE("hj_expand worked example 4/3") {
    HJExpansion e = hj_expand(4, 3);
    REQUIRE(e.coefficients.size() == 3);
    CHECK(e.coefficients == std::vector<Int>{2, 2, 2});
    CHECK(e.remainders == std::vector<Int>{4, 3, 2, 1});
}

TEST_CASE("hj_expand single step and 7/5") {
    HJExpansion e = hj_expand(9, 1);
    CHECK(e.coefficients == std::vector<Int>{9});
    CHECK(e.remainders == std::vector<Int>{9, 1});

    HJExpansion f = hj_expand(7, 5);
    CHECK(f.coefficients == std::vector<Int>{2, 2, 3});
    CHECK(f.remainders == std::vector<Int>{7, 5, 3, 1});
    CHECK(hj_eval(f.coefficients) == Rational(Int(7), Int(5)));
}

TEST_CASE("hj_expand rejects bad input") {
    CHECK_THROWS_AS(hj_expand(4, 2), InvalidInput);
    CHECK_THROWS_AS(hj_expand(3, 3), InvalidInput);
    CHECK_THROWS_AS(hj_expand(3, 0), InvalidInput);
}

TEST_CASE("hj invariants for all coprime pairs up to 60") {
    for (Int m0 = 2; m0 <= 60; ++m0)
        for (Int m1 = 1; m1 < m0; ++m1) {
            if (gcd(m0, m1) != 1)
                continue;
            HJExpansion e = hj_expand(m0, m1);
            CHECK(hj_eval(e.coefficients) == Rational(m0, m1));
            for (const Int& c : e.coefficients)
                CHECK(c >= 2);
            REQUIRE(e.remainders.size() >= 2);
            CHECK(e.coefficients.size() == e.remainders.size() - 1);
            CHECK(e.remainders.front() == m0);
            CHECK(e.remainders.back() == 1);
            // tail: m_{n-1} = c_n * m_n with m_{n+1} read as 0
            CHECK(e.coefficients.back() == e.remainders[e.remainders.size() - 2]);
            for (size_t i = 0; i + 2 < e.remainders.size(); ++i) {
                CHECK(e.remainders[i + 2] ==
                      e.coefficients[i] * e.remainders[i + 1] - e.remainders[i]);
                CHECK(gcd(e.remainders[i], e.remainders[i + 1]) == 1);
                CHECK(e.remainders[i + 1] > e.remainders[i + 2]);
            }
        }
}
