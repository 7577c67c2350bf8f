#include "doctest.h"

#include "orbigraph/catalog.hpp"
#include "orbigraph/seifert.hpp"

using namespace orbigraph;

TEST_CASE("euler class") {
    SeifertInvariant s;
    s.b0 = -1;
    s.pairs = {{2, 1}, {2, 1}};
    CHECK(euler_class(s) == Rational(0));

    s.b0 = 0;
    s.pairs = {{2, 1}, {3, 1}};
    CHECK(euler_class(s) == Rational(Int(5), Int(6)));

    s.b0 = 7;
    s.pairs.clear();
    CHECK(euler_class(s) == Rational(7));
}

TEST_CASE("bundle degrees") {
    CHECK(degree_Opq(1, 1, 4) == Rational(4));
    CHECK(degree_Opq(2, 3, 5) == Rational(Int(5), Int(6)));
    CHECK(degree_Opq(3, 5, 0) == Rational(0));
    CHECK_THROWS_AS(degree_Opq(2, 4, 1), NotCoprime);

    CHECK(degree_quotient(2, 3, 5, 1) == Rational(Int(5), Int(6)));
    CHECK(degree_quotient(3, 5, 7, 11) == Rational(Int(7), Int(165)));
    CHECK_THROWS_AS(degree_quotient(2, 3, 6, 5), NotCoprime);
    for (Int p = 1; p <= 6; ++p)
        for (Int q = 1; q <= 6; ++q)
            for (Int k = 1; k <= 6; ++k) {
                if (gcd(p, q) != 1 || gcd(p, k) != 1 || gcd(q, k) != 1)
                    continue;
                for (Int m = 1; m <= 5; ++m)
                    CHECK(degree_quotient(p, q, k, m) * Rational(m) == degree_Opq(p, q, k));
            }
}

TEST_CASE("seifert_of_Opq worked example") {
    SeifertInvariant s = seifert_of_Opq(2, 3, 5);
    CHECK(s.b0 == 0);
    REQUIRE(s.pairs.size() == 2);
    CHECK(s.pairs[0] == std::pair<Int, Int>{2, 1});
    CHECK(s.pairs[1] == std::pair<Int, Int>{3, 1});

    SeifertInvariant t = seifert_of_Opq(1, 1, 4);
    CHECK(t.b0 == 4);
    CHECK(t.pairs.empty());
}

TEST_CASE("seifert_of_Opq euler oracle, all triples up to 20") {
    for (Int p = 1; p <= 20; ++p)
        for (Int q = 1; q <= 20; ++q)
            for (Int k = 1; k <= 20; ++k) {
                if (gcd(p, q) != 1 || gcd(p, k) != 1 || gcd(q, k) != 1)
                    continue;
                SeifertInvariant s = seifert_of_Opq(p, q, k);
                CHECK(seifert_valid(s));
                CHECK(euler_class(s) == degree_Opq(p, q, k));
            }
}

TEST_CASE("sphere degree on the smooth projective plane") {
    Multigraph g = gen_wpp(1, 1, 1, 2, 1, 0, Rational(0), Rational(1));
    REQUIRE(g.edges.size() == 1);
    CHECK(sphere_degree(g, 0) == Rational(1));
}

TEST_CASE("sphere degree reproduces s/(p*q) on weighted projective planes") {
    // (3,5,7) with a=2,b=3,c=1: k0=11, k1=16, k2=1
    Multigraph g = gen_wpp(3, 5, 7, 2, 3, 1, Rational(0), Rational(1));
    bool saw_extremal = false;
    for (size_t e = 0; e < g.edges.size(); ++e) {
        const Edge& ed = g.edges[e];
        if (ed.south == "F3" && ed.north == "F1") {
            CHECK(sphere_degree(g, e) == degree_Opq(3, 7, 5));
            saw_extremal = true;
        }
    }
    CHECK(saw_extremal);
}

TEST_CASE("figure-A spheres have positive degree (minimal)") {
    Multigraph g = gen_tsw();
    CHECK(sphere_degree(g, 0) == Rational(Int(1), Int(2)));
    CHECK(sphere_degree(g, 1) == Rational(Int(1), Int(2)));
}

TEST_CASE("blow_down_order") {
    CHECK(blow_down_order(Rational(Int(-1), Int(2)), 2, 2) == 2);
    CHECK_THROWS_AS(blow_down_order(Rational(Int(1), Int(3)), 3, 1), NotNegative);
    CHECK_THROWS_AS(blow_down_order(Rational(Int(-1), Int(5)), 2, 2), NotIntegral);
}

TEST_CASE("fat vertex seifert data") {
    // one fat minimum: CP^2(5,2,3) with k1=0; normal bundle O_{2,3}(5)
    Multigraph g = gen_wpp_surface(5, 2, 3, Rational(1), Rational(Int(1), Int(6)));
    SeifertInvariant s = fat_vertex_seifert(g, "S");
    CHECK(euler_class(s) == Rational(Int(5), Int(6)));
    SeifertInvariant t = seifert_of_Opq(2, 3, 5);
    CHECK(s.genus == 0);
    CHECK(s.b0 == t.b0);
    CHECK(s.pairs == t.pairs);
}

TEST_CASE("ruled catalog graph returns its defining seifert invariant") {
    SeifertInvariant s;
    s.genus = 1;
    s.b0 = -1;
    s.pairs = {{2, 1}, {3, 2}};
    Multigraph g = gen_ruled(s, Rational(2), Rational(0), Rational(3));
    SeifertInvariant back = fat_vertex_seifert(g, "S-");
    CHECK(back == s);
}

TEST_CASE("smooth fixed sphere with beta=-2") {
    SeifertInvariant s;
    s.b0 = -2;
    Multigraph g = gen_ruled(s, Rational(1), Rational(0), Rational(5));
    SeifertInvariant bot = fat_vertex_seifert(g, "S-");
    CHECK(bot.b0 == -2);
    CHECK(bot.pairs.empty());
}
