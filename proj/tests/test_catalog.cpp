#include "doctest.h"

#include "orbigraph/algorithms.hpp"
#include "orbigraph/catalog.hpp"

using namespace orbigraph;

TEST_CASE("gen_tsw reproduces the worked example exactly") {
    Multigraph g = gen_tsw();
    REQUIRE(g.vertices.size() == 3);
    REQUIRE(g.edges.size() == 2);
    const Vertex& mn = *g.find("min");
    CHECK(mn.types == std::vector<SingularType>{{4, 3}});
    CHECK(mn.moment == Rational(0));
    const Vertex& mx = *g.find("max");
    CHECK(mx.types == std::vector<SingularType>{{4, 3}});
    CHECK(mx.moment == Rational(Int(1), Int(4)));
    const Vertex& in = *g.find("int");
    CHECK(in.types == std::vector<SingularType>{{2, 1}});
    CHECK(in.moment == Rational(Int(1), Int(8)));
    for (const auto& e : g.edges) {
        CHECK(e.south == "min");
        CHECK(e.north == "max");
        CHECK(e.k == 2);
    }
    CHECK(verify_all(g).pass);
}

TEST_CASE("parallel edges keep multiset semantics") {
    Multigraph g = gen_tsw();
    Multigraph c = canonical_form(g);
    CHECK(c.edges.size() == 2);
    CHECK(c.edges[0].south == c.edges[1].south);
    CHECK(c.edges[0].north == c.edges[1].north);
    CHECK(c.edges[0].k == c.edges[1].k);
}

TEST_CASE("gen_wpp moment ordering and eq. s*k0 = q*k2 + p*k1") {
    Multigraph g = gen_wpp(3, 5, 7, 2, 3, 1, Rational(Int(1), Int(2)), Rational(Int(1), Int(3)));
    CHECK(g.find("F1")->moment > g.find("F2")->moment);
    CHECK(g.find("F2")->moment > g.find("F3")->moment);
    CHECK(verify_all(g).pass);
}

TEST_CASE("gen_wpp rejects bad parameters") {
    CHECK_THROWS_AS(gen_wpp(2, 4, 5, 1, 1, 1, Rational(0), Rational(1)), InvalidParams);
    CHECK_THROWS_AS(gen_wpp(2, 3, 5, 1, 1, 0, Rational(0), Rational(1)), InvalidParams);
    CHECK_THROWS_AS(gen_wpp(1, 1, 1, 2, 1, 0, Rational(0), Rational(0)), InvalidParams);
}

TEST_CASE("gen_wpp smooth CP2") {
    Multigraph g = gen_wpp(1, 1, 1, 2, 1, 0, Rational(0), Rational(1));
    REQUIRE(g.edges.size() == 1);
    CHECK(g.edges[0].k == 2);
    for (const auto& v : g.vertices)
        CHECK(v.order() == 1);
    CHECK(verify_all(g).pass);
}

TEST_CASE("gen_wpp_surface data") {
    Multigraph g = gen_wpp_surface(5, 2, 3, Rational(1), Rational(Int(1), Int(6)));
    const Vertex& s = *g.find("S");
    CHECK(s.genus == 0);
    CHECK(s.area == Rational(Int(1), Int(6)));
    CHECK(s.moment == Rational(1));
    REQUIRE(s.types.size() == 2);
    CHECK(g.find("F1")->moment == Rational(1) + Rational(Int(6), Int(5)) * Rational(Int(1), Int(6)));
    CHECK(verify_all(g).pass);
}

TEST_CASE("gen_cp1cp1_quot rejects tuples violating condition (ii)") {
    CHECK_THROWS_AS(gen_cp1cp1_quot(5, 2, 3, 1, Rational(0), Rational(1), Rational(1)),
                    InvalidParams);
    CHECK_THROWS_AS(gen_cp1cp1_quot(1, 0, 2, 2, Rational(0), Rational(1), Rational(1)),
                    InvalidParams);
}

TEST_CASE("gen_cp1cp1_quot diamond") {
    Multigraph g = gen_cp1cp1_quot(5, 3, 3, 1, Rational(0), Rational(1), Rational(Int(3), Int(2)));
    REQUIRE(g.vertices.size() == 4);
    for (const auto& v : g.vertices)
        CHECK(v.order() == 5);
    CHECK(verify_all(g).pass);
}

TEST_CASE("every catalog graph passes verify_all") {
    for (const auto& [name, g] : catalog_graphs()) {
        CAPTURE(name);
        VerifyReport r = verify_all(g);
        CAPTURE(r.str());
        CHECK(r.pass);
    }
}
