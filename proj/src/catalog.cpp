#include "orbigraph/catalog.hpp"

#include <algorithm>

namespace orbigraph {

namespace {

// Type label of a point whose local chart carries the structure-group
// exponents e1, e2 on the directions with circle weights w1, w2.  The "1"
// of 1/m(1,l) goes to the direction with the larger weight; equal weights
// give both labels (or one when l^2 = 1 mod m).
std::vector<SingularType> types_from_chart(const Int& m, Int e1, const Rational& w1, Int e2,
                                           const Rational& w2) {
    if (m == 1)
        return {SingularType{1, 0}};
    if (w2 > w1) {
        std::swap(e1, e2);
        return types_from_chart(m, e1, w2, e2, w1);
    }
    Int l = mod_floor(e2 * mod_inverse(mod_floor(e1, m), m), m);
    if (w1 == w2) {
        Int li = mod_inverse(l, m);
        if (li != l) {
            SingularType t1{m, std::min(l, li)}, t2{m, std::max(l, li)};
            return {t1, t2};
        }
    }
    return {SingularType{m, l}};
}

void add_edge(Multigraph& g, const std::string& south, const std::string& north,
              const Int& k) {
    if (k >= 2)
        g.edges.push_back({south, north, k});
}

}  // namespace

Multigraph gen_wpp(const Int& p, const Int& s, const Int& q, const Int& a, const Int& b,
                   const Int& c, const Rational& alpha, const Rational& beta) {
    if (p < 1 || s < 1 || q < 1 || gcd(p, s) != 1 || gcd(p, q) != 1 || gcd(s, q) != 1)
        throw InvalidParams("gen_wpp: p, s, q must be pairwise coprime positive");
    Int k0 = a * q - c * p;
    Int k1 = b * q - c * s;
    Int k2 = a * s - b * p;
    if (k0 < 1 || k1 < 1 || k2 < 1)
        throw InvalidParams("gen_wpp: k0, k1, k2 must be positive");
    if (gcd(k0, k1) != 1 || gcd(k0, k2) != 1 || gcd(k1, k2) != 1)
        throw InvalidParams("gen_wpp: k0, k1, k2 must be pairwise coprime");
    if (!(beta > Rational(0)))
        throw InvalidParams("gen_wpp: beta must be positive");
    if (s * k0 != q * k2 + p * k1)
        throw InvalidParams("gen_wpp: s*k0 = q*k2 + p*k1 violated (internal)");

    Multigraph g;
    Vertex f1;  // [1:0:0], order p, maximum
    f1.id = "F1";
    f1.types = types_from_chart(p, s, Rational(-k2, p), q, Rational(-k0, p));
    f1.moment = alpha + Rational(q * k2, s) * beta;
    Vertex f2;  // [0:1:0], order s, interior
    f2.id = "F2";
    f2.types = types_from_chart(s, p, Rational(k2, s), q, Rational(-k1, s));
    f2.moment = alpha;
    Vertex f3;  // [0:0:1], order q, minimum
    f3.id = "F3";
    f3.types = types_from_chart(q, p, Rational(k0, q), s, Rational(k1, q));
    f3.moment = alpha - Rational(p * k1, s) * beta;
    g.vertices = {f1, f2, f3};
    add_edge(g, "F3", "F1", k0);
    add_edge(g, "F2", "F1", k2);
    add_edge(g, "F3", "F2", k1);
    return g;
}

Multigraph gen_wpp_surface(const Int& p, const Int& s, const Int& q, const Rational& alpha,
                           const Rational& area) {
    if (p < 1 || s < 1 || q < 1 || gcd(p, s) != 1 || gcd(p, q) != 1 || gcd(s, q) != 1)
        throw InvalidParams("gen_wpp_surface: p, s, q must be pairwise coprime positive");
    if (!(area > Rational(0)))
        throw InvalidParams("gen_wpp_surface: area must be positive");

    Multigraph g;
    Vertex sig;  // {[0:z1:z2]}, minimum
    sig.id = "S";
    sig.kind = VertexKind::Surface;
    sig.genus = 0;
    sig.area = area;
    sig.moment = alpha;
    if (s >= 2)
        sig.types.push_back({s, mod_floor(q * mod_inverse(mod_floor(p, s), s), s)});
    if (q >= 2)
        sig.types.push_back({q, mod_floor(s * mod_inverse(mod_floor(p, q), q), q)});
    std::sort(sig.types.begin(), sig.types.end());

    Vertex f1;  // [1:0:0], maximum of order p
    f1.id = "F1";
    f1.types = types_from_chart(p, s, Rational(-s, p), q, Rational(-q, p));
    f1.moment = alpha + Rational(q * s, p) * area;
    g.vertices = {sig, f1};
    add_edge(g, "S", "F1", s);
    add_edge(g, "S", "F1", q);
    return g;
}

Multigraph gen_cp1cp1_quot(const Int& c, const Int& l, const Int& m, const Int& n,
                           const Rational& alpha, const Rational& beta,
                           const Rational& gamma) {
    if (c < 1 || m < 1 || n < 1 || m < n)
        throw InvalidParams("gen_cp1cp1_quot: need c >= 1 and m >= n >= 1");
    if (!(beta > Rational(0)) || !(gamma > Rational(0)))
        throw InvalidParams("gen_cp1cp1_quot: beta, gamma must be positive");
    Int g0 = gcd(m, n);
    if (c > 1) {
        if (!(l >= 1 && l < c && gcd(l, c) == 1))
            throw InvalidParams("gen_cp1cp1_quot: need 1 <= l < c coprime to c");
        if (mod_floor(c, g0) != 0)
            throw InvalidParams("gen_cp1cp1_quot: gcd(m,n) must divide c");
        if (gcd((m * l + n) / g0, c) != c / g0)
            throw InvalidParams(
                "gen_cp1cp1_quot: effectiveness condition gcd((ml+n)/g, c) = c/g fails");
    } else if (g0 != 1) {
        throw InvalidParams("gen_cp1cp1_quot: c = 1 requires gcd(m,n) = 1");
    }

    auto labels = [&](const Int& label) -> std::vector<SingularType> {
        if (c == 1)
            return {SingularType{1, 0}};
        if (m == n) {
            Int li = mod_inverse(label, c);
            if (li != label)
                return {SingularType{c, std::min(label, li)}, SingularType{c, std::max(label, li)}};
        }
        return {SingularType{c, label}};
    };
    Int lp = c == 1 ? Int(0) : mod_inverse(l, c);

    Multigraph g;
    Vertex v1;  // minimum, type 1/c(1, c-l)
    v1.id = "F1";
    v1.types = labels(c == 1 ? Int(0) : c - l);
    v1.moment = alpha;
    Vertex v2;  // type 1/c(1, l), H = alpha + n*gamma
    v2.id = "F2";
    v2.types = labels(c == 1 ? Int(0) : l);
    v2.moment = alpha + Rational(n) * gamma;
    Vertex v3;  // type 1/c(1, l'), H = alpha + m*beta
    v3.id = "F3";
    v3.types = labels(c == 1 ? Int(0) : lp);
    v3.moment = alpha + Rational(m) * beta;
    Vertex v4;  // maximum, type 1/c(1, c-l')
    v4.id = "F4";
    v4.types = labels(c == 1 ? Int(0) : c - lp);
    v4.moment = alpha + Rational(m) * beta + Rational(n) * gamma;
    g.vertices = {v1, v2, v3, v4};
    add_edge(g, "F1", "F3", m);
    add_edge(g, "F1", "F2", n);
    add_edge(g, "F2", "F4", m);
    add_edge(g, "F3", "F4", n);
    return g;
}

Multigraph gen_ruled(const SeifertInvariant& s, const Rational& fiber_size,
                     const Rational& alpha, const Rational& area) {
    if (!seifert_valid(s))
        throw InvalidParams("gen_ruled: invalid Seifert invariant");
    Rational e = euler_class(s);
    if (e.is_zero())
        throw InvalidParams("gen_ruled: euler class must be nonzero");
    if (!(fiber_size > Rational(0)))
        throw InvalidParams("gen_ruled: fiber size must be positive");
    Rational top_area = area - e * fiber_size;
    if (!(area > Rational(0)) || !(top_area > Rational(0)))
        throw InvalidParams("gen_ruled: both surface areas must be positive");

    Multigraph g;
    Vertex bot, top;
    bot.id = "S-";
    bot.kind = VertexKind::Surface;
    bot.genus = s.genus;
    bot.area = area;
    bot.moment = alpha;
    top.id = "S+";
    top.kind = VertexKind::Surface;
    top.genus = s.genus;
    top.area = top_area;
    top.moment = alpha + fiber_size;
    for (const auto& [mi, li] : s.pairs) {
        bot.types.push_back({mi, mod_inverse(li, mi)});
        top.types.push_back({mi, mi - li});
    }
    std::sort(bot.types.begin(), bot.types.end());
    std::sort(top.types.begin(), top.types.end());
    g.vertices = {bot, top};
    for (const auto& [mi, li] : s.pairs)
        add_edge(g, "S-", "S+", mi);
    return g;
}

Multigraph gen_tsw() {
    Multigraph g;
    Vertex mn, mx, in;
    mn.id = "min";
    mn.types = {SingularType{4, 3}};
    mn.moment = Rational(0);
    mx.id = "max";
    mx.types = {SingularType{4, 3}};
    mx.moment = Rational(Int(1), Int(4));
    in.id = "int";
    in.types = {SingularType{2, 1}};
    in.moment = Rational(Int(1), Int(8));
    g.vertices = {mn, mx, in};
    g.edges.push_back({"min", "max", 2});
    g.edges.push_back({"min", "max", 2});
    return g;
}

std::vector<std::pair<std::string, Multigraph>> catalog_graphs() {
    std::vector<std::pair<std::string, Multigraph>> out;
    out.push_back({"tsw", gen_tsw()});
    out.push_back({"cp2", gen_wpp(1, 1, 1, 2, 1, 0, Rational(0), Rational(1))});
    out.push_back({"wpp(3,5,7)", gen_wpp(3, 5, 7, 2, 3, 1, Rational(Int(1), Int(2)),
                                         Rational(Int(1), Int(3)))});
    out.push_back({"wpp(2,3,5)", gen_wpp(2, 3, 5, 1, 1, 1, Rational(-1), Rational(2))});
    out.push_back({"wpp-surface(5,2,3)",
                   gen_wpp_surface(5, 2, 3, Rational(1), Rational(Int(1), Int(6)))});
    out.push_back({"wpp-surface(1,2,3)",
                   gen_wpp_surface(1, 2, 3, Rational(0), Rational(Int(2), Int(3)))});
    out.push_back({"cp1cp1(5,3,3,1)",
                   gen_cp1cp1_quot(5, 3, 3, 1, Rational(0), Rational(1),
                                   Rational(Int(3), Int(2)))});
    out.push_back({"cp1cp1(1,0,1,1)",
                   gen_cp1cp1_quot(1, 0, 1, 1, Rational(0), Rational(1), Rational(2))});
    out.push_back({"cp1cp1(2,1,3,1)",
                   gen_cp1cp1_quot(2, 1, 3, 1, Rational(0), Rational(2), Rational(1))});
    {
        SeifertInvariant s;
        s.genus = 1;
        s.b0 = -1;
        s.pairs = {{2, 1}, {3, 2}};
        out.push_back({"ruled(g1)", gen_ruled(s, Rational(2), Rational(0), Rational(3))});
    }
    {
        SeifertInvariant s;
        s.genus = 0;
        s.b0 = -2;
        s.pairs = {{2, 1}, {5, 3}, {5, 2}};
        out.push_back({"ruled(g0,n3)",
                       gen_ruled(s, Rational(1), Rational(Int(1), Int(2)), Rational(4))});
    }
    return out;
}

}  // namespace orbigraph
