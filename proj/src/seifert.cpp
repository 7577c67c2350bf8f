#include "orbigraph/seifert.hpp"

#include "orbigraph/localization.hpp"

#include <algorithm>
#include <sstream>

namespace orbigraph {

std::string SeifertInvariant::str() const {
    std::ostringstream os;
    os << "(" << genus << "; " << b0.get_str();
    for (const auto& [a, b] : pairs)
        os << ", (" << a.get_str() << "," << b.get_str() << ")";
    os << ")";
    return os.str();
}

bool seifert_valid(const SeifertInvariant& s) {
    if (s.genus < 0)
        return false;
    for (const auto& [a, b] : s.pairs)
        if (!(a >= 2 && b >= 1 && b < a && gcd(a, b) == 1))
            return false;
    return true;
}

Rational euler_class(const SeifertInvariant& s) {
    Rational e(s.b0);
    for (const auto& [a, b] : s.pairs)
        e += Rational(b, a);
    return e;
}

Rational degree_Opq(const Int& p, const Int& q, const Int& k) {
    if (p < 1 || q < 1 || gcd(p, q) != 1)
        throw NotCoprime("degree_Opq: p, q must be coprime positive");
    return Rational(k, p * q);
}

Rational degree_quotient(const Int& p, const Int& q, const Int& k, const Int& m) {
    if (p < 1 || q < 1 || m < 1)
        throw NotCoprime("degree_quotient: arguments must be positive");
    if (gcd(p, q) != 1 || gcd(p, k) != 1 || gcd(q, k) != 1)
        throw NotCoprime("degree_quotient: p, q, k must be pairwise coprime");
    return Rational(k, p * q * m);
}

SeifertInvariant seifert_of_Opq(const Int& p, const Int& q, const Int& k) {
    if (p < 1 || q < 1 || k < 1 || gcd(p, q) != 1 || gcd(p, k) != 1 || gcd(q, k) != 1)
        throw NotCoprime("seifert_of_Opq: p, q, k must be pairwise coprime positive");

    // Bezout pair n1*p + n2*q = 1 with |n1| < q, |n2| < p and n1 < 0.  When
    // the natural solution has n2 < 0, the roles of p and q are swapped and
    // the output pairs transposed.
    auto build = [](const Int& P, const Int& Q, const Int& K, bool swapped) {
        SeifertInvariant s;
        Int n1 = mod_floor(mod_inverse(P, Q), Q) - Q;  // negative representative
        Int n2 = (1 - n1 * P) / Q;
        Int beta = n2 * K;
        Int alpha = -n1 * K;
        std::vector<std::pair<Int, Int>> pq_pairs;
        if (P >= 2) {
            Int lp = mod_floor(beta, P);
            pq_pairs.push_back({P, lp});
        }
        if (Q >= 2) {
            Int lq = Q - mod_floor(alpha, Q);
            pq_pairs.push_back({Q, lq});
        }
        if (swapped)
            std::reverse(pq_pairs.begin(), pq_pairs.end());
        s.pairs = pq_pairs;
        Rational b0 = Rational(K, P * Q);
        for (const auto& [a, b] : s.pairs)
            b0 -= Rational(b, a);
        if (!b0.is_integer())
            throw Error("seifert_of_Opq: non-integral b0 (internal)");
        s.b0 = b0.num();
        return s;
    };

    if (p == 1 && q == 1) {
        SeifertInvariant s;
        s.b0 = k;
        return s;
    }
    if (q == 1)
        return build(q, p, k, true);  // natural n1 would attach to q; swap roles
    if (p == 1)
        return build(p, q, k, false);
    return build(p, q, k, false);
}

Rational sphere_degree(const GraphAnalysis& a, size_t edge_index) {
    const Multigraph& g = a.graph();
    if (edge_index >= g.edges.size())
        throw InvalidEdge("sphere_degree: edge index out of range");
    if (!a.ok())
        throw InvalidGraph("sphere_degree: graph does not validate:\n" + a.report().str());
    const Edge& e = g.edges[edge_index];

    auto transverse = [&](const std::string& vid) -> Rational {
        size_t i = g.index_of(vid);
        const Vertex& v = g.vertices[i];
        if (v.fat())
            return Rational(0);
        const OrbiWeightData& w = *a.weights(i);
        if (w.edge_a1 && *w.edge_a1 == edge_index)
            return w.w2();
        if (w.edge_a2 && *w.edge_a2 == edge_index)
            return w.w1();
        throw InvalidEdge("sphere_degree: edge is not incident to vertex '" + vid + "'");
    };

    Rational m_minus = transverse(e.south);
    Rational m_plus = transverse(e.north);
    return (m_minus - m_plus) / Rational(e.k);
}

Rational sphere_degree(const Multigraph& g, size_t edge_index) {
    GraphAnalysis a(g);
    return sphere_degree(a, edge_index);
}

Int blow_down_order(const Rational& degree, const Int& m_s, const Int& m_n) {
    if (!(degree < Rational(0)))
        throw NotNegative("blow_down_order: degree is non-negative");
    Rational ord = Rational(m_s * m_n) * degree.abs();
    if (!ord.is_integer())
        throw NotIntegral("blow_down_order: m_s*m_n*|deg| = " + ord.str() +
                          " is not an integer");
    return ord.num();
}

SeifertInvariant fat_vertex_seifert(const Multigraph& g, const std::string& fat_id) {
    size_t i = g.index_of(fat_id);
    const Vertex& v = g.vertices[i];
    if (!v.fat())
        throw InvalidGraph("fat_vertex_seifert: '" + fat_id + "' is not a fat vertex");
    GraphAnalysis a(g);
    if (!a.ok())
        throw InvalidGraph("fat_vertex_seifert: graph does not validate:\n" +
                           a.report().str());
    SurfaceDegrees degs = solve_surface_degrees(g);
    const Rational beta = degs.at(fat_id).beta;

    SeifertInvariant s;
    s.genus = v.genus;
    for (const auto& t : v.types) {
        Int b = a.is_min(i) ? mod_inverse(t.l, t.m) : t.l;
        s.pairs.push_back({t.m, b});
    }
    std::sort(s.pairs.begin(), s.pairs.end());
    Rational b0 = beta;
    for (const auto& [al, be] : s.pairs)
        b0 -= Rational(be, al);
    if (!b0.is_integer())
        throw NotIntegral("fat_vertex_seifert: b0 = " + b0.str() + " is not an integer");
    s.b0 = b0.num();
    return s;
}

}  // namespace orbigraph
