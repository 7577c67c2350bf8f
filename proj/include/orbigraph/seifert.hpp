#pragma once

#include "orbigraph/graph.hpp"

namespace orbigraph {

struct NotNegative : Error {
    using Error::Error;
};
struct NotIntegral : Error {
    using Error::Error;
};
struct InvalidEdge : Error {
    using Error::Error;
};

// Seifert invariant (g; b0, (alpha_1,beta_1),...,(alpha_n,beta_n)) of a
// principal S^1-orbi-bundle over an orbi-surface.  Pairs satisfy
// 1 <= beta < alpha and gcd(alpha,beta) = 1; alpha = 1 pairs are elided.
struct SeifertInvariant {
    int genus = 0;
    Int b0{0};
    std::vector<std::pair<Int, Int>> pairs;

    friend bool operator==(const SeifertInvariant& a, const SeifertInvariant& b) {
        return a.genus == b.genus && a.b0 == b.b0 && a.pairs == b.pairs;
    }
    std::string str() const;
};

bool seifert_valid(const SeifertInvariant& s);

// e = b0 + sum beta_i/alpha_i.
Rational euler_class(const SeifertInvariant& s);

// Degree of O_{p,q}(k) over CP^1(p,q): k/(p*q).  Requires gcd(p,q) = 1.
Rational degree_Opq(const Int& p, const Int& q, const Int& k);

// Degree of O_{p,q}(k)/Z_m: k/(p*q*m).  Requires p,q,k pairwise coprime.
Rational degree_quotient(const Int& p, const Int& q, const Int& k, const Int& m);

// Seifert invariant of the circle orbi-bundle of O_{p,q}(k), computed from
// the Bezout normalization n1*p + n2*q = 1, n1 < 0.  p,q,k pairwise coprime
// positive.
SeifertInvariant seifert_of_Opq(const Int& p, const Int& q, const Int& k);

// Degree of the normal orbi-bundle of the isotropy orbi-sphere of an edge,
// (m_minus - m_plus)/c from the transverse pole orbi-weights.
Rational sphere_degree(const Multigraph& g, size_t edge_index);
Rational sphere_degree(const GraphAnalysis& a, size_t edge_index);

// Order of the singular point produced by blowing down a sphere of degree
// d < 0 with pole orders m_s, m_n: m_s * m_n * |d|.
Int blow_down_order(const Rational& degree, const Int& m_s, const Int& m_n);

// Seifert invariant of the circle orbi-bundle of the normal bundle of a
// fixed orbi-surface, reconstructed from the multigraph.
SeifertInvariant fat_vertex_seifert(const Multigraph& g, const std::string& fat_id);

}  // namespace orbigraph
