#pragma once

#include "orbigraph/graph.hpp"
#include "orbigraph/seifert.hpp"

namespace orbigraph {

struct InvalidParams : Error {
    using Error::Error;
};

// Weighted projective plane CP^2(p,s,q) with the circle action of weights
// (a,b,c); requires k0 = aq-cp, k1 = bq-cs, k2 = as-bp positive and pairwise
// coprime.  Triangle multigraph with edges k0, k1, k2 and moment labels
// alpha + q*k2*beta/s, alpha, alpha - p*k1*beta/s.
Multigraph gen_wpp(const Int& p, const Int& s, const Int& q, const Int& a, const Int& b,
                   const Int& c, const Rational& alpha, const Rational& beta);

// CP^2(p,s,q) with the k1 = 0 action: fat genus-zero minimum of area A at
// moment alpha carrying the points of orders s and q, isolated maximum of
// order p at alpha + A*q*s/p.
Multigraph gen_wpp_surface(const Int& p, const Int& s, const Int& q, const Rational& alpha,
                           const Rational& area);

// (CP^1 x CP^1)/Z_c with the (m,n)-action: the four-vertex diamond with two
// m-edges and two n-edges.  Requires m >= n >= 1 and the family-A
// compatibility conditions.
Multigraph gen_cp1cp1_quot(const Int& c, const Int& l, const Int& m, const Int& n,
                           const Rational& alpha, const Rational& beta,
                           const Rational& gamma);

// Projectivized plane bundle P(L + C) over an orbi-surface, where the
// circle orbi-bundle of L has the given Seifert invariant: two fat vertices
// of genus g at moments alpha, alpha + s with areas A, A - e*s.
Multigraph gen_ruled(const SeifertInvariant& s, const Rational& fiber_size,
                     const Rational& alpha, const Rational& area);

// The order-4 example with two parallel Z_2-spheres: vertices 1/4(1,3) at
// H = 0, 1/4(1,3) at H = 1/4, 1/2(1,1) at H = 1/8.
Multigraph gen_tsw();

// All catalog graphs used by the regression suites, keyed by name.
std::vector<std::pair<std::string, Multigraph>> catalog_graphs();

}  // namespace orbigraph
