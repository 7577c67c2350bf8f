#pragma once

#include "orbigraph/graph.hpp"

#include <map>

namespace orbigraph {

struct NoFatVertex : Error {
    using Error::Error;
};
struct InconsistentSystem : Error {
    using Error::Error;
};

// Normal-bundle data of a fixed orbi-surface: degree beta, and the sign
// lambda of the fiberwise weight (+1 at the minimum, -1 at the maximum).
struct SurfaceNormalData {
    Rational beta;
    int lambda = 1;
};

using SurfaceDegrees = std::map<std::string, SurfaceNormalData>;

// Scalar residue of integrating 1: sum_fat(-beta) + sum_iso 1/(m l1 l2).
Rational check_integral_one(const Multigraph& g, const SurfaceDegrees& betas);

// Residue of the equivariant symplectic form:
// sum_fat(lambda*area + beta*H) - sum_iso H/(m l1 l2).
Rational check_integral_omega(const Multigraph& g, const SurfaceDegrees& betas);

// Residue of the equivariant first Chern class:
// sum_iso (l1+l2)/(m l1 l2) + sum_fat chi_orb/lambda.
Rational check_integral_c1(const Multigraph& g, const SurfaceDegrees& betas);

// Normal-bundle degrees of the fixed orbi-surfaces, solved exactly from the
// localization identities.  Throws NoFatVertex / InconsistentSystem.
SurfaceDegrees solve_surface_degrees(const Multigraph& g);

// Orbifold Euler characteristic 2 - 2g + sum(1/m_i - 1) of a fat vertex.
Rational orbifold_euler_characteristic(const Vertex& fat);

}  // namespace orbigraph
