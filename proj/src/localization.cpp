#include "orbigraph/localization.hpp"

namespace orbigraph {

namespace {

// 1/(m * l1 * l2) for an isolated vertex with weights a1/p, a2/p:
// m*l1*l2 = m*a1*a2/p^2.
Rational inverse_euler(const Vertex& v, const OrbiWeightData& w) {
    Rational e = Rational(v.order()) * w.w1() * w.w2();
    if (e.is_zero())
        throw InvalidGraph("zero weight at isolated vertex '" + v.id + "'");
    return Rational(Int(1)) / e;
}

int lambda_of(const GraphAnalysis& a, size_t i) {
    return a.is_min(i) ? 1 : -1;
}

GraphAnalysis analyzed(const Multigraph& g) {
    GraphAnalysis a(g);
    if (!a.ok())
        throw InvalidGraph("graph does not validate:\n" + a.report().str());
    return a;
}

const SurfaceNormalData& beta_of(const SurfaceDegrees& betas, const Vertex& v) {
    auto it = betas.find(v.id);
    if (it == betas.end())
        throw InvalidGraph("missing surface degree for fat vertex '" + v.id + "'");
    return it->second;
}

}  // namespace

Rational orbifold_euler_characteristic(const Vertex& fat) {
    Rational chi(Int(2 - 2 * fat.genus));
    for (const auto& t : fat.types)
        chi += Rational(Int(1), t.m) - Rational(Int(1));
    return chi;
}

Rational check_integral_one(const Multigraph& g, const SurfaceDegrees& betas) {
    GraphAnalysis a = analyzed(g);
    Rational acc(0);
    for (size_t i = 0; i < g.vertices.size(); ++i) {
        const Vertex& v = g.vertices[i];
        if (v.fat())
            acc -= beta_of(betas, v).beta;
        else
            acc += inverse_euler(v, *a.weights(i));
    }
    return acc;
}

Rational check_integral_omega(const Multigraph& g, const SurfaceDegrees& betas) {
    GraphAnalysis a = analyzed(g);
    Rational acc(0);
    for (size_t i = 0; i < g.vertices.size(); ++i) {
        const Vertex& v = g.vertices[i];
        if (v.fat()) {
            const auto& d = beta_of(betas, v);
            acc += Rational(Int(lambda_of(a, i))) * v.area + d.beta * v.moment;
        } else {
            acc -= v.moment * inverse_euler(v, *a.weights(i));
        }
    }
    return acc;
}

Rational check_integral_c1(const Multigraph& g, const SurfaceDegrees& betas) {
    GraphAnalysis a = analyzed(g);
    Rational acc(0);
    for (size_t i = 0; i < g.vertices.size(); ++i) {
        const Vertex& v = g.vertices[i];
        if (v.fat()) {
            beta_of(betas, v);  // interface check only; the value cancels
            acc += orbifold_euler_characteristic(v) / Rational(Int(lambda_of(a, i)));
        } else {
            const auto& w = *a.weights(i);
            acc += (w.w1() + w.w2()) * inverse_euler(v, w);
        }
    }
    return acc;
}

SurfaceDegrees solve_surface_degrees(const Multigraph& g) {
    GraphAnalysis a = analyzed(g);
    std::vector<size_t> fats;
    for (size_t i = 0; i < g.vertices.size(); ++i)
        if (g.vertices[i].fat())
            fats.push_back(i);
    if (fats.empty())
        throw NoFatVertex("solve_surface_degrees: no fixed orbi-surface");

    Rational s_one(0), s_h(0);
    for (size_t i = 0; i < g.vertices.size(); ++i) {
        const Vertex& v = g.vertices[i];
        if (v.fat())
            continue;
        Rational ie = inverse_euler(v, *a.weights(i));
        s_one += ie;
        s_h += v.moment * ie;
    }

    SurfaceDegrees out;
    if (fats.size() == 2) {
        size_t lo = fats[0], hi = fats[1];
        if (!(g.vertices[lo].moment < g.vertices[hi].moment))
            std::swap(lo, hi);
        const Rational hmin = g.vertices[lo].moment;
        const Rational hmax = g.vertices[hi].moment;
        // [hmin hmax; 1 1] [b-; b+] = [area+ - area- + s_h; s_one]
        Rational rhs1 = g.vertices[hi].area - g.vertices[lo].area + s_h;
        Rational det = hmin - hmax;  // nonzero: hmin < hmax
        Rational bminus = (rhs1 - hmax * s_one) / det;
        Rational bplus = s_one - bminus;
        out[g.vertices[lo].id] = {bminus, 1};
        out[g.vertices[hi].id] = {bplus, -1};
        return out;
    }

    size_t f = fats[0];
    const Vertex& v = g.vertices[f];
    int lam = lambda_of(a, f);
    Rational beta = s_one;  // integral of 1
    // Cross-check against the equivariant symplectic form; moments may be
    // shifted by a constant to avoid H(Sigma) = 0, which changes nothing
    // because the integral-of-1 identity already holds.
    Rational shift = v.moment.is_zero() ? Rational(1) : Rational(0);
    Rational h = v.moment + shift;
    Rational beta2 = (Rational(Int(-lam)) * v.area + s_h + shift * s_one) / h;
    if (beta != beta2)
        throw InconsistentSystem(
            "surface degree mismatch between the two localization identities: " + beta.str() +
            " vs " + beta2.str());
    out[v.id] = {beta, lam};
    return out;
}

}  // namespace orbigraph
