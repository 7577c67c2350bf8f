#pragma once

#include "orbigraph/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace orbigraph {

struct InvalidGraph : Error {
    using Error::Error;
};
struct Inconsistent : Error {
    using Error::Error;
};

// Cyclic singular point of type 1/m(1,l).  Regular points are (1,0).
struct SingularType {
    Int m{1};
    Int l{0};

    friend bool operator==(const SingularType& a, const SingularType& b) {
        return a.m == b.m && a.l == b.l;
    }
    friend bool operator<(const SingularType& a, const SingularType& b) {
        return a.m != b.m ? a.m < b.m : a.l < b.l;
    }
    bool regular() const { return m == 1; }
    std::string str() const { return "1/" + m.get_str() + "(1," + l.get_str() + ")"; }
};

bool type_label_valid(const SingularType& t);

enum class VertexKind { Point, Surface };

// A vertex of the multigraph: an isolated fixed point, or a fixed
// orbi-surface ("fat" vertex).
struct Vertex {
    std::string id;
    VertexKind kind = VertexKind::Point;
    // Point: one label, or both 1/m(1,l), 1/m(1,l') when the orbi-weights
    // are equal and l^2 != 1 mod m.  Surface: one label per singular point.
    std::vector<SingularType> types;
    int genus = 0;    // Surface only
    Rational area;    // Surface only, > 0
    Rational moment;

    bool fat() const { return kind == VertexKind::Surface; }
    // Order of the orbifold structure group (points only).
    Int order() const { return types.empty() ? Int(1) : types.front().m; }
};

// Z_k-isotropy orbi-sphere joining the south pole (lower moment) to the
// north pole.  Free invariant spheres (k = 1) are never stored.
struct Edge {
    std::string south;
    std::string north;
    Int k{2};
};

struct Multigraph {
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;

    const Vertex* find(const std::string& id) const;
    Vertex* find(const std::string& id);
    size_t index_of(const std::string& id) const;  // throws InvalidGraph if absent
    std::string fresh_id(const std::string& stem) const;
};

// Derived linearization data at an isolated fixed point: orbi-weights are
// a1/p, a2/p with gcd(a1,a2) = 1 and a1 >= a2.
struct OrbiWeightData {
    Int p{1};
    Int a1{0};
    Int a2{0};
    // Incident edge realizing each direction; empty = free sphere (label 1).
    std::optional<size_t> edge_a1;
    std::optional<size_t> edge_a2;

    Rational w1() const { return Rational(a1, p); }
    Rational w2() const { return Rational(a2, p); }
};

struct ValidationIssue {
    bool warning = false;
    std::string where;
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const {
        for (const auto& i : issues)
            if (!i.warning)
                return false;
        return true;
    }
    std::string str() const;
};

// Shared per-graph derived data: incidence lists, global extrema, weights.
class GraphAnalysis {
  public:
    explicit GraphAnalysis(const Multigraph& g);

    const Multigraph& graph() const { return *g_; }
    const ValidationReport& report() const { return report_; }
    bool ok() const { return report_.ok(); }

    // Incident edges of vertex i as (edge index, vertex-is-south).
    const std::vector<std::pair<size_t, bool>>& incidence(size_t i) const {
        return incidence_[i];
    }
    // Weight data; only meaningful when derivation succeeded for i.
    const std::optional<OrbiWeightData>& weights(size_t i) const { return weights_[i]; }

    bool empty() const { return g_->vertices.empty(); }
    size_t min_vertex() const { return min_idx_; }  // global minimum component
    size_t max_vertex() const { return max_idx_; }
    Rational min_moment() const { return min_moment_; }
    Rational max_moment() const { return max_moment_; }
    bool is_min(size_t i) const { return !empty() && i == min_idx_; }
    bool is_max(size_t i) const { return !empty() && i == max_idx_; }

  private:
    const Multigraph* g_;
    ValidationReport report_;
    std::vector<std::vector<std::pair<size_t, bool>>> incidence_;
    std::vector<std::optional<OrbiWeightData>> weights_;
    size_t min_idx_ = 0, max_idx_ = 0;
    Rational min_moment_, max_moment_;
};

// Orbi-weight data at an isolated vertex; throws Inconsistent/InvalidGraph.
OrbiWeightData derive_weights(const Multigraph& g, const std::string& vertex_id);

ValidationReport validate(const Multigraph& g);

// Deterministic relabeling-invariant normal form; throws InvalidGraph if
// validation fails.
Multigraph canonical_form(const Multigraph& g);

bool is_isomorphic(const Multigraph& a, const Multigraph& b);

}  // namespace orbigraph
