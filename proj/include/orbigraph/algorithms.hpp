#pragma once

#include "orbigraph/graph.hpp"
#include "orbigraph/rewrite.hpp"

#include <map>

namespace orbigraph {

struct RewriteResult {
    Multigraph graph;
    std::vector<RewriteRecord> log;
};

// Repeated equivariant blow-ups at a singular point of minimal order until
// no singular point remains.  The per-point order history follows the
// Hirzebruch-Jung remainders of m/l.
RewriteResult desingularize(const Multigraph& g);

// Greedy blow-down of negative spheres (interior-interior first) and of
// genus-zero surfaces with at most two singular points and negative degree.
RewriteResult minimalize(const Multigraph& g);

enum class Family { I, II, III, A, B, C };

std::string to_string(Family f);

struct FamilyTag {
    Family family = Family::A;
    std::map<std::string, Rational> params;
    bool extends_to_toric = true;
    std::string str() const;
};

struct ClassifyResult {
    enum class Kind { Matched, NotMinimal, NoMatch } kind = Kind::NoMatch;
    std::optional<FamilyTag> tag;
    std::string reason;
};

// Pattern-matches a minimal multigraph against the six minimal-model
// families and verifies every compatibility condition exactly.
ClassifyResult classify_minimal(const Multigraph& g);

struct VerifyReport {
    bool pass = false;
    std::vector<std::string> lines;
    std::string str() const;
};

// Aggregate consistency report: validation, the three localization
// identities, per-edge areas, and Seifert integrality at fat vertices.
VerifyReport verify_all(const Multigraph& g);

}  // namespace orbigraph
