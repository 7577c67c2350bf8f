#pragma once

#include "orbigraph/graph.hpp"

#include <optional>

namespace orbigraph {

struct InvalidSpec : Error {
    using Error::Error;
};
struct InadmissibleSize : Error {
    using Error::Error;
};
struct NotBlowDownable : Error {
    using Error::Error;
};
struct NoInverse : Error {
    using Error::Error;
};
struct Ambiguous : Error {
    using Error::Error;
};

enum class Variant { P1, P2 };
enum class RewriteCase { I, II, III, IV };

std::string to_string(Variant v);
std::string to_string(RewriteCase c);

// Equivariant weighted blow-up at one singular point.  The target is an
// isolated vertex (type_index selects the stored label) or a fat vertex
// (type_index selects the singular point; -1 targets a regular point on the
// surface, the WBU(1,1,0,k,1) degeneration).
struct BlowUpSpec {
    std::string vertex;
    int type_index = 0;
    Variant variant = Variant::P1;
    Int b1{1};
    Int b2{1};
    std::optional<Rational> epsilon;  // default: half of the admissible bound
};

struct RewriteRecord {
    BlowUpSpec spec;
    RewriteCase rewrite_case = RewriteCase::I;
    bool at_max = false;  // upside-down orientation
    Rational epsilon;
    std::vector<std::string> created;
    std::vector<std::string> removed;

    // Exceptional locus in the post-graph, usable as a blow-down target.
    enum class Handle { EdgeH, PairH, FatH } handle = Handle::PairH;
    std::string locus_south, locus_north;  // EdgeH / PairH
    std::string locus_fat;                 // FatH

    std::string str() const;
};

struct AdmissibleBound {
    bool unbounded = false;
    Rational sup;
};

struct BlowDownTarget {
    enum class Kind { EdgeIndex, Fat, Pair } kind = Kind::EdgeIndex;
    size_t edge_index = 0;
    std::string fat_id;
    std::string pair_south, pair_north;

    static BlowDownTarget edge(size_t i) {
        BlowDownTarget t;
        t.kind = Kind::EdgeIndex;
        t.edge_index = i;
        return t;
    }
    static BlowDownTarget fat(const std::string& id) {
        BlowDownTarget t;
        t.kind = Kind::Fat;
        t.fat_id = id;
        return t;
    }
    static BlowDownTarget pair(const std::string& s, const std::string& n) {
        BlowDownTarget t;
        t.kind = Kind::Pair;
        t.pair_south = s;
        t.pair_north = n;
        return t;
    }
};

BlowDownTarget handle_of(const RewriteRecord& rec);

RewriteCase classify_case(const Multigraph& g, const BlowUpSpec& spec);

// Supremum of admissible sizes (strictly below keeps moments monotone,
// areas positive, and the extrema unique).
AdmissibleBound max_admissible(const Multigraph& g, const BlowUpSpec& spec);

std::pair<Multigraph, RewriteRecord> blow_up(const Multigraph& g, const BlowUpSpec& spec);

// Inverse search: reconstructs the unique pre-graph whose blow-up restores
// g at the target locus.
std::pair<Multigraph, RewriteRecord> blow_down(const Multigraph& g,
                                               const BlowDownTarget& target);

}  // namespace orbigraph
