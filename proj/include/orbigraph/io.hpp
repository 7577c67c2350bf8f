#pragma once

#include "orbigraph/graph.hpp"

#include <iosfwd>
#include <string>

namespace orbigraph {

struct SyntaxError : Error {
    int line;
    SyntaxError(int line_, const std::string& msg)
        : Error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};
struct SemanticError : Error {
    using Error::Error;
};

// "orbigraph v1" document; see README for the record grammar.
Multigraph parse(const std::string& text);
Multigraph parse_stream(std::istream& in);

// Canonical, deterministic serialization (validates first).
std::string emit(const Multigraph& g);

// Graphviz DOT: fat vertices as wide nodes, edge labels k, red moments.
std::string emit_dot(const Multigraph& g);

}  // namespace orbigraph
