#include "orbigraph/io.hpp"

#include <sstream>
#include <vector>

namespace orbigraph {

namespace {

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok)
        out.push_back(tok);
    return out;
}

// "key=value" accessor over record tokens.
std::string field(const std::vector<std::string>& toks, const std::string& key, int line,
                  bool required = true) {
    for (const auto& t : toks) {
        if (t.rfind(key + "=", 0) == 0)
            return t.substr(key.size() + 1);
    }
    if (required)
        throw SyntaxError(line, "missing field '" + key + "='");
    return "";
}

Int parse_int(const std::string& s, int line) {
    try {
        return Int(s);
    } catch (const std::invalid_argument&) {
        throw SyntaxError(line, "malformed integer '" + s + "'");
    }
}

Rational parse_q(const std::string& s, int line) {
    try {
        return parse_rational(s);
    } catch (const InvalidInput& e) {
        throw SyntaxError(line, e.what());
    }
}

// "(M1,L1),(M2,L2),..." -> singular types
std::vector<SingularType> parse_sing(const std::string& s, int line) {
    std::vector<SingularType> out;
    size_t i = 0;
    while (i < s.size()) {
        if (s[i] != '(')
            throw SyntaxError(line, "malformed sing= list");
        size_t comma = s.find(',', i + 1);
        size_t close = s.find(')', i + 1);
        if (comma == std::string::npos || close == std::string::npos || comma > close)
            throw SyntaxError(line, "malformed sing= entry");
        SingularType t;
        t.m = parse_int(s.substr(i + 1, comma - i - 1), line);
        t.l = parse_int(s.substr(comma + 1, close - comma - 1), line);
        out.push_back(t);
        i = close + 1;
        if (i < s.size()) {
            if (s[i] != ',')
                throw SyntaxError(line, "malformed sing= separator");
            ++i;
        }
    }
    return out;
}

}  // namespace

Multigraph parse(const std::string& text) {
    std::istringstream is(text);
    return parse_stream(is);
}

Multigraph parse_stream(std::istream& in) {
    Multigraph g;
    std::string raw;
    int line = 0;
    bool saw_header = false;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = raw;
        auto hash = s.find('#');
        if (hash != std::string::npos)
            s = s.substr(0, hash);
        auto toks = split_ws(s);
        if (toks.empty())
            continue;
        if (!saw_header) {
            if (toks.size() != 2 || toks[0] != "orbigraph" || toks[1] != "v1")
                throw SyntaxError(line, "expected header 'orbigraph v1'");
            saw_header = true;
            continue;
        }
        if (toks[0] == "vertex") {
            if (toks.size() < 3)
                throw SyntaxError(line, "vertex needs an id and a kind");
            Vertex v;
            v.id = toks[1];
            if (g.find(v.id))
                throw SemanticError("duplicate vertex id '" + v.id + "'");
            const std::string& kind = toks[2];
            if (kind == "point") {
                v.kind = VertexKind::Point;
                Int m = parse_int(field(toks, "m", line), line);
                Int l = parse_int(field(toks, "l", line), line);
                v.types.push_back({m, l});
                std::string l2 = field(toks, "l2", line, false);
                if (!l2.empty())
                    v.types.push_back({m, parse_int(l2, line)});
                v.moment = parse_q(field(toks, "H", line), line);
            } else if (kind == "surface") {
                v.kind = VertexKind::Surface;
                v.genus = (int)parse_int(field(toks, "g", line), line).get_si();
                v.area = parse_q(field(toks, "area", line), line);
                v.moment = parse_q(field(toks, "H", line), line);
                std::string sing = field(toks, "sing", line, false);
                if (!sing.empty())
                    v.types = parse_sing(sing, line);
            } else {
                throw SyntaxError(line, "vertex kind must be 'point' or 'surface'");
            }
            g.vertices.push_back(v);
        } else if (toks[0] == "edge") {
            if (toks.size() < 4)
                throw SyntaxError(line, "edge needs SOUTH NORTH k=K");
            Edge e;
            e.south = toks[1];
            e.north = toks[2];
            e.k = parse_int(field(toks, "k", line), line);
            if (!g.find(e.south))
                throw SemanticError("edge references unknown vertex '" + e.south + "'");
            if (!g.find(e.north))
                throw SemanticError("edge references unknown vertex '" + e.north + "'");
            g.edges.push_back(e);
        } else {
            throw SyntaxError(line, "unknown record '" + toks[0] + "'");
        }
    }
    if (!saw_header)
        throw SyntaxError(line, "empty document; expected header 'orbigraph v1'");
    return g;
}

std::string emit(const Multigraph& g) {
    Multigraph c = canonical_form(g);
    std::ostringstream os;
    os << "orbigraph v1\n";
    for (const auto& v : c.vertices) {
        if (!v.fat()) {
            os << "vertex " << v.id << " point m=" << v.types[0].m.get_str()
               << " l=" << v.types[0].l.get_str();
            if (v.types.size() == 2)
                os << " l2=" << v.types[1].l.get_str();
            os << " H=" << v.moment.str() << "\n";
        } else {
            os << "vertex " << v.id << " surface g=" << v.genus << " area=" << v.area.str()
               << " H=" << v.moment.str();
            if (!v.types.empty()) {
                os << " sing=";
                for (size_t i = 0; i < v.types.size(); ++i)
                    os << (i ? "," : "") << "(" << v.types[i].m.get_str() << ","
                       << v.types[i].l.get_str() << ")";
            }
            os << "\n";
        }
    }
    for (const auto& e : c.edges)
        os << "edge " << e.south << " " << e.north << " k=" << e.k.get_str() << "\n";
    return os.str();
}

std::string emit_dot(const Multigraph& g) {
    Multigraph c = canonical_form(g);
    std::ostringstream os;
    os << "digraph orbigraph {\n";
    os << "  rankdir=BT;\n";
    os << "  node [shape=circle];\n";
    for (const auto& v : c.vertices) {
        os << "  " << v.id << " [";
        std::string types;
        for (size_t i = 0; i < v.types.size(); ++i)
            types += (i ? ", " : "") + v.types[i].str();
        if (v.fat()) {
            os << "shape=ellipse, width=1.1, penwidth=3, label=\"" << types
               << (types.empty() ? "" : "\\n") << "g=" << v.genus << ", A=" << v.area.str()
               << "\\n";
        } else {
            os << "label=\"" << types << "\\n";
        }
        os << "H=" << v.moment.str() << "\", fontcolor=black, xlabel=<<font color=\"red\">"
           << v.moment.str() << "</font>>];\n";
    }
    for (const auto& e : c.edges)
        os << "  " << e.south << " -> " << e.north << " [label=\"" << e.k.get_str()
           << "\", arrowhead=none];\n";
    os << "}\n";
    return os.str();
}

}  // namespace orbigraph
