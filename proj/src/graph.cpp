#include "orbigraph/graph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace orbigraph {

bool type_label_valid(const SingularType& t) {
    if (t.m < 1)
        return false;
    if (t.m == 1)
        return t.l == 0;
    return t.l >= 1 && t.l < t.m && gcd(t.l, t.m) == 1;
}

const Vertex* Multigraph::find(const std::string& id) const {
    for (const auto& v : vertices)
        if (v.id == id)
            return &v;
    return nullptr;
}

Vertex* Multigraph::find(const std::string& id) {
    for (auto& v : vertices)
        if (v.id == id)
            return &v;
    return nullptr;
}

size_t Multigraph::index_of(const std::string& id) const {
    for (size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i].id == id)
            return i;
    throw InvalidGraph("no vertex with id '" + id + "'");
}

std::string Multigraph::fresh_id(const std::string& stem) const {
    for (int n = 0;; ++n) {
        std::string cand = stem + std::to_string(n);
        if (!find(cand))
            return cand;
    }
}

std::string ValidationReport::str() const {
    std::ostringstream os;
    for (const auto& i : issues)
        os << (i.warning ? "warning" : "error") << " [" << i.where << "]: " << i.message << "\n";
    return os.str();
}

namespace {

void issue(ValidationReport& r, const std::string& where, const std::string& msg) {
    r.issues.push_back({false, where, msg});
}

void warn(ValidationReport& r, const std::string& where, const std::string& msg) {
    r.issues.push_back({true, where, msg});
}

}  // namespace

GraphAnalysis::GraphAnalysis(const Multigraph& g) : g_(&g) {
    const size_t n = g.vertices.size();
    incidence_.resize(n);
    weights_.resize(n);

    // Structural phase: ids and edge endpoints.
    std::map<std::string, size_t> idx;
    for (size_t i = 0; i < n; ++i) {
        if (g.vertices[i].id.empty())
            issue(report_, "vertex#" + std::to_string(i), "empty vertex id");
        if (!idx.emplace(g.vertices[i].id, i).second)
            issue(report_, g.vertices[i].id, "duplicate vertex id");
    }
    bool refs_ok = true;
    for (size_t e = 0; e < g.edges.size(); ++e) {
        const Edge& ed = g.edges[e];
        auto s = idx.find(ed.south), t = idx.find(ed.north);
        if (s == idx.end() || t == idx.end()) {
            issue(report_, "edge#" + std::to_string(e), "edge references unknown vertex id");
            refs_ok = false;
            continue;
        }
        if (ed.k < 2)
            issue(report_, "edge#" + std::to_string(e), "edge label k must be >= 2");
        if (!(g.vertices[s->second].moment < g.vertices[t->second].moment))
            issue(report_, "edge#" + std::to_string(e),
                  "moment(south) must be strictly less than moment(north)");
        incidence_[s->second].push_back({e, true});
        incidence_[t->second].push_back({e, false});
    }
    if (!refs_ok)
        return;

    // Label phase.
    for (size_t i = 0; i < n; ++i) {
        const Vertex& v = g.vertices[i];
        const std::string& w = v.id;
        for (const auto& t : v.types)
            if (!type_label_valid(t))
                issue(report_, w, "invalid type label " + t.str());
        if (!v.fat()) {
            if (v.types.empty() || v.types.size() > 2) {
                issue(report_, w, "isolated vertex must carry one or two type labels");
                continue;
            }
            if (v.types.size() == 2) {
                const auto& t0 = v.types[0];
                const auto& t1 = v.types[1];
                if (t0.m != t1.m)
                    issue(report_, w, "two-label vertex with different orders");
                else if (t0.m >= 2) {
                    if (t0.l == t1.l)
                        issue(report_, w, "two-label vertex with equal labels");
                    if (mod_floor(t0.l * t1.l, t0.m) != 1)
                        issue(report_, w, "two-label vertex: labels are not inverse mod m");
                    if (mod_floor(t0.l * t0.l, t0.m) == 1)
                        issue(report_, w, "two-label vertex with l^2 = 1 mod m");
                }
            }
        } else {
            if (v.genus < 0)
                issue(report_, w, "negative genus");
            if (!(v.area > Rational(0)))
                issue(report_, w, "area must be positive");
            for (const auto& t : v.types)
                if (t.m < 2)
                    issue(report_, w, "surface singular types must have order >= 2");
        }
    }

    // Extrema phase.
    if (n == 0)
        return;
    if (n == 1) {
        issue(report_, g.vertices[0].id, "graph with a single vertex has no distinct extrema");
        return;
    }
    min_moment_ = max_moment_ = g.vertices[0].moment;
    for (const auto& v : g.vertices) {
        if (v.moment < min_moment_)
            min_moment_ = v.moment;
        if (v.moment > max_moment_)
            max_moment_ = v.moment;
    }
    size_t nmin = 0, nmax = 0;
    for (size_t i = 0; i < n; ++i) {
        if (g.vertices[i].moment == min_moment_) {
            min_idx_ = i;
            ++nmin;
        }
        if (g.vertices[i].moment == max_moment_) {
            max_idx_ = i;
            ++nmax;
        }
    }
    bool extrema_ok = true;
    if (nmin != 1) {
        issue(report_, "graph", "global minimum is attained by more than one component");
        extrema_ok = false;
    }
    if (nmax != 1) {
        issue(report_, "graph", "global maximum is attained by more than one component");
        extrema_ok = false;
    }

    size_t fat_count = 0;
    for (size_t i = 0; i < n; ++i) {
        const Vertex& v = g.vertices[i];
        if (!v.fat())
            continue;
        ++fat_count;
        if (v.moment != min_moment_ && v.moment != max_moment_)
            issue(report_, v.id, "fat vertex is not a global extremum");
    }
    if (fat_count > 2)
        issue(report_, "graph", "more than two fat vertices");

    // Fat-vertex edge structure.
    for (size_t i = 0; i < n; ++i) {
        const Vertex& v = g.vertices[i];
        if (!v.fat())
            continue;
        std::multiset<Int> edge_labels, point_orders;
        for (auto [e, is_south] : incidence_[i]) {
            edge_labels.insert(g.edges[e].k);
            if (extrema_ok && is_min(i) && !is_south)
                issue(report_, v.id, "minimal surface is the north pole of an edge");
            if (extrema_ok && is_max(i) && is_south)
                issue(report_, v.id, "maximal surface is the south pole of an edge");
        }
        for (const auto& t : v.types)
            if (t.m >= 2)
                point_orders.insert(t.m);
        if (edge_labels != point_orders)
            issue(report_, v.id,
                  "incident edge labels do not match the singular point orders");
    }

    // Edges joining two fat vertices carry degree-zero spheres: the Seifert
    // pairs at the two poles must satisfy inv(l_top) + l_bot = m.
    for (size_t e = 0; e < g.edges.size(); ++e) {
        const Vertex& vs = g.vertices[idx.at(g.edges[e].south)];
        const Vertex& vn = g.vertices[idx.at(g.edges[e].north)];
        if (!vs.fat() || !vn.fat())
            continue;
        const Int& m = g.edges[e].k;
        std::multiset<Int> bot, top_conj;
        for (const auto& t : vs.types)
            if (t.m == m)
                bot.insert(t.l);
        for (const auto& t : vn.types)
            if (t.m == m)
                top_conj.insert(m - mod_inverse(t.l, m));
        if (bot != top_conj)
            issue(report_, "edge#" + std::to_string(e),
                  "surface-to-surface sphere violates l + inv(l_top) = m");
    }

    if (!extrema_ok)
        return;

    // Orbi-weight derivation and the local normal form at isolated vertices.
    for (size_t i = 0; i < n; ++i) {
        const Vertex& v = g.vertices[i];
        if (v.fat())
            continue;
        if (v.types.empty() || v.types.size() > 2)
            continue;
        Int m = v.order();
        bool same_m = true;
        for (const auto& t : v.types)
            if (t.m != m)
                same_m = false;
        if (!same_m)
            continue;

        std::vector<std::pair<size_t, bool>> ups, downs;
        for (auto [e, is_south] : incidence_[i])
            (is_south ? ups : downs).push_back({e, is_south});

        // Directions as (label, sign, edge); label 1 = free sphere.
        struct Dir {
            Int k{1};
            int sign = 1;
            std::optional<size_t> edge;
        };
        Dir d1, d2;
        bool shape_ok = true;
        if (is_min(i)) {
            if (!downs.empty()) {
                issue(report_, v.id, "global minimum vertex has a downward edge");
                shape_ok = false;
            }
            if (ups.size() > 2) {
                issue(report_, v.id, "more than two incident edges");
                shape_ok = false;
            }
            if (shape_ok) {
                d1.sign = d2.sign = 1;
                if (ups.size() >= 1) {
                    d1.k = g.edges[ups[0].first].k;
                    d1.edge = ups[0].first;
                }
                if (ups.size() == 2) {
                    d2.k = g.edges[ups[1].first].k;
                    d2.edge = ups[1].first;
                }
            }
        } else if (is_max(i)) {
            if (!ups.empty()) {
                issue(report_, v.id, "global maximum vertex has an upward edge");
                shape_ok = false;
            }
            if (downs.size() > 2) {
                issue(report_, v.id, "more than two incident edges");
                shape_ok = false;
            }
            if (shape_ok) {
                d1.sign = d2.sign = -1;
                if (downs.size() >= 1) {
                    d1.k = g.edges[downs[0].first].k;
                    d1.edge = downs[0].first;
                }
                if (downs.size() == 2) {
                    d2.k = g.edges[downs[1].first].k;
                    d2.edge = downs[1].first;
                }
            }
        } else {
            if (ups.size() > 1) {
                issue(report_, v.id, "interior vertex with two upward edges");
                shape_ok = false;
            }
            if (downs.size() > 1) {
                issue(report_, v.id, "interior vertex with two downward edges");
                shape_ok = false;
            }
            if (shape_ok) {
                d1.sign = 1;
                d2.sign = -1;
                if (!ups.empty()) {
                    d1.k = g.edges[ups[0].first].k;
                    d1.edge = ups[0].first;
                }
                if (!downs.empty()) {
                    d2.k = g.edges[downs[0].first].k;
                    d2.edge = downs[0].first;
                }
            }
        }
        if (!shape_ok)
            continue;

        Int g0 = gcd(d1.k, d2.k);
        if (mod_floor(m, g0) != 0) {
            issue(report_, v.id, "gcd of effective edge labels does not divide m");
            continue;
        }
        OrbiWeightData w;
        w.p = m / g0;
        Int b1 = d1.sign * (d1.k / g0);
        Int b2 = d2.sign * (d2.k / g0);
        if (b1 >= b2) {
            w.a1 = b1;
            w.a2 = b2;
            w.edge_a1 = d1.edge;
            w.edge_a2 = d2.edge;
        } else {
            w.a1 = b2;
            w.a2 = b1;
            w.edge_a1 = d2.edge;
            w.edge_a2 = d1.edge;
        }
        if (g0 * g0 != m)
            warn(report_, v.id,
                 "thin-vertex lemma readings disagree here (gcd(k1,k2) != m/gcd); "
                 "using p = m/gcd");
        weights_[i] = w;

        // Local normal form: gcd(|a1*l - a2|, m) = p for every stored label.
        for (const auto& t : v.types) {
            if (!type_label_valid(t) || t.m == 1)
                continue;
            Int lhs = gcd(Int(w.a1 * t.l - w.a2), m);
            if (lhs != w.p)
                issue(report_, v.id,
                      "local normal form fails for " + t.str() + ": gcd(|a1*l - a2|, m) = " +
                          lhs.get_str() + " != p = " + w.p.get_str());
        }
        if (v.types.size() == 2 && w.a1 != w.a2)
            issue(report_, v.id, "two labels stored but the orbi-weights are distinct");
        if (v.types.size() == 1 && w.a1 == w.a2 && m >= 2 &&
            mod_floor(v.types[0].l * v.types[0].l, m) != 1)
            issue(report_, v.id,
                  "equal orbi-weights with l^2 != 1 mod m require both labels stored");
    }
}

OrbiWeightData derive_weights(const Multigraph& g, const std::string& vertex_id) {
    size_t i = g.index_of(vertex_id);
    if (g.vertices[i].fat())
        throw InvalidGraph("derive_weights: vertex '" + vertex_id + "' is a surface");
    GraphAnalysis a(g);
    if (a.weights(i))
        return *a.weights(i);
    std::string why;
    for (const auto& is : a.report().issues)
        if (!is.warning && (is.where == vertex_id || is.where == "graph"))
            why += (why.empty() ? "" : "; ") + is.message;
    throw Inconsistent("derive_weights at '" + vertex_id + "': " +
                       (why.empty() ? "inconsistent multigraph" : why));
}

ValidationReport validate(const Multigraph& g) {
    return GraphAnalysis(g).report();
}

namespace {

// Label-only sort key; ids deliberately excluded.
struct VKey {
    Rational moment;
    int kind;
    Int order;
    std::vector<SingularType> types;
    int genus;
    Rational area;

    static VKey of(const Vertex& v) {
        VKey k;
        k.moment = v.moment;
        k.kind = v.fat() ? 1 : 0;
        k.order = v.fat() ? Int(0) : v.order();
        k.types = v.types;
        std::sort(k.types.begin(), k.types.end());
        k.genus = v.fat() ? v.genus : 0;
        k.area = v.fat() ? v.area : Rational(0);
        return k;
    }

    friend bool operator<(const VKey& a, const VKey& b) {
        if (a.moment != b.moment)
            return a.moment < b.moment;
        if (a.kind != b.kind)
            return a.kind < b.kind;
        if (a.order != b.order)
            return a.order < b.order;
        if (a.types != b.types)
            return std::lexicographical_compare(a.types.begin(), a.types.end(),
                                                b.types.begin(), b.types.end());
        if (a.genus != b.genus)
            return a.genus < b.genus;
        return a.area < b.area;
    }
    friend bool operator==(const VKey& a, const VKey& b) { return !(a < b) && !(b < a); }
};

using EdgeTriple = std::tuple<size_t, size_t, Int>;

std::vector<EdgeTriple> edge_list(const Multigraph& g, const std::vector<size_t>& pos) {
    std::vector<EdgeTriple> out;
    out.reserve(g.edges.size());
    for (const auto& e : g.edges)
        out.push_back({pos[g.index_of(e.south)], pos[g.index_of(e.north)], e.k});
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

Multigraph canonical_form(const Multigraph& g) {
    ValidationReport r = validate(g);
    if (!r.ok())
        throw InvalidGraph("canonical_form: graph does not validate:\n" + r.str());

    const size_t n = g.vertices.size();
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<VKey> keys;
    keys.reserve(n);
    for (const auto& v : g.vertices)
        keys.push_back(VKey::of(v));
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return keys[a] < keys[b]; });

    // Partition into label classes, then refine by neighborhood signatures.
    std::vector<int> cls(n, 0);
    {
        int c = 0;
        for (size_t i = 1; i < n; ++i) {
            if (!(keys[order[i - 1]] == keys[order[i]]))
                ++c;
            cls[order[i]] = c;
        }
        if (n > 0)
            cls[order[0]] = 0;
    }
    std::map<std::string, size_t> idx;
    for (size_t i = 0; i < n; ++i)
        idx[g.vertices[i].id] = i;
    for (int round = 0; round < (int)n + 1; ++round) {
        std::vector<std::vector<std::tuple<Int, int, int>>> sig(n);
        for (const auto& e : g.edges) {
            size_t s = idx[e.south], t = idx[e.north];
            sig[s].push_back({e.k, 1, cls[t]});
            sig[t].push_back({e.k, 0, cls[s]});
        }
        for (auto& s : sig)
            std::sort(s.begin(), s.end());
        std::map<std::pair<int, std::vector<std::tuple<Int, int, int>>>, int> remap;
        std::vector<int> next(n);
        // Deterministic: walk in current canonical order.
        std::vector<size_t> by_cls(order);
        std::stable_sort(by_cls.begin(), by_cls.end(), [&](size_t a, size_t b) {
            if (cls[a] != cls[b])
                return cls[a] < cls[b];
            return sig[a] < sig[b];
        });
        int c = -1;
        std::pair<int, std::vector<std::tuple<Int, int, int>>> prev{-1, {}};
        for (size_t v : by_cls) {
            std::pair<int, std::vector<std::tuple<Int, int, int>>> cur{cls[v], sig[v]};
            if (cur != prev) {
                ++c;
                prev = cur;
            }
            next[v] = c;
        }
        if (next == cls)
            break;
        cls = next;
        std::stable_sort(order.begin(), order.end(),
                         [&](size_t a, size_t b) { return cls[a] < cls[b]; });
    }

    // Remaining equal-class runs: vertices there carry identical labels, so
    // only the edge list distinguishes arrangements.  Enumerate the product
    // of in-group permutations and keep the lexicographically least edges.
    struct Group {
        size_t start;               // slot range [start, start+members.size()) in order
        std::vector<size_t> members;  // sorted vertex indices
    };
    std::vector<Group> groups;
    for (size_t i = 0; i < n;) {
        size_t j = i;
        while (j < n && cls[order[j]] == cls[order[i]])
            ++j;
        if (j - i > 1) {
            Group grp;
            grp.start = i;
            grp.members.assign(order.begin() + i, order.begin() + j);
            std::sort(grp.members.begin(), grp.members.end());
            groups.push_back(std::move(grp));
        }
        i = j;
    }
    std::vector<size_t> best = order;
    std::vector<size_t> pos(n);
    auto fill_pos = [&](const std::vector<size_t>& ord) {
        for (size_t i = 0; i < n; ++i)
            pos[ord[i]] = i;
    };
    fill_pos(best);
    std::vector<EdgeTriple> best_edges = edge_list(g, pos);
    if (!groups.empty()) {
        long budget = 2'000'000;
        std::vector<size_t> cand = order;
        std::function<void(size_t)> rec = [&](size_t gi) {
            if (budget <= 0)
                return;
            if (gi == groups.size()) {
                --budget;
                fill_pos(cand);
                auto el = edge_list(g, pos);
                if (el < best_edges) {
                    best_edges = el;
                    best = cand;
                }
                return;
            }
            std::vector<size_t> perm = groups[gi].members;
            do {
                for (size_t t = 0; t < perm.size(); ++t)
                    cand[groups[gi].start + t] = perm[t];
                rec(gi + 1);
            } while (std::next_permutation(perm.begin(), perm.end()) && budget > 0);
        };
        // Seed cand slots outside groups from the refined order (canonical).
        rec(0);
        if (budget <= 0)
            throw InvalidGraph("canonical_form: automorphism search budget exceeded");
    }

    Multigraph out;
    out.vertices.reserve(n);
    fill_pos(best);
    for (size_t i = 0; i < n; ++i) {
        Vertex v = g.vertices[best[i]];
        v.id = "v" + std::to_string(i);
        std::sort(v.types.begin(), v.types.end());
        out.vertices.push_back(std::move(v));
    }
    for (const auto& [s, t, k] : edge_list(g, pos)) {
        Edge e;
        e.south = out.vertices[s].id;
        e.north = out.vertices[t].id;
        e.k = k;
        out.edges.push_back(e);
    }
    std::sort(out.edges.begin(), out.edges.end(), [&](const Edge& a, const Edge& b) {
        auto ta = std::make_tuple(out.index_of(a.south), out.index_of(a.north), a.k);
        auto tb = std::make_tuple(out.index_of(b.south), out.index_of(b.north), b.k);
        return ta < tb;
    });
    return out;
}

bool is_isomorphic(const Multigraph& a, const Multigraph& b) {
    Multigraph ca = canonical_form(a);
    Multigraph cb = canonical_form(b);
    if (ca.vertices.size() != cb.vertices.size() || ca.edges.size() != cb.edges.size())
        return false;
    for (size_t i = 0; i < ca.vertices.size(); ++i) {
        const Vertex &x = ca.vertices[i], &y = cb.vertices[i];
        if (x.kind != y.kind || x.types != y.types || x.moment != y.moment)
            return false;
        if (x.fat() && (x.genus != y.genus || x.area != y.area))
            return false;
    }
    for (size_t e = 0; e < ca.edges.size(); ++e) {
        const Edge &x = ca.edges[e], &y = cb.edges[e];
        if (x.south != y.south || x.north != y.north || x.k != y.k)
            return false;
    }
    return true;
}

}  // namespace orbigraph
