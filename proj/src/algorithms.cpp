#include "orbigraph/algorithms.hpp"

#include "orbigraph/localization.hpp"
#include "orbigraph/seifert.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace orbigraph {

std::string to_string(Family f) {
    switch (f) {
        case Family::I: return "I";
        case Family::II: return "II";
        case Family::III: return "III";
        case Family::A: return "A";
        case Family::B: return "B";
        case Family::C: return "C";
    }
    return "?";
}

std::string FamilyTag::str() const {
    std::ostringstream os;
    os << "family " << to_string(family);
    for (const auto& [k, v] : params)
        os << " " << k << "=" << v.str();
    if (family == Family::C)
        os << " extends_to_toric=no";
    return os.str();
}

std::string VerifyReport::str() const {
    std::ostringstream os;
    for (const auto& l : lines)
        os << l << "\n";
    os << (pass ? "PASS" : "FAIL") << "\n";
    return os.str();
}

namespace {

struct SingularTarget {
    Int m;
    Rational moment;
    std::string vertex;
    int type_index;
    bool on_surface;
};

std::vector<SingularTarget> singular_points(const Multigraph& g) {
    std::vector<SingularTarget> out;
    for (const auto& v : g.vertices) {
        if (!v.fat()) {
            if (v.order() >= 2) {
                // Two labels describe one point; blow up along the smaller.
                int ti = 0;
                if (v.types.size() == 2 && v.types[1].l < v.types[0].l)
                    ti = 1;
                out.push_back({v.order(), v.moment, v.id, ti, false});
            }
        } else {
            for (size_t t = 0; t < v.types.size(); ++t)
                if (v.types[t].m >= 2)
                    out.push_back({v.types[t].m, v.moment, v.id, (int)t, true});
        }
    }
    std::sort(out.begin(), out.end(), [](const SingularTarget& a, const SingularTarget& b) {
        if (a.m != b.m)
            return a.m < b.m;
        if (a.moment != b.moment)
            return a.moment < b.moment;
        if (a.vertex != b.vertex)
            return a.vertex < b.vertex;
        return a.type_index < b.type_index;
    });
    return out;
}

}  // namespace

namespace {

BlowUpSpec desing_spec(const Multigraph& g, const SingularTarget& t) {
    const Vertex& v = *g.find(t.vertex);
    Int l = v.types[t.type_index].l;
    BlowUpSpec spec;
    spec.vertex = t.vertex;
    spec.type_index = t.type_index;
    spec.variant = Variant::P1;
    GraphAnalysis a(g);
    if (a.is_max(g.index_of(t.vertex))) {
        spec.b1 = mod_inverse(l, t.m);
        spec.b2 = 1;
    } else {
        spec.b1 = 1;
        spec.b2 = l;
    }
    return spec;
}

}  // namespace

RewriteResult desingularize(const Multigraph& g) {
    ValidationReport r = validate(g);
    if (!r.ok())
        throw InvalidGraph("desingularize: graph does not validate:\n" + r.str());
    RewriteResult res;
    res.graph = g;
    for (int round = 0; round < 100000; ++round) {
        auto targets = singular_points(res.graph);
        if (targets.empty())
            return res;
        // Process the whole minimal-order batch with one shared size so
        // that mirror-symmetric inputs stay mirror-symmetric.
        Int m = targets.front().m;
        std::vector<SingularTarget> batch;
        for (const auto& t : targets)
            if (t.m == m)
                batch.push_back(t);
        Rational shared;
        bool have_shared = false;
        for (const auto& t : batch) {
            AdmissibleBound b = max_admissible(res.graph, desing_spec(res.graph, t));
            if (!b.unbounded && (!have_shared || b.sup < shared)) {
                shared = b.sup;
                have_shared = true;
            }
        }
        // Re-resolve targets after each application: surgery at one point
        // can renumber type slots at a shared fat vertex.
        for (size_t done = 0; done < batch.size(); ++done) {
            auto live_targets = singular_points(res.graph);
            const SingularTarget* t = nullptr;
            for (const auto& lt : live_targets)
                if (lt.m == m) {
                    t = &lt;
                    break;
                }
            if (!t)
                break;
            BlowUpSpec spec = desing_spec(res.graph, *t);
            AdmissibleBound live = max_admissible(res.graph, spec);
            Rational eps;
            if (have_shared && (live.unbounded || shared < live.sup))
                eps = shared / Rational(2);
            else if (!live.unbounded)
                eps = live.sup / Rational(2);
            else
                throw InvalidSpec("desingularize: unbounded admissible size");
            spec.epsilon = eps;
            auto [next, rec] = blow_up(res.graph, spec);
            res.graph = std::move(next);
            res.log.push_back(rec);
        }
    }
    throw Error("desingularize: iteration limit exceeded");
}

namespace {

struct DownCandidate {
    int priority;  // 0 interior-interior, 1 other edge, 2 fat vertex
    Rational key1, key2;
    BlowDownTarget target;
};

std::vector<DownCandidate> down_candidates(const Multigraph& g, const GraphAnalysis& a) {
    std::vector<DownCandidate> out;
    for (size_t e = 0; e < g.edges.size(); ++e) {
        const Edge& ed = g.edges[e];
        size_t si = g.index_of(ed.south), ni = g.index_of(ed.north);
        if (g.vertices[si].fat() && g.vertices[ni].fat())
            continue;
        Rational d = sphere_degree(a, e);
        if (!(d < Rational(0)))
            continue;
        bool interior = !a.is_min(si) && !a.is_max(si) && !a.is_min(ni) && !a.is_max(ni);
        out.push_back({interior ? 0 : 1, g.vertices[si].moment, g.vertices[ni].moment,
                       BlowDownTarget::edge(e)});
    }
    for (const auto& v : g.vertices) {
        if (!v.fat() || v.genus != 0 || v.types.size() > 2)
            continue;
        Rational beta = solve_surface_degrees(g).at(v.id).beta;
        if (beta < Rational(0))
            out.push_back({2, v.moment, Rational(0), BlowDownTarget::fat(v.id)});
    }
    std::sort(out.begin(), out.end(), [](const DownCandidate& x, const DownCandidate& y) {
        if (x.priority != y.priority)
            return x.priority < y.priority;
        if (x.key1 != y.key1)
            return x.key1 < y.key1;
        return x.key2 < y.key2;
    });
    return out;
}

}  // namespace

RewriteResult minimalize(const Multigraph& g) {
    ValidationReport r = validate(g);
    if (!r.ok())
        throw InvalidGraph("minimalize: graph does not validate:\n" + r.str());
    RewriteResult res;
    res.graph = g;
    for (int step = 0; step < 100000; ++step) {
        GraphAnalysis a(res.graph);
        auto cands = down_candidates(res.graph, a);
        bool advanced = false;
        std::string last_error;
        for (const auto& c : cands) {
            try {
                auto [next, rec] = blow_down(res.graph, c.target);
                res.graph = std::move(next);
                res.log.push_back(rec);
                advanced = true;
                break;
            } catch (const Error& e) {
                last_error = e.what();
            }
        }
        if (!advanced) {
            if (!cands.empty())
                throw NoInverse("minimalize: negative sphere resists blow-down: " + last_error);
            return res;
        }
    }
    throw Error("minimalize: iteration limit exceeded");
}

namespace {

struct Shape {
    std::vector<size_t> fats, isos, interior, floaters, carriers;
    size_t min_idx = 0, max_idx = 0;
};

Shape shape_of(const Multigraph& g, const GraphAnalysis& a) {
    Shape s;
    s.min_idx = a.min_vertex();
    s.max_idx = a.max_vertex();
    for (size_t i = 0; i < g.vertices.size(); ++i) {
        if (g.vertices[i].fat()) {
            s.fats.push_back(i);
            continue;
        }
        s.isos.push_back(i);
        if (!a.is_min(i) && !a.is_max(i)) {
            s.interior.push_back(i);
            if (a.incidence(i).empty())
                s.floaters.push_back(i);
            else
                s.carriers.push_back(i);
        }
    }
    return s;
}

using Params = std::map<std::string, Rational>;

struct MatchFail {
    std::string reason;
};

// Stored labels of a vertex as candidates (two-label vertices offer both).
std::vector<Int> label_candidates(const Vertex& v) {
    std::vector<Int> out;
    for (const auto& t : v.types)
        out.push_back(t.l);
    return out;
}

bool has_label(const Vertex& v, const Int& m, const Int& l) {
    for (const auto& t : v.types)
        if (t.m == m && t.l == l)
            return true;
    return false;
}

Int inv_or_zero(const Int& l, const Int& m) {
    return m >= 2 ? mod_inverse(l, m) : Int(0);
}

// Label of the edge joining i and j, or 1 when absent; fails on parallels.
Int edge_label_between(const Multigraph& g, size_t i, size_t j, bool* found = nullptr) {
    Int k = 1;
    int count = 0;
    for (const auto& e : g.edges) {
        size_t s = g.index_of(e.south), n = g.index_of(e.north);
        if ((s == i && n == j) || (s == j && n == i)) {
            k = e.k;
            ++count;
        }
    }
    if (found)
        *found = count > 0;
    return count == 1 ? k : count == 0 ? Int(1) : Int(-1);
}

std::optional<FamilyTag> match_I_II(const Multigraph& g, const GraphAnalysis& a, const Shape& s,
                                    bool fat_at_max, std::string& why) {
    if (s.fats.size() != 1 || s.isos.size() != 1 || g.vertices.size() != 2)
        return std::nullopt;
    size_t fi = s.fats[0], xi = s.isos[0];
    if (fat_at_max != a.is_max(fi))
        return std::nullopt;
    const Vertex& f = g.vertices[fi];
    const Vertex& x = g.vertices[xi];
    const char* fam = fat_at_max ? "I" : "II";
    if (f.genus != 0) {
        why = std::string(fam) + ": surface genus is nonzero";
        return std::nullopt;
    }
    if (f.types.size() > 2) {
        why = std::string(fam) + ": more than two singular points on the surface";
        return std::nullopt;
    }
    Rational beta = solve_surface_degrees(g).at(f.id).beta;

    // Orders: multigraph I sorts p1 >= p2, multigraph II sorts p1 <= p2.
    std::vector<std::pair<Int, Int>> pts;  // (order, label)
    for (const auto& t : f.types)
        pts.push_back({t.m, t.l});
    while (pts.size() < 2)
        pts.push_back({1, 0});
    std::sort(pts.begin(), pts.end());
    if (fat_at_max)
        std::swap(pts[0], pts[1]);
    Int o1 = pts[0].first, o2 = pts[1].first;
    Int l1 = pts[0].second, l2 = pts[1].second;
    Int c = gcd(o1, o2);
    Int p1 = o1 / c, p2 = o2 / c;
    if (gcd(p1, p2) != 1) {
        why = std::string(fam) + ": surface point orders have gcd(p1,p2) != 1";
        return std::nullopt;
    }
    Int Q = x.order();
    if (mod_floor(Q, c) != 0) {
        why = std::string(fam) + ": c does not divide the isolated order";
        return std::nullopt;
    }
    Int q = Q / c;

    for (const Int& lqc : label_candidates(x)) {
        // (iii)
        if (q >= 2 && mod_floor(p1 * lqc - p2, q) != 0)
            continue;
        if (gcd(p1 * lqc - p2, c) != 1) {
            why = std::string(fam) + ": condition (iii) fails";
            continue;
        }
        // (iv)
        if (Rational(q) != Rational(c * p1 * p2) * beta) {
            why = std::string(fam) + ": condition (iv) q = c*p1*p2*beta fails";
            continue;
        }
        // (v)
        Int lv1 = fat_at_max ? l1 : inv_or_zero(l1, p1 * c);
        Int lv2 = fat_at_max ? l2 : inv_or_zero(l2, p2 * c);
        if (mod_floor(q - lv1 * p2 - lv2 * p1, p1 * p2 * c) != 0) {
            why = std::string(fam) + ": condition (v) fails";
            continue;
        }
        // (vi)
        Int l1p = inv_or_zero(l1, p1 * c);
        Int lhs = fat_at_max ? p2 - lqc * p1 - l1p * q : p2 - l1 * q - lqc * p1;
        if (mod_floor(lhs, p1 * q * c) != 0) {
            why = std::string(fam) + ": condition (vi) fails";
            continue;
        }
        // Moment/area compatibility.
        Rational gap = fat_at_max ? f.moment - x.moment : x.moment - f.moment;
        if (f.area != beta * gap) {
            why = std::string(fam) + ": area does not equal beta*(Hmax - Hmin)";
            continue;
        }
        FamilyTag tag;
        tag.family = fat_at_max ? Family::I : Family::II;
        tag.params["p1"] = Rational(p1);
        tag.params["p2"] = Rational(p2);
        tag.params["q"] = Rational(q);
        tag.params["c"] = Rational(c);
        tag.params["l1"] = Rational(l1);
        tag.params["l2"] = Rational(l2);
        tag.params["lqc"] = Rational(lqc);
        tag.params["beta"] = beta;
        tag.params["A"] = f.area;
        tag.params["alpha"] = fat_at_max ? x.moment : f.moment;
        return tag;
    }
    if (why.empty())
        why = std::string(fam) + ": no stored label satisfies condition (iii)";
    return std::nullopt;
}

std::optional<FamilyTag> match_III(const Multigraph& g, const GraphAnalysis& a, const Shape& s,
                                   std::string& why) {
    if (s.fats.size() != 2 || !s.isos.empty())
        return std::nullopt;
    size_t lo = s.fats[0], hi = s.fats[1];
    if (g.vertices[lo].moment > g.vertices[hi].moment)
        std::swap(lo, hi);
    const Vertex& bot = g.vertices[lo];
    const Vertex& top = g.vertices[hi];
    if (bot.genus != top.genus) {
        why = "III: genera differ";
        return std::nullopt;
    }
    if (bot.types.size() != top.types.size()) {
        why = "III: singular point counts differ";
        return std::nullopt;
    }
    size_t n = bot.types.size();
    Rational beta_minus = solve_surface_degrees(g).at(bot.id).beta;
    // (iii)
    if (bot.genus == 0 && n <= 2 && !beta_minus.is_zero()) {
        why = "III: condition (iii) needs beta = 0 for g = 0, n <= 2";
        return std::nullopt;
    }
    // (iv): per order, bottom labels match p - inv(top labels).
    {
        std::multiset<std::pair<Int, Int>> want, have;
        for (const auto& t : top.types)
            want.insert({t.m, t.m - mod_inverse(t.l, t.m)});
        for (const auto& t : bot.types)
            have.insert({t.m, t.l});
        if (want != have) {
            why = "III: condition (iv) l' + lhat = p fails";
            return std::nullopt;
        }
    }
    // (v)
    Rational acc = beta_minus;
    for (const auto& t : top.types)
        acc += Rational(t.l, t.m);
    if (!acc.is_integer()) {
        why = "III: condition (v) sum l_i/p_i + beta not integral";
        return std::nullopt;
    }
    // Areas.
    if (top.area - bot.area != -beta_minus * (top.moment - bot.moment)) {
        why = "III: area gap does not match -beta*(Hmax - Hmin)";
        return std::nullopt;
    }
    FamilyTag tag;
    tag.family = Family::III;
    tag.params["g"] = Rational(Int(bot.genus));
    tag.params["n"] = Rational(Int(n));
    tag.params["beta"] = beta_minus;
    tag.params["A"] = bot.area;
    tag.params["s"] = top.moment - bot.moment;
    tag.params["alpha"] = bot.moment;
    int idx = 1;
    for (const auto& t : top.types) {
        tag.params["p" + std::to_string(idx)] = Rational(t.m);
        tag.params["l" + std::to_string(idx)] = Rational(t.l);
        ++idx;
    }
    return tag;
}

std::optional<FamilyTag> match_A(const Multigraph& g, const GraphAnalysis& a, const Shape& s,
                                 std::string& why) {
    if (!s.fats.empty() || s.isos.size() != 4 || s.interior.size() != 2)
        return std::nullopt;
    const Vertex& vmin = g.vertices[s.min_idx];
    const Vertex& vmax = g.vertices[s.max_idx];
    Int c = vmin.order();
    for (size_t i : s.isos)
        if (g.vertices[i].order() != c) {
            why = "A: orders are not all equal";
            return std::nullopt;
        }

    for (int flip = 0; flip < 2; ++flip) {
        size_t xi = s.interior[flip];        // candidate (c, l') vertex
        size_t yi = s.interior[1 - flip];    // candidate (c, l) vertex
        Int m = edge_label_between(g, s.min_idx, xi);
        Int nn = edge_label_between(g, s.min_idx, yi);
        if (m < 0 || nn < 0)
            continue;
        if (m < nn)
            continue;  // convention m >= n
        // Opposite sides carry the same labels.
        if (edge_label_between(g, xi, s.max_idx) != nn ||
            edge_label_between(g, yi, s.max_idx) != m) {
            why = "A: opposite edges of the diamond carry different labels";
            continue;
        }
        const Vertex& X = g.vertices[xi];
        const Vertex& Y = g.vertices[yi];
        Rational beta = (X.moment - vmin.moment) / Rational(m);
        Rational gamma = (Y.moment - vmin.moment) / Rational(nn);
        if (vmax.moment - Y.moment != Rational(m) * beta ||
            vmax.moment - X.moment != Rational(nn) * gamma) {
            why = "A: moment labels do not close up";
            continue;
        }
        if (c == 1) {
            if (gcd(m, nn) != 1) {
                why = "A: condition (ii) fails (gcd(m,n) must divide c)";
                continue;
            }
            FamilyTag tag;
            tag.family = Family::A;
            tag.params["c"] = Rational(1);
            tag.params["l"] = Rational(0);
            tag.params["m"] = Rational(m);
            tag.params["n"] = Rational(nn);
            tag.params["alpha"] = vmin.moment;
            tag.params["beta"] = beta;
            tag.params["gamma"] = gamma;
            return tag;
        }
        for (const Int& lmin : label_candidates(vmin)) {
            Int l = c - lmin;
            if (!(l >= 1 && l < c) || gcd(l, c) != 1)
                continue;
            Int lp = mod_inverse(l, c);
            if (!has_label(X, c, lp) || !has_label(Y, c, l) || !has_label(vmax, c, c - lp)) {
                why = "A: type labels do not follow the (l, l') pattern";
                continue;
            }
            Int g0 = gcd(m, nn);
            if (mod_floor(c, g0) != 0) {
                why = "A: condition (ii) fails (gcd(m,n) does not divide c)";
                continue;
            }
            if (gcd((m * l + nn) / g0, c) != c / g0) {
                why = "A: condition (ii) fails";
                continue;
            }
            FamilyTag tag;
            tag.family = Family::A;
            tag.params["c"] = Rational(c);
            tag.params["l"] = Rational(l);
            tag.params["m"] = Rational(m);
            tag.params["n"] = Rational(nn);
            tag.params["alpha"] = vmin.moment;
            tag.params["beta"] = beta;
            tag.params["gamma"] = gamma;
            return tag;
        }
    }
    if (why.empty())
        why = "A: diamond shape does not match";
    return std::nullopt;
}

std::optional<FamilyTag> match_B(const Multigraph& g, const GraphAnalysis& a, const Shape& s,
                                 std::string& why) {
    if (!s.fats.empty() || s.interior.empty())
        return std::nullopt;
    if (s.carriers.size() > 1)
        return std::nullopt;

    const Vertex& vmin = g.vertices[s.min_idx];
    const Vertex& vmax = g.vertices[s.max_idx];
    Int q = vmin.order(), p = vmax.order();
    bool smm = false;
    Int sv = edge_label_between(g, s.min_idx, s.max_idx, &smm);
    if (sv < 0)
        return std::nullopt;  // two parallel extremal spheres: family C shape

    std::vector<size_t> k1_cands =
        s.carriers.size() == 1 ? s.carriers : s.interior;
    for (size_t f1 : k1_cands) {
        const Vertex& F1 = g.vertices[f1];
        Int k1 = F1.order();
        Int m = edge_label_between(g, f1, s.max_idx);
        Int nn = edge_label_between(g, s.min_idx, f1);
        if (m < 0 || nn < 0)
            continue;
        // Every other interior vertex floats with type (k,k-1).
        bool floaters_ok = true;
        Int x = 0;
        Rational moment_sum(0);
        std::vector<Int> ks;
        for (size_t i : s.interior) {
            if (i == f1)
                continue;
            const Vertex& w = g.vertices[i];
            if (!a.incidence(i).empty() ||
                !has_label(w, w.order(), w.order() - 1)) {
                floaters_ok = false;
                break;
            }
            x += w.order();
            ks.push_back(w.order());
            moment_sum += Rational(w.order()) * (w.moment - F1.moment);
        }
        if (!floaters_ok) {
            why = "B: a non-extremal vertex is neither the k1-vertex nor a (k,k-1) floater";
            continue;
        }
        // (ii)
        {
            Int g0 = gcd(m, nn);
            bool ok2 = false;
            if (mod_floor(k1, g0) == 0)
                for (const Int& l1 : label_candidates(F1))
                    if (gcd((m * l1 + nn) / g0, k1) == k1 / g0)
                        ok2 = true;
            if (k1 == 1)
                ok2 = true;
            if (!ok2) {
                why = "B: condition (ii) fails";
                continue;
            }
        }
        // (iii) at the maximum.
        {
            Int g0 = gcd(m, sv);
            bool ok = false;
            for (const Int& lmax : label_candidates(vmax)) {
                Int l = sv >= m ? lmax : inv_or_zero(lmax, p);
                if (p >= 2 && mod_floor(m * l - sv, g0) == 0 && mod_floor(p, g0) == 0 &&
                    gcd((m * l - sv) / g0, p) == p / g0)
                    ok = true;
                if (p == 1)
                    ok = true;
            }
            if (!ok) {
                why = "B: condition (iii) fails";
                continue;
            }
        }
        // (iv) at the minimum.
        {
            Int g0 = gcd(nn, sv);
            bool ok = false;
            for (const Int& lmin : label_candidates(vmin)) {
                Int l = nn >= sv ? lmin : inv_or_zero(lmin, q);
                if (q >= 2 && mod_floor(nn * l - sv, g0) == 0 && mod_floor(q, g0) == 0 &&
                    gcd((nn * l - sv) / g0, q) == q / g0)
                    ok = true;
                if (q == 1)
                    ok = true;
            }
            if (!ok) {
                why = "B: condition (iv) fails";
                continue;
            }
        }
        // (v)
        if ((p - x * m * sv) * nn + q * m != k1 * sv || p < x * m * sv || q < x * nn * sv) {
            why = "B: condition (v) fails";
            continue;
        }
        // (vi)
        Rational alpha = F1.moment;
        Rational a1 = (alpha - vmin.moment) / Rational(nn);
        Rational a2 = (vmax.moment - alpha) / Rational(m);
        if (Rational(p) * a2 != Rational(q) * a1 + Rational(sv) * moment_sum) {
            why = "B: condition (vi) fails";
            continue;
        }
        bool window_ok = true;
        for (size_t i : s.interior)
            if (i != f1 && !(vmin.moment < g.vertices[i].moment &&
                             g.vertices[i].moment < vmax.moment))
                window_ok = false;
        if (!window_ok) {
            why = "B: a floater moment leaves the open window";
            continue;
        }
        FamilyTag tag;
        tag.family = Family::B;
        tag.params["p"] = Rational(p);
        tag.params["q"] = Rational(q);
        tag.params["s"] = Rational(sv);
        tag.params["m"] = Rational(m);
        tag.params["n"] = Rational(nn);
        tag.params["k1"] = Rational(k1);
        tag.params["r"] = Rational(Int(1 + (long)ks.size()));
        tag.params["a1"] = a1;
        tag.params["a2"] = a2;
        tag.params["alpha"] = alpha;
        int idx = 2;
        for (const auto& k : ks)
            tag.params["k" + std::to_string(idx++)] = Rational(k);
        return tag;
    }
    if (why.empty())
        why = "B: no admissible k1-vertex";
    return std::nullopt;
}

std::optional<FamilyTag> match_C(const Multigraph& g, const GraphAnalysis& a, const Shape& s,
                                 std::string& why) {
    if (!s.fats.empty() || !s.carriers.empty())
        return std::nullopt;
    // All edges must join the two extrema.
    std::vector<Int> extremal_edges;
    for (const auto& e : g.edges) {
        size_t si = g.index_of(e.south), ni = g.index_of(e.north);
        if (si != s.min_idx || ni != s.max_idx)
            return std::nullopt;
        extremal_edges.push_back(e.k);
    }
    if (extremal_edges.empty() || extremal_edges.size() > 2)
        return std::nullopt;
    std::sort(extremal_edges.begin(), extremal_edges.end());
    Int M2 = extremal_edges.size() == 2 ? extremal_edges[0] : Int(1);
    Int M1 = extremal_edges.back();

    const Vertex& vmin = g.vertices[s.min_idx];
    const Vertex& vmax = g.vertices[s.max_idx];
    Int c = gcd(M1, M2);
    Int m1 = M1 / c, m2 = M2 / c;
    if (m1 * m2 == 1) {
        why = "C: needs m1*m2 > 1";
        return std::nullopt;
    }
    if (gcd(m1, m2) != 1) {
        why = "C: condition (i) gcd(m1,m2) = 1 fails";
        return std::nullopt;
    }
    if (mod_floor(vmax.order(), c) != 0 || mod_floor(vmin.order(), c) != 0) {
        why = "C: c does not divide the extremal orders";
        return std::nullopt;
    }
    Int p = vmax.order() / c, q = vmin.order() / c;
    if (gcd(m1, p) != 1 || gcd(m2, p) != 1 || gcd(m1, q) != 1 || gcd(m2, q) != 1) {
        why = "C: condition (i) fails";
        return std::nullopt;
    }
    Int mi = std::max(m1, m2), mj = std::min(m1, m2);
    bool c3 = false;
    for (const Int& lmin : label_candidates(vmin))
        for (const Int& lmax : label_candidates(vmax))
            if (gcd(mi * lmin - mj, q * c) == q && gcd(mj * lmax - mi, p * c) == p)
                c3 = true;
    if (!c3) {
        why = "C: condition (iii) fails";
        return std::nullopt;
    }
    // Floaters.
    Int ksum = 0;
    Rational moment_sum(0);
    std::vector<Int> ks;
    for (size_t i : s.interior) {
        const Vertex& w = g.vertices[i];
        if (!has_label(w, w.order(), w.order() - 1)) {
            why = "C: a floater is not of type (k, k-1)";
            return std::nullopt;
        }
        ksum += w.order();
        ks.push_back(w.order());
        moment_sum += Rational(w.order()) * (w.moment - vmin.moment);
        if (!(vmin.moment < w.moment && w.moment < vmax.moment)) {
            why = "C: a floater moment leaves the open window";
            return std::nullopt;
        }
    }
    // (iv)
    if (p + q != c * m1 * m2 * ksum) {
        why = "C: condition (iv) p + q = c*m1*m2*sum(k) fails";
        return std::nullopt;
    }
    // (v)
    Rational av = (vmax.moment - vmin.moment) / Rational(c * m1 * m2);
    if (Rational(p) * av != moment_sum) {
        why = "C: condition (v) fails";
        return std::nullopt;
    }
    FamilyTag tag;
    tag.family = Family::C;
    tag.extends_to_toric = false;
    tag.params["p"] = Rational(p);
    tag.params["q"] = Rational(q);
    tag.params["c"] = Rational(c);
    tag.params["m1"] = Rational(m1);
    tag.params["m2"] = Rational(m2);
    tag.params["a"] = av;
    tag.params["alpha"] = vmin.moment;
    tag.params["r"] = Rational(Int((long)ks.size()));
    std::sort(ks.begin(), ks.end());
    int idx = 1;
    for (const auto& k : ks)
        tag.params["k" + std::to_string(idx++)] = Rational(k);
    return tag;
}

}  // namespace

ClassifyResult classify_minimal(const Multigraph& g) {
    GraphAnalysis a(g);
    if (!a.ok())
        throw InvalidGraph("classify_minimal: graph does not validate:\n" + a.report().str());
    ClassifyResult res;

    auto cands = down_candidates(g, a);
    if (!cands.empty()) {
        res.kind = ClassifyResult::Kind::NotMinimal;
        res.reason = "a blow-down applies";
        return res;
    }

    Shape s = shape_of(g, a);
    std::string why;
    std::optional<FamilyTag> tag;
    if (!tag)
        tag = match_I_II(g, a, s, true, why);
    if (!tag)
        tag = match_I_II(g, a, s, false, why);
    if (!tag)
        tag = match_III(g, a, s, why);
    if (!tag)
        tag = match_A(g, a, s, why);
    if (!tag)
        tag = match_C(g, a, s, why);
    if (!tag)
        tag = match_B(g, a, s, why);
    if (tag) {
        res.kind = ClassifyResult::Kind::Matched;
        res.tag = tag;
        return res;
    }
    res.kind = ClassifyResult::Kind::NoMatch;
    res.reason = why.empty() ? "no family template matches the shape" : why;
    return res;
}

VerifyReport verify_all(const Multigraph& g) {
    VerifyReport rep;
    rep.pass = true;
    ValidationReport vr = validate(g);
    for (const auto& i : vr.issues) {
        rep.lines.push_back((i.warning ? "warning [" : "error [") + i.where + "]: " + i.message);
        if (!i.warning)
            rep.pass = false;
    }
    if (!rep.pass)
        return rep;
    rep.lines.push_back("validation: ok");

    bool any_fat = false;
    for (const auto& v : g.vertices)
        any_fat |= v.fat();
    SurfaceDegrees betas;
    if (any_fat) {
        try {
            betas = solve_surface_degrees(g);
            for (const auto& [id, d] : betas)
                rep.lines.push_back("surface " + id + ": beta = " + d.beta.str() +
                                    ", lambda = " + std::to_string(d.lambda));
        } catch (const Error& e) {
            rep.lines.push_back(std::string("surface degrees: ") + e.what());
            rep.pass = false;
            return rep;
        }
    }
    Rational r1 = check_integral_one(g, betas);
    Rational r2 = check_integral_omega(g, betas);
    Rational r3 = check_integral_c1(g, betas);
    rep.lines.push_back("localization residual (1): " + r1.str());
    rep.lines.push_back("localization residual (omega): " + r2.str());
    rep.lines.push_back("localization residual (c1): " + r3.str());
    if (!r1.is_zero() || !r2.is_zero() || !r3.is_zero())
        rep.pass = false;

    for (size_t e = 0; e < g.edges.size(); ++e) {
        const Edge& ed = g.edges[e];
        Rational area = (g.find(ed.north)->moment - g.find(ed.south)->moment) / Rational(ed.k);
        rep.lines.push_back("edge " + ed.south + "-" + ed.north + " k=" + ed.k.get_str() +
                            ": area = " + area.str());
        if (!(area > Rational(0)))
            rep.pass = false;
    }
    for (const auto& v : g.vertices) {
        if (!v.fat())
            continue;
        try {
            SeifertInvariant si = fat_vertex_seifert(g, v.id);
            rep.lines.push_back("seifert " + v.id + ": " + si.str());
        } catch (const Error& e) {
            rep.lines.push_back(std::string("seifert ") + v.id + ": " + e.what());
            rep.pass = false;
        }
    }
    return rep;
}

}  // namespace orbigraph
