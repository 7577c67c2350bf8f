#include "orbigraph/rewrite.hpp"

#include "orbigraph/localization.hpp"
#include "orbigraph/seifert.hpp"

#include <algorithm>
#include <sstream>

namespace orbigraph {

std::string to_string(Variant v) {
    return v == Variant::P1 ? "p1" : "p2";
}

std::string to_string(RewriteCase c) {
    switch (c) {
        case RewriteCase::I: return "I";
        case RewriteCase::II: return "II";
        case RewriteCase::III: return "III";
        case RewriteCase::IV: return "IV";
    }
    return "?";
}

std::string RewriteRecord::str() const {
    std::ostringstream os;
    os << "case=" << to_string(rewrite_case) << (at_max ? "^" : "") << " vertex=" << spec.vertex
       << " ti=" << spec.type_index << " variant=" << to_string(spec.variant)
       << " b1=" << spec.b1.get_str() << " b2=" << spec.b2.get_str() << " eps=" << epsilon.str()
       << " created=";
    for (size_t i = 0; i < created.size(); ++i)
        os << (i ? "," : "") << created[i];
    os << " removed=";
    for (size_t i = 0; i < removed.size(); ++i)
        os << (i ? "," : "") << removed[i];
    return os.str();
}

BlowDownTarget handle_of(const RewriteRecord& rec) {
    switch (rec.handle) {
        case RewriteRecord::Handle::FatH:
            return BlowDownTarget::fat(rec.locus_fat);
        case RewriteRecord::Handle::PairH:
            return BlowDownTarget::pair(rec.locus_south, rec.locus_north);
        case RewriteRecord::Handle::EdgeH:
        default:
            return BlowDownTarget::pair(rec.locus_south, rec.locus_north);
    }
}

namespace {

// Tie-break key for reattaching equal-label stubs: larger key goes with the
// larger new exceptional order.
std::tuple<Int, Rational, int> far_key(const Multigraph& g, size_t edge, size_t self) {
    const Edge& e = g.edges[edge];
    size_t other = g.index_of(e.south) == self ? g.index_of(e.north) : g.index_of(e.south);
    const Vertex& v = g.vertices[other];
    return {v.fat() ? Int(0) : v.order(), v.moment, v.fat() ? 1 : 0};
}

struct Prep {
    size_t vi = 0;
    bool fat_target = false;
    bool interior = false, at_max = false;
    RewriteCase rcase = RewriteCase::I;
    Int m, l, lp, gamma, b, k, p;
    Int a1, a2;  // a1 >= a2
    std::optional<size_t> stub1, stub2;
    int ipos = 1;
    Int M1, M2;  // new orders at positions 1, 2
    Int s1, s2;  // type labels (0 when the order is 1)
    Rational coeff1, coeff2;  // |d moment|/d eps at positions 1, 2
    Rational coeff_iv;        // case IV: off-surface vertex
    Int conn;                 // connecting edge label (0 in case III)
    std::optional<size_t> surf_edge;  // case IV: edge at the targeted point
};

Int checked_div(const Int& num, const Int& den, const char* what) {
    if (mod_floor(num, den) != 0)
        throw Error(std::string("internal: ") + what + " not divisible");
    return num / den;
}

Prep prepare(const Multigraph& g, const GraphAnalysis& a, const BlowUpSpec& spec,
             bool allow_regular_isolated) {
    if (!a.ok())
        throw InvalidGraph("blow_up: graph does not validate:\n" + a.report().str());
    Prep pr;
    pr.vi = g.index_of(spec.vertex);
    const Vertex& v = g.vertices[pr.vi];
    pr.fat_target = v.fat();

    if (spec.b1 < 1 || spec.b2 < 1 || gcd(spec.b1, spec.b2) != 1)
        throw InvalidSpec("blow_up: b1, b2 must be coprime positive");

    if (pr.fat_target) {
        pr.rcase = RewriteCase::IV;
        pr.at_max = a.is_max(pr.vi);
        if (!a.is_min(pr.vi) && !pr.at_max)
            throw InvalidGraph("blow_up: fat vertex is not extremal");
        if (spec.type_index == -1) {
            pr.m = 1;
            pr.l = 0;
        } else {
            if (spec.type_index < 0 || (size_t)spec.type_index >= v.types.size())
                throw InvalidSpec("blow_up: type_index out of range");
            pr.m = v.types[spec.type_index].m;
            pr.l = v.types[spec.type_index].l;
        }
        pr.p = 1;
        pr.k = pr.m;
        if (pr.at_max) {
            pr.a1 = 0;
            pr.a2 = -1;
        } else {
            pr.a1 = 1;
            pr.a2 = 0;
        }
        if (pr.m >= 2) {
            // The isotropy sphere through the targeted point.  When several
            // points share the order, instances pair with the equally
            // labeled edges in canonical order.
            std::vector<size_t> cands;
            for (auto [e, su] : a.incidence(pr.vi))
                if (g.edges[e].k == pr.m)
                    cands.push_back(e);
            std::sort(cands.begin(), cands.end(), [&](size_t x, size_t y) {
                auto kx = far_key(g, x, pr.vi), ky = far_key(g, y, pr.vi);
                return kx != ky ? kx < ky : x < y;
            });
            size_t rank = 0;
            for (int t = 0; t < spec.type_index; ++t)
                if (v.types[t].m == pr.m)
                    ++rank;
            if (rank >= cands.size())
                throw InvalidGraph("blow_up: missing isotropy sphere at the targeted point");
            pr.surf_edge = cands[rank];
        }
    } else {
        if (spec.type_index < 0 || (size_t)spec.type_index >= v.types.size())
            throw InvalidSpec("blow_up: type_index out of range");
        pr.m = v.types[spec.type_index].m;
        pr.l = v.types[spec.type_index].l;
        if (pr.m == 1 && !allow_regular_isolated)
            throw InvalidSpec("blow_up: regular isolated fixed points are not blown up");
        const auto& w = a.weights(pr.vi);
        if (!w)
            throw InvalidGraph("blow_up: no orbi-weight data at the target");
        pr.p = w->p;
        pr.a1 = w->a1;
        pr.a2 = w->a2;
        pr.stub1 = w->edge_a1;
        pr.stub2 = w->edge_a2;
        pr.interior = !a.is_min(pr.vi) && !a.is_max(pr.vi);
        pr.at_max = a.is_max(pr.vi);
    }

    // Variant congruences.
    if (spec.variant == Variant::P1) {
        if (mod_floor(spec.b1 * pr.l - spec.b2, pr.m) != 0)
            throw InvalidSpec("blow_up: P1 requires b1*l - b2 = 0 mod m");
        pr.b = (spec.b1 * pr.l - spec.b2) / pr.m;
        pr.k = pr.m / pr.p;
    } else {
        if (!(pr.p < pr.m))
            throw InvalidSpec("blow_up: P2 requires p < m");
        if (mod_floor(spec.b1 * pr.l - spec.b2, pr.p) != 0)
            throw InvalidSpec("blow_up: P2 requires b1*l - b2 = 0 mod p");
        pr.b = (spec.b1 * pr.l - spec.b2) / pr.p;
        pr.k = pr.m / pr.p;
        if (gcd(pr.b, pr.k) != 1)
            throw InvalidSpec("blow_up: P2 requires gcd(b, k) = 1");
    }
    pr.lp = pr.m >= 2 ? mod_inverse(pr.l, pr.m) : Int(0);
    pr.gamma = checked_div(1 - pr.l * pr.lp, pr.m, "gamma");

    Int D = pr.a1 * spec.b2 - pr.a2 * spec.b1;
    if (!pr.fat_target) {
        if (pr.interior)
            pr.rcase = RewriteCase::I;
        else if (D != 0)
            pr.rcase = RewriteCase::II;
        else {
            pr.rcase = RewriteCase::III;
            if (spec.variant == Variant::P1 && pr.p != pr.m)
                throw InvalidSpec("blow_up: case III under P1 needs p = m");
            if (abs(pr.a1) != spec.b1 || abs(pr.a2) != spec.b2)
                throw InvalidSpec("blow_up: case III needs b_i = |a_i|");
        }
    }

    pr.ipos = (spec.b2 * abs(pr.a1) > spec.b1 * abs(pr.a2) && pr.a1 != 0) ? 1 : 2;
    Int scale = spec.variant == Variant::P1 ? Int(1) : pr.k;
    pr.M1 = spec.b1 * scale;
    pr.M2 = spec.b2 * scale;

    if (pr.fat_target && pr.m == 1) {
        Int bj = pr.ipos == 1 ? spec.b2 : spec.b1;
        if (bj != 1)
            throw InvalidSpec("blow_up: a regular surface point admits only b_j = 1");
    }

    // Exceptional type labels (the threshold picks the preferred
    // representative at each new point).
    auto label1 = [&]() -> Int {
        if (pr.M1 == 1)
            return 0;
        Int thr_lhs = spec.variant == Variant::P1 ? pr.a1 * pr.m : pr.a1 * pr.p;
        Int rhs = pr.a2 * spec.b1 - pr.a1 * spec.b2;
        Int bm = mod_floor(pr.b, pr.M1);
        if (bm == 0)
            throw InvalidSpec("blow_up: degenerate exceptional label (b = 0 mod b1)");
        return thr_lhs >= rhs ? bm : mod_inverse(bm, pr.M1);
    };
    auto label2 = [&]() -> Int {
        if (pr.M2 == 1)
            return 0;
        Int t = pr.b * pr.lp + spec.b1 * (spec.variant == Variant::P1 ? pr.gamma : pr.k * pr.gamma);
        Int thr_lhs = spec.variant == Variant::P1 ? pr.a2 * pr.m : pr.a2 * pr.p;
        Int rhs = pr.a1 * spec.b2 - pr.a2 * spec.b1;
        Int tm = mod_floor(t, pr.M2);
        if (thr_lhs >= rhs) {
            Int s = mod_floor(-t, pr.M2);
            if (s == 0)
                throw InvalidSpec("blow_up: degenerate exceptional label (t = 0 mod b2)");
            return s;
        }
        if (tm == 0 || gcd(tm, pr.M2) != 1)
            throw InvalidSpec("blow_up: degenerate exceptional label (t not a unit)");
        return mod_floor(-mod_inverse(tm, pr.M2), pr.M2);
    };
    try {
        pr.s1 = label1();
        pr.s2 = label2();
    } catch (const NotCoprime& e) {
        throw InvalidSpec(std::string("blow_up: ") + e.what());
    }

    if (pr.rcase == RewriteCase::IV) {
        Int bi = pr.ipos == 1 ? spec.b1 : spec.b2;
        Int bj = pr.ipos == 1 ? spec.b2 : spec.b1;
        pr.coeff_iv = spec.variant == Variant::P1 ? Rational(pr.m, bi) : Rational(Int(1), bi);
        pr.conn = spec.variant == Variant::P1 ? bj : bj * pr.m;
    } else {
        if (spec.variant == Variant::P1) {
            pr.coeff1 = Rational(pr.k * abs(pr.a1), spec.b1);
            pr.coeff2 = Rational(pr.k * abs(pr.a2), spec.b2);
            pr.conn = pr.rcase == RewriteCase::III
                          ? Int(0)
                          : checked_div(abs(D), pr.p, "connecting label");
        } else {
            pr.coeff1 = Rational(abs(pr.a1), spec.b1);
            pr.coeff2 = Rational(abs(pr.a2), spec.b2);
            pr.conn = pr.rcase == RewriteCase::III
                          ? Int(0)
                          : checked_div(abs(D) * pr.k, pr.p, "connecting label");
        }
    }

    // Equal-label outer stubs at an extremum: pair the larger new order
    // with the canonically larger far endpoint (deterministic; matches the
    // worked desingularization figure).
    if (!pr.fat_target && !pr.interior && pr.a1 == pr.a2 && pr.stub1 && pr.stub2 &&
        pr.M1 != pr.M2) {
        auto k1 = far_key(g, *pr.stub1, pr.vi);
        auto k2 = far_key(g, *pr.stub2, pr.vi);
        bool want_first_larger = pr.M1 > pr.M2;
        if ((want_first_larger && k1 < k2) || (!want_first_larger && k2 < k1))
            std::swap(pr.stub1, pr.stub2);
    }
    return pr;
}

Rational second_extreme(const Multigraph& g, size_t skip, bool from_min) {
    std::optional<Rational> best;
    for (size_t i = 0; i < g.vertices.size(); ++i) {
        if (i == skip)
            continue;
        const Rational& h = g.vertices[i].moment;
        if (!best || (from_min ? h < *best : h > *best))
            best = h;
    }
    if (!best)
        throw InvalidSpec("blow_up: graph has no other vertex");
    return *best;
}

Rational far_moment(const Multigraph& g, size_t edge, size_t self) {
    const Edge& e = g.edges[edge];
    size_t other = g.index_of(e.south) == self ? g.index_of(e.north) : g.index_of(e.south);
    return g.vertices[other].moment;
}

AdmissibleBound admissible(const Multigraph& g, const GraphAnalysis& a, const Prep& pr,
                           const BlowUpSpec& spec) {
    const Vertex& v = g.vertices[pr.vi];
    const Rational alpha = v.moment;
    std::vector<Rational> bounds;

    auto up_bound = [&](const std::optional<size_t>& stub, const Rational& coeff) {
        if (coeff.is_zero())
            return;
        Rational top = stub ? far_moment(g, *stub, pr.vi) : a.max_moment();
        bounds.push_back((top - alpha) / coeff);
    };
    auto down_bound = [&](const std::optional<size_t>& stub, const Rational& coeff) {
        if (coeff.is_zero())
            return;
        Rational bot = stub ? far_moment(g, *stub, pr.vi) : a.min_moment();
        bounds.push_back((alpha - bot) / coeff);
    };

    switch (pr.rcase) {
        case RewriteCase::I:
            up_bound(pr.stub1, pr.coeff1);
            down_bound(pr.stub2, pr.coeff2);
            break;
        case RewriteCase::II: {
            Rational cj = pr.ipos == 1 ? pr.coeff2 : pr.coeff1;
            Rational gap = pr.at_max ? alpha - second_extreme(g, pr.vi, false)
                                     : second_extreme(g, pr.vi, true) - alpha;
            bounds.push_back(gap / cj);
            const auto& stub_i = pr.ipos == 1 ? pr.stub1 : pr.stub2;
            Rational ci = pr.ipos == 1 ? pr.coeff1 : pr.coeff2;
            if (pr.at_max)
                down_bound(stub_i, ci);
            else
                up_bound(stub_i, ci);
            break;
        }
        case RewriteCase::III: {
            Rational gap = pr.at_max ? alpha - second_extreme(g, pr.vi, false)
                                     : second_extreme(g, pr.vi, true) - alpha;
            bounds.push_back(gap);
            break;
        }
        case RewriteCase::IV: {
            Int bj = pr.ipos == 1 ? spec.b2 : spec.b1;
            Rational area_cap = spec.variant == Variant::P1 ? v.area * Rational(bj)
                                                            : v.area * Rational(pr.m * bj);
            bounds.push_back(area_cap);
            std::optional<size_t> stub = pr.surf_edge;
            if (pr.at_max)
                down_bound(stub, pr.coeff_iv);
            else
                up_bound(stub, pr.coeff_iv);
            break;
        }
    }

    AdmissibleBound out;
    if (bounds.empty()) {
        out.unbounded = true;
        return out;
    }
    out.sup = bounds.front();
    for (const auto& b : bounds)
        if (b < out.sup)
            out.sup = b;
    return out;
}

// Two-label normalization for a freshly created isolated vertex.
std::vector<SingularType> normalize_point_labels(const Int& m, const Int& l, bool equal_weights) {
    if (m == 1)
        return {SingularType{1, 0}};
    if (equal_weights) {
        Int li = mod_inverse(l, m);
        if (li != l)
            return {SingularType{m, std::min(l, li)}, SingularType{m, std::max(l, li)}};
    }
    return {SingularType{m, l}};
}

std::pair<Multigraph, RewriteRecord> blow_up_impl(const Multigraph& g, const BlowUpSpec& spec,
                                                  bool allow_regular_isolated) {
    GraphAnalysis a(g);
    Prep pr = prepare(g, a, spec, allow_regular_isolated);
    AdmissibleBound adm = admissible(g, a, pr, spec);
    Rational eps;
    if (spec.epsilon) {
        eps = *spec.epsilon;
        if (!(eps > Rational(0)) || (!adm.unbounded && !(eps < adm.sup)))
            throw InadmissibleSize("blow_up: size " + eps.str() + " is not admissible (sup " +
                                   (adm.unbounded ? std::string("inf") : adm.sup.str()) + ")");
    } else {
        if (adm.unbounded)
            throw InvalidSpec("blow_up: unbounded admissible size; a size is required");
        eps = adm.sup / Rational(2);
    }

    Multigraph out = g;
    RewriteRecord rec;
    rec.spec = spec;
    rec.spec.epsilon = eps;
    rec.rewrite_case = pr.rcase;
    rec.at_max = pr.at_max;
    rec.epsilon = eps;
    const Vertex v = g.vertices[pr.vi];
    const Rational alpha = v.moment;
    int dir = pr.at_max ? -1 : 1;

    auto reattach = [&](size_t edge, const std::string& fresh) {
        Edge& e = out.edges[edge];
        if (e.south == v.id)
            e.south = fresh;
        else
            e.north = fresh;
    };
    auto erase_vertex = [&](const std::string& id) {
        out.vertices.erase(out.vertices.begin() + out.index_of(id));
    };

    switch (pr.rcase) {
        case RewriteCase::I:
        case RewriteCase::II: {
            std::string id1 = out.fresh_id("x");
            Vertex v1;
            v1.id = id1;
            v1.types = normalize_point_labels(pr.M1, pr.s1, false);
            v1.moment = pr.rcase == RewriteCase::I ? alpha + pr.coeff1 * eps
                                                   : alpha + Rational(dir) * pr.coeff1 * eps;
            out.vertices.push_back(v1);
            std::string id2 = out.fresh_id("x");
            Vertex v2;
            v2.id = id2;
            v2.types = normalize_point_labels(pr.M2, pr.s2, false);
            v2.moment = pr.rcase == RewriteCase::I ? alpha - pr.coeff2 * eps
                                                   : alpha + Rational(dir) * pr.coeff2 * eps;
            out.vertices.push_back(v2);
            if (pr.stub1)
                reattach(*pr.stub1, id1);
            if (pr.stub2)
                reattach(*pr.stub2, id2);
            if (pr.conn >= 2) {
                const Vertex& w1 = *out.find(id1);
                const Vertex& w2 = *out.find(id2);
                Edge e;
                e.k = pr.conn;
                if (w1.moment < w2.moment) {
                    e.south = id1;
                    e.north = id2;
                } else {
                    e.south = id2;
                    e.north = id1;
                }
                out.edges.push_back(e);
            }
            erase_vertex(v.id);
            // Label sets need the final weights (for the two-label rule).
            {
                GraphAnalysis post(out);
                auto fill = [&](const std::string& id, const Int& M, const Int& s) {
                    size_t i = out.index_of(id);
                    bool eq = post.weights(i) && post.weights(i)->a1 == post.weights(i)->a2;
                    out.vertices[i].types = normalize_point_labels(M, s, eq);
                };
                fill(id1, pr.M1, pr.s1);
                fill(id2, pr.M2, pr.s2);
            }
            rec.created = {id1, id2};
            rec.removed = {v.id};
            const Vertex& w1 = *out.find(id1);
            const Vertex& w2 = *out.find(id2);
            rec.handle = pr.conn >= 2 ? RewriteRecord::Handle::EdgeH : RewriteRecord::Handle::PairH;
            if (w1.moment < w2.moment) {
                rec.locus_south = id1;
                rec.locus_north = id2;
            } else {
                rec.locus_south = id2;
                rec.locus_north = id1;
            }
            break;
        }
        case RewriteCase::III: {
            std::string fid = out.fresh_id("x");
            Vertex f;
            f.id = fid;
            f.kind = VertexKind::Surface;
            f.genus = 0;
            f.moment = alpha + Rational(dir) * eps;
            f.area = spec.variant == Variant::P1
                         ? Rational(pr.m) * eps / Rational(pr.a1 * pr.a2)
                         : Rational(pr.p * pr.p) * eps / Rational(pr.a1 * pr.a2 * pr.m);
            if (pr.M1 >= 2)
                f.types.push_back({pr.M1, pr.s1});
            if (pr.M2 >= 2)
                f.types.push_back({pr.M2, pr.s2});
            std::sort(f.types.begin(), f.types.end());
            out.vertices.push_back(f);
            if (pr.stub1)
                reattach(*pr.stub1, fid);
            if (pr.stub2)
                reattach(*pr.stub2, fid);
            erase_vertex(v.id);
            rec.created = {fid};
            rec.removed = {v.id};
            rec.handle = RewriteRecord::Handle::FatH;
            rec.locus_fat = fid;
            break;
        }
        case RewriteCase::IV: {
            Int Mi = pr.ipos == 1 ? pr.M1 : pr.M2;
            Int si = pr.ipos == 1 ? pr.s1 : pr.s2;
            Int Mj = pr.ipos == 1 ? pr.M2 : pr.M1;
            Int sj = pr.ipos == 1 ? pr.s2 : pr.s1;
            std::string iid = out.fresh_id("x");
            Vertex iso;
            iso.id = iid;
            iso.types = normalize_point_labels(Mi, si, false);
            iso.moment = alpha + Rational(dir) * pr.coeff_iv * eps;
            out.vertices.push_back(iso);
            Vertex& f = *out.find(v.id);
            if (spec.type_index >= 0) {
                if (Mj >= 2)
                    f.types[spec.type_index] = {Mj, sj};
                else
                    f.types.erase(f.types.begin() + spec.type_index);
            } else if (Mj >= 2) {
                f.types.push_back({Mj, sj});
            }
            std::sort(f.types.begin(), f.types.end());
            f.area = f.area - (spec.variant == Variant::P1
                                   ? eps / Rational(pr.ipos == 1 ? spec.b2 : spec.b1)
                                   : eps / Rational(pr.m * (pr.ipos == 1 ? spec.b2 : spec.b1)));
            if (pr.surf_edge)
                reattach(*pr.surf_edge, iid);
            if (pr.conn >= 2) {
                Edge e;
                e.k = pr.conn;
                if (pr.at_max) {
                    e.south = iid;
                    e.north = v.id;
                } else {
                    e.south = v.id;
                    e.north = iid;
                }
                out.edges.push_back(e);
            }
            {
                GraphAnalysis post(out);
                size_t i = out.index_of(iid);
                bool eq = post.weights(i) && post.weights(i)->a1 == post.weights(i)->a2;
                out.vertices[i].types = normalize_point_labels(Mi, si, eq);
            }
            rec.created = {iid};
            rec.removed = {};
            rec.handle = pr.conn >= 2 ? RewriteRecord::Handle::EdgeH : RewriteRecord::Handle::PairH;
            if (pr.at_max) {
                rec.locus_south = iid;
                rec.locus_north = v.id;
            } else {
                rec.locus_south = v.id;
                rec.locus_north = iid;
            }
            break;
        }
    }

    ValidationReport post = validate(out);
    if (!post.ok())
        throw Error("blow_up: internal error, output does not validate:\n" + post.str());
    return {out, rec};
}

}  // namespace

RewriteCase classify_case(const Multigraph& g, const BlowUpSpec& spec) {
    GraphAnalysis a(g);
    return prepare(g, a, spec, false).rcase;
}

AdmissibleBound max_admissible(const Multigraph& g, const BlowUpSpec& spec) {
    GraphAnalysis a(g);
    Prep pr = prepare(g, a, spec, false);
    return admissible(g, a, pr, spec);
}

std::pair<Multigraph, RewriteRecord> blow_up(const Multigraph& g, const BlowUpSpec& spec) {
    return blow_up_impl(g, spec, false);
}

namespace {

struct Locus {
    bool fat_case = false;        // case III inverse
    bool surface_pole = false;    // case IV inverse
    size_t lo = 0, hi = 0;        // pole vertex indices (lo = south)
    std::optional<size_t> conn;   // connecting edge (when visible)
    Int c{1};                     // sphere label
    size_t fat_idx = 0;
};

Rational pair_transverse(const Multigraph& g, const GraphAnalysis& a, size_t vi, bool upward) {
    const Vertex& v = g.vertices[vi];
    if (v.fat())
        return Rational(0);
    const auto& w = a.weights(vi);
    if (!w)
        throw NoInverse("blow_down: no weights at pole '" + v.id + "'");
    // The free direction faces the partner; its weight slot is the one with
    // no edge attached (positions: a1 is the upward one at interior
    // vertices; at extrema both point the same way).
    bool min_v = a.is_min(vi), max_v = a.is_max(vi);
    if (!min_v && !max_v) {
        if (upward) {
            if (w->edge_a1)
                throw NoInverse("blow_down: no free upward direction at '" + v.id + "'");
            return w->w2();
        }
        if (w->edge_a2)
            throw NoInverse("blow_down: no free downward direction at '" + v.id + "'");
        return w->w1();
    }
    if ((min_v && !upward) || (max_v && upward))
        throw NoInverse("blow_down: extremum faces away from the free sphere");
    if (!w->edge_a2)
        return w->w1();
    if (!w->edge_a1)
        return w->w2();
    throw NoInverse("blow_down: no free direction at '" + v.id + "'");
}

Locus locate(const Multigraph& g, const GraphAnalysis& a, const BlowDownTarget& t) {
    Locus L;
    switch (t.kind) {
        case BlowDownTarget::Kind::Fat: {
            L.fat_case = true;
            L.fat_idx = g.index_of(t.fat_id);
            if (!g.vertices[L.fat_idx].fat())
                throw NotBlowDownable("blow_down: '" + t.fat_id + "' is not a fat vertex");
            return L;
        }
        case BlowDownTarget::Kind::EdgeIndex: {
            if (t.edge_index >= g.edges.size())
                throw InvalidGraph("blow_down: edge index out of range");
            const Edge& e = g.edges[t.edge_index];
            L.conn = t.edge_index;
            L.c = e.k;
            L.lo = g.index_of(e.south);
            L.hi = g.index_of(e.north);
            break;
        }
        case BlowDownTarget::Kind::Pair: {
            L.lo = g.index_of(t.pair_south);
            L.hi = g.index_of(t.pair_north);
            if (g.vertices[L.lo].moment > g.vertices[L.hi].moment)
                std::swap(L.lo, L.hi);
            L.c = 1;
            // A visible edge between the poles is the sphere itself.
            for (size_t e = 0; e < g.edges.size(); ++e)
                if (g.edges[e].south == g.vertices[L.lo].id &&
                    g.edges[e].north == g.vertices[L.hi].id) {
                    L.conn = e;
                    L.c = g.edges[e].k;
                    break;
                }
            break;
        }
    }
    bool lo_fat = g.vertices[L.lo].fat(), hi_fat = g.vertices[L.hi].fat();
    if (lo_fat && hi_fat)
        throw NotBlowDownable("blow_down: sphere joining two fixed surfaces has degree 0");
    L.surface_pole = lo_fat || hi_fat;
    if (L.surface_pole)
        L.fat_idx = lo_fat ? L.lo : L.hi;
    return L;
}

// Stub of an isolated pole: its edge other than the connecting one.
std::optional<size_t> outer_stub(const GraphAnalysis& a, size_t vi, std::optional<size_t> conn) {
    std::optional<size_t> out;
    for (auto [e, su] : a.incidence(vi)) {
        if (conn && e == *conn)
            continue;
        if (out)
            throw NoInverse("blow_down: pole has more than one outer edge");
        out = e;
    }
    return out;
}

std::vector<Int> unit_candidates(const Int& m) {
    std::vector<Int> out;
    if (m == 1) {
        out.push_back(0);
        return out;
    }
    for (Int l = 1; l < m; ++l)
        if (gcd(l, m) == 1)
            out.push_back(l);
    return out;
}

struct Candidate {
    Multigraph pre;
    BlowUpSpec spec;
};

void try_candidate(std::vector<Candidate>& found, const Multigraph& g, const Multigraph& pre,
                   const BlowUpSpec& spec, bool allow_regular) {
    try {
        auto [post, rec] = blow_up_impl(pre, spec, allow_regular);
        if (is_isomorphic(post, g)) {
            for (const auto& c : found)
                if (is_isomorphic(c.pre, pre))
                    return;
            found.push_back({pre, spec});
        }
    } catch (const Error&) {
        // invalid candidate; keep searching
    }
}

}  // namespace

std::pair<Multigraph, RewriteRecord> blow_down(const Multigraph& g, const BlowDownTarget& t) {
    GraphAnalysis a(g);
    if (!a.ok())
        throw InvalidGraph("blow_down: graph does not validate:\n" + a.report().str());
    Locus L = locate(g, a, t);

    std::vector<Candidate> found;

    if (L.fat_case) {
        // Case III inverse.
        const Vertex& f = g.vertices[L.fat_idx];
        if (f.genus != 0 || f.types.size() > 2)
            throw NotBlowDownable("blow_down: surface has genus > 0 or > 2 singular points");
        Rational beta = solve_surface_degrees(g).at(f.id).beta;
        if (!(beta < Rational(0)))
            throw NotBlowDownable("blow_down: surface has non-negative self-intersection");
        Int O1 = f.types.size() > 0 ? f.types[0].m : Int(1);
        Int O2 = f.types.size() > 1 ? f.types[1].m : Int(1);
        Int M;
        try {
            M = blow_down_order(beta, O1, O2);
        } catch (const NotIntegral& e) {
            throw NoInverse(std::string("blow_down: ") + e.what());
        }
        bool at_max = a.is_max(L.fat_idx);
        Rational eps = f.area * Rational(O1 * O2) / Rational(M);
        Rational alpha = at_max ? f.moment + eps : f.moment - eps;

        std::vector<size_t> stubs;
        for (auto [e, su] : a.incidence(L.fat_idx))
            stubs.push_back(e);

        for (const Int& l : unit_candidates(M)) {
            for (int swap = 0; swap < 2; ++swap) {
                Int b1 = swap ? O2 : O1, b2 = swap ? O1 : O2;
                for (Variant var : {Variant::P1, Variant::P2}) {
                    Int g0 = gcd(b1, b2);
                    Int B1 = b1, B2 = b2;
                    if (var == Variant::P2) {
                        // orders are b*k with k = gcd of the stub labels
                        Int kk = gcd(O1, O2);
                        if (kk < 2 || mod_floor(b1, kk) != 0 || mod_floor(b2, kk) != 0)
                            continue;
                        B1 = b1 / kk;
                        B2 = b2 / kk;
                    } else if (g0 != 1) {
                        continue;
                    }
                    Multigraph pre = g;
                    std::string nid = pre.fresh_id("bd");
                    Vertex nv;
                    nv.id = nid;
                    nv.moment = alpha;
                    nv.types = {SingularType{M, l}};
                    pre.vertices.push_back(nv);
                    for (size_t e : stubs) {
                        if (pre.edges[e].south == f.id)
                            pre.edges[e].south = nid;
                        else
                            pre.edges[e].north = nid;
                    }
                    pre.vertices.erase(pre.vertices.begin() + pre.index_of(f.id));
                    // Two-label storage when the pre-vertex has equal weights.
                    {
                        GraphAnalysis pa(pre);
                        size_t ni = pre.index_of(nid);
                        if (pa.weights(ni))
                            pre.vertices[ni].types = normalize_point_labels(
                                M, l, pa.weights(ni)->a1 == pa.weights(ni)->a2);
                    }
                    BlowUpSpec spec;
                    spec.vertex = nid;
                    {
                        const auto& ts = pre.find(nid)->types;
                        spec.type_index = 0;
                        for (size_t ti = 0; ti < ts.size(); ++ti)
                            if (ts[ti].l == l)
                                spec.type_index = (int)ti;
                    }
                    spec.variant = var;
                    spec.b1 = B1;
                    spec.b2 = B2;
                    spec.epsilon = eps;
                    try_candidate(found, g, pre, spec, false);
                }
            }
        }
        if (found.empty())
            throw NoInverse("blow_down: no blow-up reproduces the surface locus");
        if (found.size() > 1)
            throw Ambiguous("blow_down: multiple inequivalent inverses");
        RewriteRecord rec;
        rec.spec = found[0].spec;
        rec.rewrite_case = RewriteCase::III;
        rec.at_max = at_max;
        rec.epsilon = eps;
        rec.created = {found[0].spec.vertex};
        rec.removed = {f.id};
        rec.handle = RewriteRecord::Handle::FatH;
        rec.locus_fat = f.id;
        return {found[0].pre, rec};
    }

    if (L.surface_pole) {
        // Case IV inverse.
        size_t xi = L.fat_idx == L.lo ? L.hi : L.lo;
        const Vertex& f = g.vertices[L.fat_idx];
        const Vertex& x = g.vertices[xi];
        bool at_max = a.is_max(L.fat_idx);
        Rational d;
        if (L.conn)
            d = sphere_degree(a, *L.conn);
        else {
            Rational tr = pair_transverse(g, a, xi, at_max);
            d = at_max ? (tr - Rational(0)) / Rational(L.c) : (Rational(0) - tr) / Rational(L.c);
        }
        if (!(d < Rational(0)))
            throw NotBlowDownable("blow_down: sphere has non-negative self-intersection");
        Int Of = L.c;  // order of the surface-side point (1 for a free sphere)
        if (!L.conn)
            Of = 1;
        Int M;
        try {
            M = blow_down_order(d, x.order(), Of);
        } catch (const NotIntegral& e) {
            throw NoInverse(std::string("blow_down: ") + e.what());
        }
        std::optional<size_t> m_edge = outer_stub(a, xi, L.conn);
        // Surface-side type instance paired with this sphere.
        int fat_ti = -1;
        if (Of >= 2) {
            std::vector<size_t> cands;
            for (auto [e, su] : a.incidence(L.fat_idx))
                if (g.edges[e].k == Of)
                    cands.push_back(e);
            std::sort(cands.begin(), cands.end(), [&](size_t p, size_t q) {
                auto kp = far_key(g, p, L.fat_idx), kq = far_key(g, q, L.fat_idx);
                return kp != kq ? kp < kq : p < q;
            });
            size_t rank = 0;
            while (rank < cands.size() && cands[rank] != *L.conn)
                ++rank;
            size_t seen = 0;
            for (size_t ti = 0; ti < f.types.size(); ++ti)
                if (f.types[ti].m == Of && seen++ == rank)
                    fat_ti = (int)ti;
        }

        for (const Int& l : unit_candidates(M)) {
            for (Variant var : {Variant::P1, Variant::P2}) {
                Int bi, bj;
                if (var == Variant::P1) {
                    bi = x.order();
                    bj = Of;
                } else {
                    if (M < 2 || mod_floor(x.order(), M) != 0 || mod_floor(Of, M) != 0)
                        continue;
                    bi = x.order() / M;
                    bj = Of / M;
                }
                Rational coeff = var == Variant::P1 ? Rational(M, bi) : Rational(Int(1), bi);
                Rational gap = at_max ? f.moment - x.moment : x.moment - f.moment;
                Rational eps = gap / coeff;
                if (!(eps > Rational(0)))
                    continue;
                Multigraph pre = g;
                Vertex& pf = *pre.find(f.id);
                // Restore the surface point.
                if (fat_ti >= 0) {
                    if (M >= 2)
                        pf.types[fat_ti] = {M, l};
                    else
                        pf.types.erase(pf.types.begin() + fat_ti);
                } else if (M >= 2) {
                    pf.types.push_back({M, l});
                }
                std::sort(pf.types.begin(), pf.types.end());
                pf.area = pf.area + (var == Variant::P1 ? eps / Rational(bj)
                                                        : eps / Rational(M * bj));
                // The x-vertex's outer edge returns to the surface.
                if (m_edge) {
                    if (pre.edges[*m_edge].south == x.id)
                        pre.edges[*m_edge].south = f.id;
                    else
                        pre.edges[*m_edge].north = f.id;
                }
                if (L.conn)
                    pre.edges.erase(pre.edges.begin() + *L.conn);
                pre.vertices.erase(pre.vertices.begin() + pre.index_of(x.id));
                BlowUpSpec spec;
                spec.vertex = f.id;
                // Index of the restored instance in the sorted type list.
                spec.type_index = -1;
                if (M >= 2) {
                    const auto& ts = pre.find(f.id)->types;
                    for (size_t ti = 0; ti < ts.size(); ++ti)
                        if (ts[ti].m == M && ts[ti].l == l)
                            spec.type_index = (int)ti;
                }
                spec.variant = var;
                spec.b1 = at_max ? bj : bi;  // position i is 1 at a minimum
                spec.b2 = at_max ? bi : bj;
                spec.epsilon = eps;
                try_candidate(found, g, pre, spec, false);
            }
        }
        if (found.empty())
            throw NoInverse("blow_down: no blow-up reproduces the surface-pole locus");
        if (found.size() > 1)
            throw Ambiguous("blow_down: multiple inequivalent inverses");
        RewriteRecord rec;
        rec.spec = found[0].spec;
        rec.rewrite_case = RewriteCase::IV;
        rec.at_max = at_max;
        rec.epsilon = *found[0].spec.epsilon;
        rec.removed = {x.id};
        rec.handle = RewriteRecord::Handle::PairH;
        rec.locus_south = g.vertices[L.lo].id;
        rec.locus_north = g.vertices[L.hi].id;
        return {found[0].pre, rec};
    }

    // Cases I/II inverse: both poles isolated.
    const Vertex& vlo = g.vertices[L.lo];
    const Vertex& vhi = g.vertices[L.hi];
    Rational d;
    if (L.conn)
        d = sphere_degree(a, *L.conn);
    else {
        Rational mlo = pair_transverse(g, a, L.lo, true);
        Rational mhi = pair_transverse(g, a, L.hi, false);
        d = (mlo - mhi) / Rational(L.c);
    }
    if (!(d < Rational(0)))
        throw NotBlowDownable("blow_down: sphere has non-negative self-intersection");
    Int M;
    try {
        M = blow_down_order(d, vlo.order(), vhi.order());
    } catch (const NotIntegral& e) {
        throw NoInverse(std::string("blow_down: ") + e.what());
    }

    std::optional<size_t> stub_lo = outer_stub(a, L.lo, L.conn);
    std::optional<size_t> stub_hi = outer_stub(a, L.hi, L.conn);
    bool locus_has_min = a.is_min(L.lo);
    bool locus_has_max = a.is_max(L.hi);
    if (locus_has_min && locus_has_max)
        throw NoInverse("blow_down: locus spans both extrema");

    Rational hlo = vlo.moment, hhi = vhi.moment;

    for (const Int& l : unit_candidates(M)) {
        for (int swap = 0; swap < 2; ++swap) {
            // position 1 at the hi pole by default (case I); swapped covers
            // the other matching in case II.
            size_t p1 = swap ? L.lo : L.hi;
            size_t p2 = swap ? L.hi : L.lo;
            const Vertex& w1 = g.vertices[p1];
            const Vertex& w2 = g.vertices[p2];
            std::optional<size_t> st1 = p1 == L.hi ? stub_hi : stub_lo;
            std::optional<size_t> st2 = p2 == L.lo ? stub_lo : stub_hi;
            Int L1 = st1 ? g.edges[*st1].k : Int(1);
            Int L2 = st2 ? g.edges[*st2].k : Int(1);
            Int g0 = gcd(L1, L2);
            if (mod_floor(M, g0) != 0)
                continue;
            Int pp = M / g0;
            Int kk = g0;
            for (Variant var : {Variant::P1, Variant::P2}) {
                Int B1, B2;
                if (var == Variant::P1) {
                    B1 = w1.order();
                    B2 = w2.order();
                } else {
                    if (pp >= M || kk < 2 || mod_floor(w1.order(), kk) != 0 ||
                        mod_floor(w2.order(), kk) != 0)
                        continue;
                    B1 = w1.order() / kk;
                    B2 = w2.order() / kk;
                }
                // Moment coefficients at the two positions.
                Rational c1 = var == Variant::P1 ? Rational(kk * (L1 / g0), B1)
                                                 : Rational(L1 / g0, B1);
                Rational c2 = var == Variant::P1 ? Rational(kk * (L2 / g0), B2)
                                                 : Rational(L2 / g0, B2);
                Rational alpha, eps;
                if (!locus_has_min && !locus_has_max) {
                    // case I: position 1 above, 2 below
                    if (p1 != L.hi)
                        continue;
                    Rational den = c1 + c2;
                    if (den.is_zero())
                        continue;
                    eps = (hhi - hlo) / den;
                    alpha = hhi - c1 * eps;
                } else {
                    Rational h1 = w1.moment, h2 = w2.moment;
                    Rational den = locus_has_min ? c1 - c2 : c2 - c1;
                    if (den.is_zero())
                        continue;
                    eps = (h1 - h2) / den;
                    if (!(eps > Rational(0)))
                        continue;
                    alpha = locus_has_min ? h1 - c1 * eps : h1 + c1 * eps;
                }
                if (!(eps > Rational(0)))
                    continue;

                Multigraph pre = g;
                std::string nid = pre.fresh_id("bd");
                Vertex nv;
                nv.id = nid;
                nv.moment = alpha;
                nv.types = {SingularType{M, l}};
                pre.vertices.push_back(nv);
                for (auto st : {st1, st2})
                    if (st) {
                        if (pre.edges[*st].south == w1.id || pre.edges[*st].south == w2.id)
                            pre.edges[*st].south = nid;
                        else
                            pre.edges[*st].north = nid;
                    }
                if (L.conn)
                    pre.edges.erase(pre.edges.begin() + *L.conn);
                {
                    size_t i1 = pre.index_of(w1.id);
                    pre.vertices.erase(pre.vertices.begin() + i1);
                    size_t i2 = pre.index_of(w2.id);
                    pre.vertices.erase(pre.vertices.begin() + i2);
                }
                {
                    GraphAnalysis pa(pre);
                    size_t ni = pre.index_of(nid);
                    if (pa.weights(ni))
                        pre.vertices[ni].types = normalize_point_labels(
                            M, l, pa.weights(ni)->a1 == pa.weights(ni)->a2);
                }
                BlowUpSpec spec;
                spec.vertex = nid;
                spec.type_index = 0;
                {
                    const auto& ts = pre.find(nid)->types;
                    for (size_t ti = 0; ti < ts.size(); ++ti)
                        if (ts[ti].l == l)
                            spec.type_index = (int)ti;
                }
                spec.variant = var;
                spec.b1 = B1;
                spec.b2 = B2;
                spec.epsilon = eps;
                try_candidate(found, g, pre, spec, M == 1);
            }
        }
    }
    if (found.empty())
        throw NoInverse("blow_down: no blow-up reproduces the locus");
    if (found.size() > 1)
        throw Ambiguous("blow_down: multiple inequivalent inverses");
    RewriteRecord rec;
    rec.spec = found[0].spec;
    rec.rewrite_case = (locus_has_min || locus_has_max) ? RewriteCase::II : RewriteCase::I;
    rec.at_max = locus_has_max;
    rec.epsilon = *found[0].spec.epsilon;
    rec.created = {found[0].spec.vertex};
    rec.removed = {vlo.id, vhi.id};
    rec.handle = RewriteRecord::Handle::PairH;
    rec.locus_south = vlo.id;
    rec.locus_north = vhi.id;
    return {found[0].pre, rec};
}

}  // namespace orbigraph
