#include "mcgl/terminalize.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace mcgl {

QuotientPair QuotientPair::from_group(const DiagonalGroup& g) {
    QuotientPair p;
    p.lattice = std::make_shared<OverLattice>(g.n(), g.elements());
    BoundaryDivisor b = boundary_divisor(g);
    for (std::int64_t e : b.orders) p.axis_orders.push_back(e);
    p.psi = CoefficientFunctional(*p.lattice, p.axis_orders);
    return p;
}

QuotientPair QuotientPair::from_parts(std::shared_ptr<const OverLattice> lattice,
                                      std::vector<Int> axis_orders) {
    QuotientPair p;
    p.psi = CoefficientFunctional(*lattice, axis_orders);
    p.lattice = std::move(lattice);
    p.axis_orders = std::move(axis_orders);
    return p;
}

std::vector<CandidateRay> candidate_rays(const QuotientPair& pair) {
    const OverLattice& N = *pair.lattice;
    const int n = N.dim();
    // Bounding box of the region { v in sigma_0 : psi(v) <= 1 }.
    Vec lo(n, Rat(0)), hi(n);
    for (int i = 0; i < n; ++i) {
        Vec e(n, Rat(0));
        e[i] = 1;
        Rat p = pair.psi.value(e);
        if (p <= 0) throw ComputeError("pair is not KLT along axis " + std::to_string(i));
        hi[i] = 1 / p;
    }
    std::vector<CandidateRay> out;
    for (const Vec& v : N.points_in_box(lo, hi)) {
        if (vec_is_zero(v)) continue;
        if (pair.psi.value(v) > 1) continue;
        int support = 0;
        for (const Rat& q : v)
            if (q != 0) ++support;
        if (support <= 1) continue;  // axis points: boundary rays or multiples
        if (N.primitive(v) != v) continue;
        out.push_back({v, pair.psi.coefficient(v)});
    }
    std::sort(out.begin(), out.end(), [](const CandidateRay& a, const CandidateRay& b) {
        if (a.coefficient != b.coefficient) return a.coefficient > b.coefficient;
        return vec_lex_less(a.ray, b.ray);
    });
    return out;
}

std::string to_string(StepKind k) {
    switch (k) {
        case StepKind::Divisorial: return "divisorial";
        case StepKind::Flip: return "flip";
        case StepKind::CrepantDivisorial: return "crepant_divisorial";
        case StepKind::Flop: return "flop";
    }
    return "?";
}

std::string to_string(Strategy s) {
    switch (s) {
        case Strategy::CoefficientThenLex: return "coefficient-then-lex";
        case Strategy::LexForward: return "lex-forward";
        case Strategy::LexReverse: return "lex-reverse";
    }
    return "?";
}

namespace {

// ---------------------------------------------------------------------------
// Elementary moves of the MMP engine. A move is either an inverse stellar
// subdivision (delete one ray, merge its star) or a bistellar wall exchange.
// ---------------------------------------------------------------------------

struct Move {
    bool removal = false;
    int ray = -1;                    // removal: ray index
    Wall wall;                       // flip: the exchanged wall
    std::vector<Cone> erase_cones;   // cones to delete (by value)
    std::vector<Cone> add_cones;     // replacement cones
    Rat degree0;                     // eps^0 part of the most negative wall
    Rat degree1;                     // eps^1 part (selection key)
    std::string tiebreak;
};

// Per-ray divisor coefficients of K + B + (1+eps)E on the current model,
// split into the eps^0 and eps^1 parts. In phase 2 the eps part is the
// reduced exceptional divisor F.
struct DegreeData {
    std::map<int, Rat> d0;
    std::map<int, Rat> d1;
};

DegreeData degree_data(const FanModel& fan, const QuotientPair& pair, bool phase1) {
    DegreeData d;
    for (int i = 0; i < static_cast<int>(fan.rays().size()); ++i) {
        if (fan.is_boundary_ray(i)) {
            Rat b = 1 - Rat(1, fan.ray_order(i));
            d.d0[i] = b - 1;
            d.d1[i] = 0;
        } else {
            Rat e = pair.psi.coefficient(fan.rays()[i]);
            d.d0[i] = e - 1;
            d.d1[i] = phase1 ? e : Rat(1);
        }
    }
    return d;
}

std::pair<Rat, Rat> wall_degree_pair(const FanModel& fan, const Wall& w,
                                     const DegreeData& d) {
    return {wall_degree(fan, w, d.d0), wall_degree(fan, w, d.d1)};
}

// Link of a ray: graph on the other rays of its star cones. Returns the
// star cone list plus either a closed cycle or an open path of link rays.
struct LinkShape {
    std::vector<Cone> star;
    std::vector<int> sequence;  // cycle (closed) or path (open) of ray indices
    bool cycle = false;
    bool valid = false;
};

LinkShape link_of_ray(const FanModel& fan, int ray) {
    LinkShape shape;
    const int n = fan.dim();
    for (const Cone& c : fan.cones())
        if (std::binary_search(c.begin(), c.end(), ray)) shape.star.push_back(c);
    if (shape.star.empty()) return shape;
    if (n == 2) {
        if (shape.star.size() != 2) return shape;
        for (const Cone& c : shape.star)
            for (int i : c)
                if (i != ray) shape.sequence.push_back(i);
        shape.cycle = false;
        shape.valid = shape.sequence.size() == 2;
        return shape;
    }
    if (n != 3) return shape;
    // Adjacency on link rays: each star cone contributes one edge.
    std::map<int, std::vector<int>> adj;
    for (const Cone& c : shape.star) {
        std::vector<int> other;
        for (int i : c)
            if (i != ray) other.push_back(i);
        if (other.size() != 2) return shape;
        adj[other[0]].push_back(other[1]);
        adj[other[1]].push_back(other[0]);
    }
    std::vector<int> ends;
    for (const auto& [v, nb] : adj) {
        if (nb.size() == 1) ends.push_back(v);
        else if (nb.size() != 2) return shape;
    }
    if (ends.size() != 0 && ends.size() != 2) return shape;
    shape.cycle = ends.empty();
    int start = shape.cycle ? adj.begin()->first : std::min(ends[0], ends[1]);
    int prev = -1, cur = start;
    shape.sequence.push_back(cur);
    while (true) {
        int nxt = -1;
        for (int cand : adj[cur])
            if (cand != prev) {
                nxt = cand;
                break;
            }
        if (nxt == -1) break;
        if (shape.cycle && nxt == start) break;
        // Walking a path back onto itself would indicate a broken link.
        if (!shape.cycle && nxt == start) return shape;
        shape.sequence.push_back(nxt);
        prev = cur;
        cur = nxt;
        if (shape.sequence.size() > adj.size()) return shape;
    }
    shape.valid = shape.sequence.size() == adj.size();
    return shape;
}

// Positive-combination test: v in relint of the cone of the given rays.
bool in_relative_interior(const FanModel& fan, const std::vector<int>& rays,
                          const Vec& v) {
    Mat m;
    for (int i : rays) m.push_back(fan.rays()[i]);
    Vec t;
    if (!mat_solve_left(m, v, t)) return false;
    Vec recon(v.size(), Rat(0));
    for (size_t k = 0; k < m.size(); ++k) {
        if (t[k] <= 0) return false;
        recon = vec_add(recon, vec_scale(t[k], m[k]));
    }
    return recon == v;
}

std::optional<Wall> find_wall(const std::vector<Wall>& walls, std::vector<int> key) {
    std::sort(key.begin(), key.end());
    for (const Wall& w : walls)
        if (w.rays == key) return w;
    return std::nullopt;
}

// Attempts the inverse stellar subdivision at `ray`; on success fills the
// cones to erase/add and the contracted wall list.
struct RemovalPlan {
    bool ok = false;
    std::vector<Cone> erase_cones;
    std::vector<Cone> add_cones;
    std::vector<Wall> contracted;  // interior walls whose curves contract
};

RemovalPlan plan_removal(const FanModel& fan, int ray,
                         const std::vector<Wall>& walls) {
    RemovalPlan plan;
    const int n = fan.dim();
    LinkShape link = link_of_ray(fan, ray);
    if (!link.valid) return plan;
    const Vec& v = fan.rays()[ray];
    auto sorted_cone = [](std::vector<int> c) {
        std::sort(c.begin(), c.end());
        return c;
    };
    if (n == 2) {
        if (!in_relative_interior(fan, link.sequence, v)) return plan;
        plan.erase_cones = link.star;
        plan.add_cones.push_back(sorted_cone(link.sequence));
        if (auto w = find_wall(walls, {ray})) plan.contracted.push_back(*w);
        if (plan.contracted.empty()) return plan;  // boundary ray: not removable
        plan.ok = true;
        return plan;
    }
    if (n != 3) return plan;
    const auto& seq = link.sequence;
    if (link.cycle && seq.size() == 3) {
        if (!in_relative_interior(fan, seq, v)) return plan;
        plan.erase_cones = link.star;
        plan.add_cones.push_back(sorted_cone(seq));
        for (int x : seq) {
            auto w = find_wall(walls, {ray, x});
            if (!w) return plan;
            plan.contracted.push_back(*w);
        }
        plan.ok = true;
        return plan;
    }
    if (link.cycle && seq.size() == 4) {
        for (int diag = 0; diag < 2; ++diag) {
            int a = seq[diag], b = seq[diag + 2];
            int x = seq[(diag + 1) % 4], y = seq[(diag + 3) % 4];
            if (!in_relative_interior(fan, {a, b}, v)) continue;
            plan.erase_cones = link.star;
            plan.add_cones = {sorted_cone({a, b, x}), sorted_cone({a, b, y})};
            for (int t : {x, y}) {
                auto w = find_wall(walls, {ray, t});
                if (!w) return plan;
                plan.contracted.push_back(*w);
            }
            plan.ok = true;
            return plan;
        }
        return plan;
    }
    if (!link.cycle && seq.size() == 3) {
        // Ray in the relative interior of a boundary wall; two-cone star.
        int a = seq.front(), mid = seq[1], b = seq.back();
        if (!in_relative_interior(fan, {a, b}, v)) return plan;
        plan.erase_cones = link.star;
        plan.add_cones.push_back(sorted_cone({a, mid, b}));
        auto w = find_wall(walls, {ray, mid});
        if (!w) return plan;
        plan.contracted.push_back(*w);
        plan.ok = true;
        return plan;
    }
    return plan;
}

std::string ray_key(const FanModel& fan, int i) { return vec_str(fan.rays()[i]); }

std::string wall_key(const FanModel& fan, const Wall& w) {
    std::string s;
    for (int i : w.rays) s += ray_key(fan, i) + "&";
    return s;
}

std::vector<Move> collect_moves(const FanModel& fan, const QuotientPair& pair,
                                bool phase1, const std::vector<Rat>& coeff) {
    DegreeData dd = degree_data(fan, pair, phase1);
    std::vector<Wall> walls = interior_walls(fan);
    std::map<std::vector<int>, std::pair<Rat, Rat>> degree_cache;
    auto degrees_of = [&](const Wall& w) {
        auto it = degree_cache.find(w.rays);
        if (it != degree_cache.end()) return it->second;
        auto d = wall_degree_pair(fan, w, dd);
        if (d.first != 0)
            throw ComputeError("K+B+E wall degree nonzero (internal): " +
                               rat_str(d.first));
        degree_cache[w.rays] = d;
        return d;
    };
    std::vector<Move> moves;
    // Removals.
    for (int ray : fan.exceptional_ray_indices()) {
        bool positive = coeff[ray] > 0;
        if (phase1 != positive) continue;
        RemovalPlan plan = plan_removal(fan, ray, walls);
        if (!plan.ok) continue;
        bool admissible = true;
        Rat worst0 = 0, worst1 = 0;
        bool first = true;
        for (const Wall& w : plan.contracted) {
            auto [d0, d1] = degrees_of(w);
            if (!(d1 < 0)) admissible = false;
            if (first || d1 < worst1) {
                worst0 = d0;
                worst1 = d1;
                first = false;
            }
        }
        if (!admissible) continue;
        Move m;
        m.removal = true;
        m.ray = ray;
        m.erase_cones = plan.erase_cones;
        m.add_cones = plan.add_cones;
        m.degree0 = worst0;
        m.degree1 = worst1;
        m.tiebreak = "r" + ray_key(fan, ray);
        moves.push_back(std::move(m));
    }
    // Flips (3D only).
    if (fan.dim() == 3) {
        for (const Wall& w : walls) {
            WallRelation rel = wall_relation(fan, w);
            if (rel.gamma.size() != 2 || rel.gamma[0] <= 0 || rel.gamma[1] <= 0)
                continue;
            auto [d0, d1] = degrees_of(w);
            if (!(d1 < 0)) continue;
            Move m;
            m.removal = false;
            m.wall = w;
            m.erase_cones = {fan.cones()[w.cone_a], fan.cones()[w.cone_b]};
            Cone c1 = {w.opposite_a, w.opposite_b, w.rays[0]};
            Cone c2 = {w.opposite_a, w.opposite_b, w.rays[1]};
            std::sort(c1.begin(), c1.end());
            std::sort(c2.begin(), c2.end());
            m.add_cones = {c1, c2};
            m.degree0 = d0;
            m.degree1 = d1;
            m.tiebreak = "w" + wall_key(fan, w);
            moves.push_back(std::move(m));
        }
    }
    std::sort(moves.begin(), moves.end(), [](const Move& a, const Move& b) {
        if (a.degree1 != b.degree1) return a.degree1 < b.degree1;
        if (a.removal != b.removal) return a.removal;  // removals first
        return a.tiebreak < b.tiebreak;
    });
    return moves;
}

FanModel apply_move(const FanModel& fan, const Move& m) {
    std::vector<Cone> next;
    auto erased = [&](const Cone& c) {
        return std::find(m.erase_cones.begin(), m.erase_cones.end(), c) !=
               m.erase_cones.end();
    };
    for (const Cone& c : fan.cones())
        if (!erased(c)) next.push_back(c);
    for (const Cone& c : m.add_cones) next.push_back(c);
    FanModel out = fan;
    out.replace_cones(std::move(next), m.removal);
    return out;
}

// Localized monotonicity certificate: the two models agree outside the
// changed region, so compare the sub-fans covering exactly that region.
LogCanonicalOrder step_monotonicity(const FanModel& before, const Move& m,
                                    const FanModel& after) {
    std::vector<Vec> rays_before, rays_after;
    std::vector<Cone> cones_before, cones_after;
    FanModel local_before = before;
    local_before.replace_cones(m.erase_cones, false);
    FanModel local_after = before;
    local_after.replace_cones(m.add_cones, false);
    (void)after;
    return compare_log_canonical(local_after, local_before);
}

std::string state_dump(const FanModel& fan, const std::vector<Rat>& coeff) {
    std::ostringstream os;
    os << "rays:";
    for (size_t i = 0; i < fan.rays().size(); ++i)
        os << " " << vec_str(fan.rays()[i]) << "(e=" << rat_str(coeff[i]) << ")";
    os << " cones:" << fan.cones().size();
    return os.str();
}

}  // namespace

std::vector<MMPStep> mmp_decompose(const FanModel& y, const FanModel& x,
                                   const QuotientPair& pair, std::int64_t step_cap) {
    for (const Vec& r : x.rays())
        if (y.ray_index(r) < 0)
            throw InputError("mmp_decompose: rays(X) must be contained in rays(Y)");
    std::vector<MMPStep> steps;
    FanModel cur = y;
    while (!cur.same_fan(x)) {
        if (static_cast<std::int64_t>(steps.size()) >= step_cap)
            throw ComputeError("MMP iteration cap (" + std::to_string(step_cap) +
                               ") exceeded");
        std::vector<Rat> coeff(cur.rays().size());
        bool any_positive = false;
        bool any_exceptional = false;
        for (size_t i = 0; i < cur.rays().size(); ++i) {
            coeff[i] = pair.psi.coefficient(cur.rays()[i]);
            if (!cur.is_boundary_ray(static_cast<int>(i))) {
                any_exceptional = true;
                if (coeff[i] > 0) any_positive = true;
            }
        }
        if (!any_exceptional)
            throw ComputeError("MMP reached a model with no exceptional rays that "
                               "differs from X (internal)");
        bool phase1 = any_positive;
        std::vector<Move> moves = collect_moves(cur, pair, phase1, coeff);
        if (moves.empty())
            throw ComputeError("no admissible MMP step found before reaching X; " +
                               state_dump(cur, coeff));
        const Move& mv = moves.front();
        FanModel next = apply_move(cur, mv);
        MMPStep step;
        step.before = cur;
        step.after = next;
        step.degree_eps0 = mv.degree0;
        step.degree_eps1 = mv.degree1;
        if (mv.removal) {
            step.kind = phase1 ? StepKind::Divisorial : StepKind::CrepantDivisorial;
            step.contracted_ray = cur.rays()[mv.ray];
        } else {
            step.kind = phase1 ? StepKind::Flip : StepKind::Flop;
            for (int i : mv.wall.rays) step.wall_removed.push_back(cur.rays()[i]);
            step.wall_added = {cur.rays()[mv.wall.opposite_a],
                               cur.rays()[mv.wall.opposite_b]};
        }
        step.monotonicity = step_monotonicity(cur, mv, next);
        if (step.monotonicity != LogCanonicalOrder::Equal &&
            step.monotonicity != LogCanonicalOrder::AGreater)
            throw ComputeError("MMP step fails monotonicity: " +
                               to_string(step.monotonicity));
        steps.push_back(std::move(step));
        cur = std::move(next);
    }
    return steps;
}

TerminalizationResult build_maximal_terminalization(const QuotientPair& pair,
                                                    const TerminalizeOptions& opt) {
    TerminalizationResult res;
    res.x = pair.quotient_cone_model();
    res.candidates = candidate_rays(pair);
    std::vector<CandidateRay> order = res.candidates;
    switch (opt.strategy) {
        case Strategy::CoefficientThenLex:
            break;  // candidate_rays already sorts this way
        case Strategy::LexForward:
            std::sort(order.begin(), order.end(),
                      [](const CandidateRay& a, const CandidateRay& b) {
                          return vec_lex_less(a.ray, b.ray);
                      });
            break;
        case Strategy::LexReverse:
            std::sort(order.begin(), order.end(),
                      [](const CandidateRay& a, const CandidateRay& b) {
                          return vec_lex_less(b.ray, a.ray);
                      });
            break;
    }
    res.y = res.x;
    for (const CandidateRay& c : order) res.y.stellar_subdivide(c.ray);
    // Certificate: every maximal cone is terminal, and the multiplicities
    // add up to the lattice index (volume additivity).
    res.certificate_ok = true;
    Int total_mult = 0;
    for (const Cone& c : res.y.cones()) {
        Mat rays = res.y.cone_rays(c);
        ConeCertificate cert;
        cert.cone_rays = rays;
        cert.multiplicity = cone_multiplicity(rays, *pair.lattice);
        TerminalityResult t = is_terminal(rays, *pair.lattice);
        cert.terminal = t.terminal;
        if (!t.terminal) res.certificate_ok = false;
        total_mult += cert.multiplicity;
        res.terminality.push_back(std::move(cert));
    }
    if (total_mult != pair.lattice->index()) res.certificate_ok = false;
    if (!res.certificate_ok)
        throw ComputeError("terminalization certificate failed (internal)");
    if (opt.decompose) {
        std::int64_t cap =
            opt.mmp_cap_multiplier * std::max<std::int64_t>(1, res.candidates.size());
        res.steps = mmp_decompose(res.y, res.x, pair, cap);
    }
    return res;
}

FlopPath flop_connect(const TerminalizationResult& y1,
                      const TerminalizationResult& y2, const QuotientPair& pair,
                      std::int64_t state_cap) {
    FlopPath path;
    if (y1.y.rays() != y2.y.rays())
        throw InputError("flop_connect requires identical ray sets");
    if (y1.y.same_fan(y2.y)) {
        path.found = true;
        return path;
    }
    // K+B+E coefficients: this divisor is the pullback of K_X+B, so every
    // wall exchange between maximal terminalizations is a flop; each
    // exchange's degree is still computed and certified to vanish.
    struct Node {
        FanModel fan;
        int parent;
        FlopExchange via;
    };
    std::vector<Node> nodes;
    std::set<std::string> seen;
    nodes.push_back({y1.y, -1, {}});
    seen.insert(y1.y.cone_key());
    std::deque<int> queue = {0};
    while (!queue.empty()) {
        int at = queue.front();
        queue.pop_front();
        const FanModel fan = nodes[at].fan;
        std::map<int, Rat> kbe;
        for (int i = 0; i < static_cast<int>(fan.rays().size()); ++i) {
            Rat e = fan.is_boundary_ray(i) ? 1 - Rat(1, fan.ray_order(i))
                                           : pair.psi.coefficient(fan.rays()[i]);
            kbe[i] = e - 1;
        }
        for (const Wall& w : interior_walls(fan)) {
            WallRelation rel = wall_relation(fan, w);
            if (rel.gamma.size() != 2 || rel.gamma[0] <= 0 || rel.gamma[1] <= 0)
                continue;
            Rat deg = wall_degree(fan, w, kbe);
            if (deg != 0)
                throw ComputeError("flop search met a non-crepant wall (internal)");
            Move m;
            m.removal = false;
            m.erase_cones = {fan.cones()[w.cone_a], fan.cones()[w.cone_b]};
            Cone c1 = {w.opposite_a, w.opposite_b, w.rays[0]};
            Cone c2 = {w.opposite_a, w.opposite_b, w.rays[1]};
            std::sort(c1.begin(), c1.end());
            std::sort(c2.begin(), c2.end());
            m.add_cones = {c1, c2};
            FanModel next = apply_move(fan, m);
            if (!seen.insert(next.cone_key()).second) continue;
            FlopExchange ex;
            for (int i : w.rays) ex.wall_removed.push_back(fan.rays()[i]);
            ex.wall_added = {fan.rays()[w.opposite_a], fan.rays()[w.opposite_b]};
            ex.degree = deg;
            nodes.push_back({next, at, ex});
            int id = static_cast<int>(nodes.size()) - 1;
            if (next.same_fan(y2.y)) {
                std::vector<FlopExchange> rev;
                for (int cur = id; nodes[cur].parent >= 0; cur = nodes[cur].parent)
                    rev.push_back(nodes[cur].via);
                std::reverse(rev.begin(), rev.end());
                path.found = true;
                path.exchanges = std::move(rev);
                path.states_explored = static_cast<std::int64_t>(nodes.size());
                return path;
            }
            if (static_cast<std::int64_t>(nodes.size()) > state_cap)
                throw ComputeError("flop_connect state cap exceeded");
            queue.push_back(id);
        }
    }
    path.states_explored = static_cast<std::int64_t>(nodes.size());
    return path;  // not found (distinct components would be a theory violation)
}

}  // namespace mcgl
