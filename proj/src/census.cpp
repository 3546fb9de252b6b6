#include "mcgl/census.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace mcgl {

namespace {

Int rank_of_cone(const FanModel& fan, const Cone& c,
                 const std::vector<Int>& axis_orders) {
    Mat scaled;
    for (int i : c) {
        int axis = fan.ray_axis(i);
        Int order = axis >= 0 ? axis_orders[axis] : Int(1);
        scaled.push_back(vec_scale(Rat(order), fan.rays()[i]));
    }
    return fan.lattice().sublattice_index(scaled);
}

}  // namespace

Int k0_rank(const FanModel& fan) {
    return k0_rank_with_orders(fan, fan.boundary_orders());
}

Int k0_rank_with_orders(const FanModel& fan, const std::vector<Int>& axis_orders) {
    Int total = 0;
    for (const Cone& c : fan.cones()) total += rank_of_cone(fan, c, axis_orders);
    return total;
}

namespace {

// The stacky model of a center V(tau): star of tau projected to the
// quotient lattice, with adjunction orders r_i * t_i on the images.
struct QuotientModel {
    Lattice lattice;
    Mat rays;                      // primitive images, deduplicated
    std::vector<std::vector<int>> cones;
    std::vector<Int> orders;       // per ray
};

Int quotient_model_rank(const QuotientModel& m) {
    if (m.lattice.dim() == 0) return 1;  // point center
    Int total = 0;
    for (const auto& c : m.cones) {
        Mat scaled;
        for (int i : c) scaled.push_back(vec_scale(Rat(m.orders[i]), m.rays[i]));
        total += m.lattice.sublattice_index(scaled);
    }
    return total;
}

// axis_orders: stack orders of the ambient pair per axis (1 after a drop).
QuotientModel center_model(const FanModel& fan, const std::vector<int>& tau,
                           const std::vector<Int>& axis_orders) {
    QuotientModel model;
    Mat span;
    for (int i : tau) span.push_back(fan.rays()[i]);
    if (static_cast<int>(tau.size()) == fan.dim()) {
        model.lattice = Lattice::from_generators(0, {});
        return model;  // point center
    }
    LatticeQuotient q = quotient_by_span(fan.lattice().lattice(), span);
    model.lattice = q.image;
    std::map<Vec, int, bool (*)(const Vec&, const Vec&)> ray_ids(vec_lex_less);
    std::set<std::vector<int>> cone_set;
    for (const Cone& c : fan.cones()) {
        bool contains_tau = true;
        for (int i : tau)
            if (!std::binary_search(c.begin(), c.end(), i)) contains_tau = false;
        if (!contains_tau) continue;
        std::vector<int> image_cone;
        for (int i : c) {
            if (std::find(tau.begin(), tau.end(), i) != tau.end()) continue;
            Vec proj = q.project(fan.rays()[i]);
            Vec prim = model.lattice.primitive(proj);
            Int t = model.lattice.content(proj);
            int axis = fan.ray_axis(i);
            Int order = (axis >= 0 ? axis_orders[axis] : Int(1)) * t;
            auto [it, inserted] = ray_ids.emplace(prim, static_cast<int>(model.rays.size()));
            if (inserted) {
                model.rays.push_back(prim);
                model.orders.push_back(order);
            } else if (model.orders[it->second] != order) {
                throw ComputeError("conflicting adjunction orders on a center ray");
            }
            image_cone.push_back(it->second);
        }
        std::sort(image_cone.begin(), image_cone.end());
        cone_set.insert(image_cone);
    }
    model.cones.assign(cone_set.begin(), cone_set.end());
    return model;
}

// Minimal face of the quotient cone containing a set of rays: the union of
// coordinate supports. The component's V_j is the complementary subspace.
std::vector<int> complement_support(const Mat& rays, int n) {
    std::vector<bool> hit(n, false);
    for (const Vec& r : rays)
        for (int i = 0; i < n; ++i)
            if (r[i] != 0) hit[i] = true;
    std::vector<int> out;
    for (int i = 0; i < n; ++i)
        if (!hit[i]) out.push_back(i);
    return out;
}

std::string center_kind_of(const std::vector<int>& subspace, int n) {
    if (subspace.empty()) return "origin";
    if (static_cast<int>(subspace.size()) == n - 1) return "hyperplane";
    return "axis";
}

}  // namespace

CensusReport sod_census(const TerminalizationResult& t, const QuotientPair& pair,
                        const DiagonalGroup& g) {
    CensusReport report;
    report.group_order = g.order();
    const int n = pair.lattice->dim();
    const std::vector<Int> full_orders = pair.axis_orders;

    // Stage 1: boundary drops on Y, one prime divisor at a time, ascending
    // axis. Each drop of order r to 1 contributes |Lambda| = r - 1 copies of
    // the divisor's quotient model.
    std::vector<Int> cur = full_orders;
    for (int axis = 0; axis < n; ++axis) {
        if (full_orders[axis] <= 1) continue;
        std::vector<Int> next = cur;
        next[axis] = 1;
        Int rank_before = k0_rank_with_orders(t.y, cur);
        Int rank_after = k0_rank_with_orders(t.y, next);
        Int delta = rank_before - rank_after;
        int ray = t.y.ray_index(pair.lattice->boundary_ray(axis));
        if (ray < 0) throw ComputeError("boundary ray missing from Y (internal)");
        QuotientModel f = center_model(t.y, {ray}, cur);
        Int rank_f = quotient_model_rank(f);
        Int lambda = full_orders[axis] - 1;
        if (delta != lambda * rank_f)
            throw ComputeError(
                "boundary drop rank identity failed on axis " + std::to_string(axis) +
                ": delta=" + delta.str() + " lambda=" + lambda.str() +
                " rank(F)=" + rank_f.str());
        SODComponent comp;
        comp.component_type = n - 1;
        for (int i = 0; i < n; ++i)
            if (i != axis) comp.center_subspace.push_back(i);
        comp.center_kind = center_kind_of(comp.center_subspace, n);
        comp.multiplicity = lambda;
        comp.rank_each = rank_f;
        comp.provenance = "boundary-drop axis " + std::to_string(axis);
        report.components.push_back(std::move(comp));
        cur = next;
    }

    // Stage 2: MMP steps from Y to X, full boundary orders throughout.
    for (size_t si = 0; si < t.steps.size(); ++si) {
        const MMPStep& step = t.steps[si];
        Int rank_before = k0_rank_with_orders(step.before, full_orders);
        Int rank_after = k0_rank_with_orders(step.after, full_orders);
        Int delta = rank_after - rank_before;
        std::string provenance = "step " + std::to_string(si) + " (" +
                                 to_string(step.kind) + ")";
        if (step.kind == StepKind::CrepantDivisorial || step.kind == StepKind::Flop) {
            if (delta != 0)
                throw ComputeError("crepant step changed the rank: " + provenance +
                                   " delta=" + delta.str());
            continue;
        }
        if (delta < 0)
            throw ComputeError("rank decreased along " + provenance);
        std::vector<int> tau;
        if (step.kind == StepKind::Flip) {
            // A 3D flip lies over a point of the common contraction.
            tau.assign({});
        } else {
            const Vec& v = *step.contracted_ray;
            int cone_idx = step.after.find_containing_cone(v);
            if (cone_idx < 0) throw ComputeError("contracted ray escaped the fan");
            const Cone& c = step.after.cones()[cone_idx];
            auto coords = step.after.cone_coordinates(c, v);
            for (size_t k = 0; k < c.size(); ++k)
                if ((*coords)[k] != 0) tau.push_back(c[k]);
        }
        SODComponent comp;
        Int rank_f = 1;
        if (step.kind == StepKind::Flip || static_cast<int>(tau.size()) == n) {
            comp.component_type = 0;
            comp.center_kind = "origin";
            rank_f = 1;
        } else {
            Mat tau_rays;
            for (int i : tau) tau_rays.push_back(step.after.rays()[i]);
            QuotientModel f = center_model(step.after, tau, full_orders);
            rank_f = quotient_model_rank(f);
            comp.component_type = n - static_cast<int>(tau.size());
            comp.center_subspace = complement_support(tau_rays, n);
            comp.center_kind = center_kind_of(comp.center_subspace, n);
        }
        if (rank_f == 0 || delta % rank_f != 0)
            throw ComputeError("non-integral multiplicity at " + provenance +
                               ": delta=" + delta.str() + " rank(F)=" + rank_f.str());
        comp.multiplicity = delta / rank_f;
        comp.rank_each = rank_f;
        comp.provenance = provenance;
        if (comp.multiplicity > 0) report.components.push_back(std::move(comp));
    }

    std::vector<Int> ones(n, Int(1));
    report.y_rank = k0_rank_with_orders(t.y, ones);
    report.total_rank = report.y_rank;
    for (const SODComponent& c : report.components)
        report.total_rank += c.multiplicity * c.rank_each;
    if (report.total_rank != report.group_order) {
        std::ostringstream os;
        os << "total rank identity failed: total=" << report.total_rank
           << " |G|=" << report.group_order << "; components:";
        for (const SODComponent& c : report.components)
            os << " [" << c.provenance << " mult=" << c.multiplicity
               << " rank=" << c.rank_each << "]";
        os << " y_rank=" << report.y_rank;
        throw ComputeError(os.str());
    }
    return report;
}

Int projective_space_cohomology(int n, std::int64_t d, int m) {
    auto binom = [](Int a, int k) {
        if (k < 0) return Int(0);
        Int r = 1;
        for (int i = 0; i < k; ++i) r = r * (a - i) / (i + 1);
        return r;
    };
    if (m == 0) return d >= 0 ? binom(Int(n + d), n) : Int(0);
    if (m == n) return d <= -n - 1 ? binom(Int(-d - 1), n) : Int(0);
    return 0;
}

ProjectiveCollectionReport projective_collection(int n, const DiagonalGroup& g) {
    if (g.n() != n) throw InputError("group dimension mismatch");
    ProjectiveCollectionReport rep;
    rep.count = Int(n + 1) * g.order();

    // Irreducible characters of abelian G = Z^n / N^dual: the dual lattice
    // of the overlattice N sits inside Z^n with index |G|.
    OverLattice N(n, g.elements());
    Mat basis = N.lattice().basis();
    Mat dual_rows(n, Vec(n));
    {
        // Rows of the inverse transpose of the basis matrix.
        Mat cols(n, Vec(2 * n, Rat(0)));
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) cols[i][j] = basis[j][i];
            cols[i][n + i] = 1;
        }
        for (int col = 0, row = 0; col < n && row < n; ++col, ++row) {
            int piv = row;
            while (piv < n && cols[piv][col] == 0) ++piv;
            if (piv == n) throw ComputeError("singular lattice basis");
            std::swap(cols[piv], cols[row]);
            Rat inv = cols[row][col];
            for (int c = 0; c < 2 * n; ++c) cols[row][c] /= inv;
            for (int r = 0; r < n; ++r) {
                if (r == row || cols[r][col] == 0) continue;
                Rat f = cols[r][col];
                for (int c = 0; c < 2 * n; ++c) cols[r][c] -= f * cols[row][c];
            }
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) dual_rows[i][j] = cols[j][n + i];
    }
    Lattice dual = Lattice::from_generators(n, dual_rows);
    // Sanity: the character sum of a weight vector u over G is |G| exactly
    // when u pairs integrally with every group element.
    auto character_trivial = [&](const Vec& u) { return dual.contains(u); };

    // Enumerate coset representatives of Z^n modulo the dual lattice via the
    // HNF diagonal box.
    std::vector<Vec> reps;
    {
        const IntMat& h = dual.basis_int();
        if (dual.denominator() != 1)
            throw ComputeError("dual lattice not integral (internal)");
        std::vector<Int> diag(n);
        for (int i = 0; i < n; ++i) diag[i] = h[i][i];
        std::vector<Int> idx(n, 0);
        while (true) {
            Vec u(n);
            for (int i = 0; i < n; ++i) u[i] = Rat(idx[i]);
            reps.push_back(u);
            int k = n - 1;
            while (k >= 0) {
                idx[k] += 1;
                if (idx[k] < diag[k]) break;
                idx[k] = 0;
                --k;
            }
            if (k < 0) break;
        }
    }
    rep.irrep_count = Int(reps.size());
    if (rep.irrep_count != g.order())
        rep.failures.push_back("irrep count " + rep.irrep_count.str() +
                               " != |G| = " + Int(g.order()).str());

    // Semiorthogonality between twists: for -n <= j - i < 0 every cohomology
    // of O(d) on P^n vanishes, so the equivariant Hom vanishes for any pair
    // of characters.
    rep.cohomology_vanishing_ok = true;
    for (int d = -n; d < 0; ++d)
        for (int m = 0; m <= n; ++m)
            if (projective_space_cohomology(n, d, m) != 0) {
                rep.cohomology_vanishing_ok = false;
                rep.failures.push_back("H^" + std::to_string(m) + "(O(" +
                                       std::to_string(d) + ")) != 0");
            }

    // Same-twist block: Hom(V_rho, V_rho') = invariants of the character
    // difference; exactly C for rho = rho', zero otherwise.
    rep.orthogonality_ok = true;
    for (size_t a = 0; a < reps.size(); ++a) {
        for (size_t b = 0; b < reps.size(); ++b) {
            bool trivial = character_trivial(vec_sub(reps[a], reps[b]));
            if (trivial != (a == b)) {
                rep.orthogonality_ok = false;
                rep.failures.push_back("orthogonality failed for pair (" +
                                       std::to_string(a) + "," + std::to_string(b) + ")");
            }
        }
    }

    rep.hh0_rank = rep.count;
    rep.hh_higher_vanish = true;
    return rep;
}

}  // namespace mcgl
