#pragma once

#include "mcgl/terminalize.hpp"

namespace mcgl {

/// K0-rank shadow of the derived category of the stack attached to a fan
/// model: sum over maximal cones of the index of the sublattice spanned by
/// the order-scaled primitive generators.
Int k0_rank(const FanModel& fan);

/// Same rank with explicit per-axis boundary orders (overriding the model's
/// own), used while walking the boundary-drop chain.
Int k0_rank_with_orders(const FanModel& fan, const std::vector<Int>& axis_orders);

/// One semi-orthogonal summand of the census. Types follow the main
/// theorem: 0 = point, 1 = curve, 2 = surface.
struct SODComponent {
    int component_type = 0;
    std::string center_kind;          // "origin" | "axis" | "hyperplane"
    std::vector<int> center_subspace; // coordinate indices spanning V_j
    Int multiplicity = 1;
    Int rank_each = 1;
    std::string provenance;           // which drop or step produced it
};

struct CensusReport {
    std::vector<SODComponent> components;
    Int y_rank = 0;        // rank of the terminal model without stack boundary
    Int total_rank = 0;    // sum of component ranks + y_rank
    Int group_order = 0;
};

/// Assembles the SOD census from a terminalization: boundary drops on Y
/// first (one per axis with nontrivial order, ascending), then one batch of
/// components per non-crepant MMP step, with all multiplicities obtained by
/// exact rank division. Errors on any rank-identity failure.
CensusReport sod_census(const TerminalizationResult& t, const QuotientPair& pair,
                        const DiagonalGroup& g);

struct ProjectiveCollectionReport {
    Int count = 0;                    // (n+1) * |G|
    Int irrep_count = 0;              // must equal |G| for abelian G
    bool cohomology_vanishing_ok = false;  // H^m(P^n, O(d)) = 0, -n <= d < 0
    bool orthogonality_ok = false;         // character sums at i = j
    Int hh0_rank = 0;                 // Hochschild shadow: rank of HH_0
    bool hh_higher_vanish = true;
    std::vector<std::string> failures;
};

/// The full exceptional collection count on [P^n/G] for abelian G, with the
/// Hom-vanishing checks done through exact cohomology dimensions on P^n and
/// character-sum invariants.
ProjectiveCollectionReport projective_collection(int n, const DiagonalGroup& g);

/// dim H^m(P^n, O(d)), exact.
Int projective_space_cohomology(int n, std::int64_t d, int m);

}  // namespace mcgl
