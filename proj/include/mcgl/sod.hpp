#pragma once

#include <cstdint>

#include "mcgl/rational.hpp"

namespace mcgl {

/// A line bundle on a local stack model, O(-sum m_i D~_i), recorded by the
/// integer twist vector m against the stack orders s_i.
struct StackLineBundle {
    std::vector<Int> m;
};

/// The local model of the boundary-drop comparison: same underlying toric
/// chart, source stack orders r_i, target orders s_i with r_i >= s_i and
/// equality away from the distinguished index 0.
struct LocalCaseOneModel {
    std::vector<Int> r;
    std::vector<Int> s;

    int n() const { return static_cast<int>(r.size()); }
    void validate() const;
};

/// phi(m)_i = ceil(m_i r_i / s_i) / r_i, the twist of the image line bundle.
Vec phi_image(const std::vector<Int>& m, const std::vector<Int>& r,
              const std::vector<Int>& s);

/// Lambda = {k in [0, r1) : k is not an attained ceiling ceil(m r1/s1)};
/// |Lambda| = r1 - s1. Verified internally against brute force.
std::vector<Int> lambda_set(const Int& r1, const Int& s1);

/// The two-sided ceiling identity underlying fully-faithfulness:
/// ceil((a-b)/s) == ceil((ceil(a r/s) - ceil(b r/s))/r).
bool ceiling_identity_holds(const Int& a, const Int& b, const Int& r, const Int& s);

/// Graded dimensions (total monomial degree 0..cutoff) of
/// Hom(L(a), L(b)) = sections of the rounded divisor: lattice points u with
/// u_i >= ceil((b_i - a_i)/s_i).
std::vector<Int> hom_graded_dim(const StackLineBundle& a, const StackLineBundle& b,
                                const std::vector<Int>& s, int cutoff);

/// Pushforward route to the same dimensions on a quotient chart: invariant
/// monomials w (orders | w_i) with w_i >= c_i, graded by w_i / order_i.
/// Equality with hom_graded_dim after rounding is the Phi_0 Hom-preservation.
std::vector<Int> invariant_section_dims(const std::vector<Int>& c,
                                        const std::vector<Int>& orders, int cutoff);

struct CaseOneCertificate {
    bool fully_faithful_ok = false;
    std::int64_t ff_checked = 0;
    bool semiorthogonality_ok = false;
    std::int64_t so_checked = 0;
    bool rank_generation_ok = false;   // rank-level generation, not categorical
    Int rank_source = 0;
    Int rank_target = 0;
    Int rank_center = 0;
    Int lambda_size = 0;
    std::vector<std::string> failures;  // counterexample tuples, if any
    bool passed() const {
        return fully_faithful_ok && semiorthogonality_ok && rank_generation_ok;
    }
};

/// Machine verification of the case-1 semi-orthogonal decomposition at the
/// level of its exact lattice shadow: (i) the ceiling identity over a grid,
/// (ii) vanishing of Hom from Phi-images into each Phi_k via the
/// divisibility pushforward criterion on monomial gradings, (iii) the
/// K0-rank identity rank(source) = |Lambda| rank(center) + rank(target).
CaseOneCertificate verify_case1_sod(const LocalCaseOneModel& model, int cutoff,
                                    std::uint64_t seed = 0);

}  // namespace mcgl
