#pragma once

#include "mcgl/fan.hpp"

namespace mcgl {

/// A quotient pair (X,B): the overlattice plus per-axis boundary stack
/// orders and the induced coefficient functional.
struct QuotientPair {
    std::shared_ptr<const OverLattice> lattice;
    std::vector<Int> axis_orders;
    CoefficientFunctional psi;

    static QuotientPair from_group(const DiagonalGroup& g);
    static QuotientPair from_parts(std::shared_ptr<const OverLattice> lattice,
                                   std::vector<Int> axis_orders);

    FanModel quotient_cone_model() const {
        return FanModel::quotient_cone(lattice, axis_orders);
    }
};

/// A prime divisor above X that a maximal terminalization must extract:
/// primitive interior lattice point with non-negative coefficient.
struct CandidateRay {
    Vec ray;
    Rat coefficient;  // e(v) = 1 - psi_B(v) >= 0
};

/// All candidate rays, sorted by decreasing coefficient, ties lexicographic.
std::vector<CandidateRay> candidate_rays(const QuotientPair& pair);

enum class StepKind { Divisorial, Flip, CrepantDivisorial, Flop };

std::string to_string(StepKind k);

/// One monotone step of the decomposition Y -> ... -> X. Divisorial kinds
/// delete a ray and merge its star; flip kinds exchange one wall.
struct MMPStep {
    StepKind kind = StepKind::Divisorial;
    FanModel before;
    FanModel after;
    std::optional<Vec> contracted_ray;     // divisorial kinds
    std::vector<Vec> wall_removed;         // flip kinds
    std::vector<Vec> wall_added;           // flip kinds
    Rat degree_eps0;                       // K+B+(1+eps)E degree, eps^0 part
    Rat degree_eps1;                       // eps^1 part (selected < 0)
    LogCanonicalOrder monotonicity = LogCanonicalOrder::Equal;
};

/// Insertion-order strategy for the regular (pulling) triangulation; all
/// strategies produce maximal terminalizations, possibly different ones.
enum class Strategy { CoefficientThenLex, LexForward, LexReverse };

std::string to_string(Strategy s);

struct ConeCertificate {
    std::vector<Vec> cone_rays;
    bool terminal = false;
    Int multiplicity = 1;
};

struct TerminalizationResult {
    FanModel y;                       // the maximal terminalization
    FanModel x;                       // the quotient cone model
    std::vector<CandidateRay> candidates;
    std::vector<MMPStep> steps;       // monotone decomposition Y -> X
    std::vector<ConeCertificate> terminality;
    bool certificate_ok = false;      // all cones terminal, volume additive
};

struct TerminalizeOptions {
    Strategy strategy = Strategy::CoefficientThenLex;
    std::int64_t mmp_cap_multiplier = 10;
    bool decompose = true;  // run the MMP; off for fan-only uses
};

/// Builds the maximal Q-factorial terminalization as the pulling
/// triangulation on boundary + candidate rays (every candidate becomes a
/// vertex, so terminality of each cone is automatic and certified), then
/// decomposes it into monotone MMP steps.
TerminalizationResult build_maximal_terminalization(
    const QuotientPair& pair, const TerminalizeOptions& options = {});

/// Monotone MMP from y down to x: phase 1 contracts positive-coefficient
/// rays guided by negative wall degrees against K+B+(1+eps)E (eps symbolic,
/// lexicographic), phase 2 contracts coefficient-0 rays by crepant steps
/// and flops. Errors when no admissible step exists before reaching x.
std::vector<MMPStep> mmp_decompose(const FanModel& y, const FanModel& x,
                                   const QuotientPair& pair, std::int64_t step_cap);

struct FlopExchange {
    std::vector<Vec> wall_removed;
    std::vector<Vec> wall_added;
    Rat degree;  // against K+B+E; certified zero
};

struct FlopPath {
    bool found = false;
    std::vector<FlopExchange> exchanges;
    std::int64_t states_explored = 0;
};

/// Breadth-first search through degree-0 wall exchanges connecting two
/// maximal terminalizations on the same ray set.
FlopPath flop_connect(const TerminalizationResult& y1,
                      const TerminalizationResult& y2, const QuotientPair& pair,
                      std::int64_t state_cap = 20000);

}  // namespace mcgl
