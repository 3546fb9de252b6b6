#pragma once

#include <map>
#include <memory>
#include <optional>

#include "mcgl/group.hpp"
#include "mcgl/lattice.hpp"

namespace mcgl {

/// The linear functional psi_B on the quotient cone, determined by its
/// values 1 - b_i at the primitive boundary rays. Coefficients of divisors
/// are e(v) = 1 - psi_B(v); -e is the discrepancy, psi_B the log discrepancy.
class CoefficientFunctional {
  public:
    CoefficientFunctional() = default;

    /// psi with psi(boundary ray of axis i) = 1/r_i for boundary order r_i.
    CoefficientFunctional(const OverLattice& n, const std::vector<Int>& boundary_orders);

    const Vec& row() const { return row_; }
    Rat value(const Vec& v) const { return vec_dot(row_, v); }
    Rat coefficient(const Vec& v) const { return 1 - value(v); }

  private:
    Vec row_;
};

using Cone = std::vector<int>;  // sorted ray indices, size = dim

/// A simplicial fan subdividing the positive quotient cone, together with
/// the boundary stack orders: the combinatorial model of Y -> X and its
/// associated Deligne-Mumford stack.
class FanModel {
  public:
    FanModel() = default;

    /// The trivial subdivision: one cone on the primitive boundary rays.
    static FanModel quotient_cone(std::shared_ptr<const OverLattice> lattice,
                                  std::vector<Int> boundary_orders);

    /// General constructor from explicit rays and cones (deserialization,
    /// tests, localized sub-models). Canonicalizes the input.
    static FanModel from_parts(std::shared_ptr<const OverLattice> lattice,
                               std::vector<Int> boundary_orders,
                               std::vector<Vec> rays, std::vector<Cone> cones);

    int dim() const { return lattice_->dim(); }
    const OverLattice& lattice() const { return *lattice_; }
    std::shared_ptr<const OverLattice> lattice_ptr() const { return lattice_; }

    const std::vector<Vec>& rays() const { return rays_; }
    const std::vector<Cone>& cones() const { return cones_; }
    const std::vector<Int>& boundary_orders() const { return boundary_orders_; }

    /// Axis of a boundary ray (index into boundary_orders), -1 if exceptional.
    int ray_axis(int ray_index) const { return ray_axis_[ray_index]; }
    bool is_boundary_ray(int ray_index) const { return ray_axis_[ray_index] >= 0; }
    std::vector<int> exceptional_ray_indices() const;

    int ray_index(const Vec& v) const;  // -1 if absent
    Mat cone_rays(const Cone& c) const;

    /// Stack order of a ray in the pair model: boundary order for boundary
    /// rays, 1 for exceptional rays.
    Int ray_order(int ray_index) const;

    /// Log-discrepancy value of the model's own pair at one of its rays:
    /// 1/r_i on boundary rays, 1 on exceptional rays.
    Rat ray_psi_value(int ray_index) const;

    /// Inserts a new ray by stellar subdivision. The ray must be a primitive
    /// lattice point of the cone's support, distinct from existing rays.
    void stellar_subdivide(const Vec& ray);

    /// Replaces cones (by value). Used by the MMP engine; re-canonicalizes.
    void replace_cones(std::vector<Cone> cones, bool prune_rays);

    /// Barycentric coordinates of v in cone c (all >= 0) or nullopt.
    std::optional<Vec> cone_coordinates(const Cone& c, const Vec& v) const;

    int find_containing_cone(const Vec& v) const;  // -1 if outside

    /// Canonical form equality: same lattice, rays, cones, orders.
    bool same_fan(const FanModel& other) const;

    /// Deterministic structural key (rays and cones), for search/dedup.
    std::string cone_key() const;

  private:
    void canonicalize();

    std::shared_ptr<const OverLattice> lattice_;
    std::vector<Vec> rays_;               // sorted lexicographically
    std::vector<Cone> cones_;             // sorted index tuples, sorted
    std::vector<Int> boundary_orders_;    // per axis
    std::vector<int> ray_axis_;           // per ray: axis or -1
};

/// |N : Z ray_1 + ... + Z ray_n|; 1 iff the cone is smooth.
Int cone_multiplicity(const Mat& rays, const OverLattice& lattice);

struct TerminalityResult {
    bool terminal = true;
    std::optional<Vec> witness;  // violating lattice point when non-terminal
};

/// Toric terminality: the only lattice points of the cone at level <= 1 of
/// the linear functional with value 1 on each primitive generator are the
/// origin and the generators themselves.
TerminalityResult is_terminal(const Mat& cone_rays, const OverLattice& lattice);

enum class LogCanonicalOrder { Equal, AGreater, BGreater, Incomparable };

std::string to_string(LogCanonicalOrder o);

/// Compares pullbacks of the two models' log canonical divisors on a common
/// refinement: A >= B iff the coefficient functional of A dominates that of
/// B on every ray of the refinement.
LogCanonicalOrder compare_log_canonical(const FanModel& a, const FanModel& b);

/// Interior walls of a fan: (n-1)-faces shared by exactly two maximal cones.
struct Wall {
    std::vector<int> rays;  // sorted ray indices, size dim-1
    int cone_a = -1;
    int cone_b = -1;
    int opposite_a = -1;  // ray of cone_a not in the wall
    int opposite_b = -1;
};

std::vector<Wall> interior_walls(const FanModel& fan);

/// Index of the sublattice spanned by the wall rays inside N ∩ span(wall).
Int wall_lattice_index(const FanModel& fan, const std::vector<int>& wall_rays);

/// Wall-curve degree of a divisor given by per-ray coefficients, from the
/// primitive integral wall relation beta*u + beta'*u' = sum gamma_k w_k,
/// normalized by the wall lattice index. Crepant divisors get degree 0.
Rat wall_degree(const FanModel& fan, const Wall& wall,
                const std::map<int, Rat>& ray_coefficients);

/// The relation data behind wall_degree, exposed for step classification.
struct WallRelation {
    Int beta_a = 1;            // coefficient of opposite_a
    Int beta_b = 1;            // coefficient of opposite_b
    std::vector<Int> gamma;    // coefficients of the wall rays
};

WallRelation wall_relation(const FanModel& fan, const Wall& wall);

}  // namespace mcgl
