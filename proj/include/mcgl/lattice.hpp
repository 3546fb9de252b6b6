#pragma once

#include <optional>

#include "mcgl/rational.hpp"

namespace mcgl {

using IntVec = std::vector<Int>;
using IntMat = std::vector<IntVec>;

/// Row-style Hermite normal form of an integer matrix.
/// Result rows are the echelon basis of the row lattice: pivots positive,
/// entries above a pivot reduced into [0, pivot). Zero rows are dropped.
IntMat hnf(IntMat rows);

/// Diagonal of the Smith normal form (invariant factors d1 | d2 | ...).
IntVec snf_diagonal(IntMat m);

/// Integer kernel of a single primitive integer row: basis of
/// { c in Z^n : c . a = 0 }, with n-1 rows.
IntMat int_row_kernel(const IntVec& a);

/// A full-rank lattice in Q^dim, stored as denominator + integer HNF basis,
/// so equality of lattices is syntactic equality of the canonical form.
class Lattice {
  public:
    Lattice() = default;

    /// Builds the lattice generated by the given rational rows (must span).
    static Lattice from_generators(int dim, const Mat& generators);

    int dim() const { return dim_; }
    const Int& denominator() const { return den_; }
    const IntMat& basis_int() const { return basis_; }

    /// Basis rows as rational vectors (basis_int / denominator).
    Mat basis() const;

    /// Covolume (absolute determinant of a basis).
    Rat covolume() const;

    bool contains(const Vec& v) const;

    /// Largest k with v/k in the lattice; v must be a nonzero lattice point.
    Int content(const Vec& v) const;

    /// v divided by its content. Errors on zero or non-lattice input.
    Vec primitive(const Vec& v) const;

    /// Index |L : sublattice spanned by rows|; rows must be lattice points
    /// forming a full-rank square system. Errors when the quotient is not
    /// finite or the index is not integral (internal inconsistency).
    Int sublattice_index(const Mat& rows) const;

    /// All lattice points v with lo <= v <= hi componentwise,
    /// in deterministic (lexicographic) order.
    std::vector<Vec> points_in_box(const Vec& lo, const Vec& hi) const;

    /// Coset representatives of L modulo Z^dim, each in [0,1)^dim,
    /// sorted lexicographically. Only valid when L contains Z^dim.
    const std::vector<Vec>& coset_reps() const;

    bool operator==(const Lattice& o) const {
        return dim_ == o.dim_ && den_ == o.den_ && basis_ == o.basis_;
    }

  private:
    int dim_ = 0;
    Int den_ = 1;       // smallest D with D*L inside Z^dim
    IntMat basis_;      // HNF basis of D*L
    mutable std::vector<Vec> reps_;  // lazily built coset reps
};

/// The overlattice N = Z^n + sum Z*g housing all divisorial data of a
/// diagonal group; index |N : Z^n| equals the group order.
class OverLattice {
  public:
    OverLattice() = default;
    OverLattice(int n, const Mat& weight_generators);

    int dim() const { return lattice_.dim(); }
    const Lattice& lattice() const { return lattice_; }
    const Int& index() const { return index_; }

    bool contains(const Vec& v) const { return lattice_.contains(v); }
    Vec primitive(const Vec& v) const { return lattice_.primitive(v); }

    /// Primitive generator of the i-th edge of the positive orthant.
    Vec boundary_ray(int axis) const;

    /// Index |N : sum Z*row_i| for a square full-rank system of N-points.
    Int sublattice_index(const Mat& rows) const {
        return lattice_.sublattice_index(rows);
    }

    std::vector<Vec> points_in_box(const Vec& lo, const Vec& hi) const {
        return lattice_.points_in_box(lo, hi);
    }

    bool operator==(const OverLattice& o) const { return lattice_ == o.lattice_; }

  private:
    Lattice lattice_;
    Int index_ = 1;
};

/// Quotient of `ambient` by the saturated sublattice spanned by `span_rays`:
/// returns the image lattice together with the projection matrix applied to
/// points (rows of `projection` are the linear forms).
struct LatticeQuotient {
    Lattice image;    // lattice N_F in the quotient coordinates
    Mat projection;   // (dim - d) x dim rational matrix, kernel = span(rays)

    Vec project(const Vec& v) const;
};

LatticeQuotient quotient_by_span(const Lattice& ambient, const Mat& span_rays);

}  // namespace mcgl
