#pragma once

#include <cstdint>

#include "mcgl/rational.hpp"

namespace mcgl {

/// A finite abelian diagonal subgroup of GL(n,C), stored as the full set of
/// weight vectors in [0,1)^n. Faithful by construction: distinct elements
/// have distinct weight vectors.
class DiagonalGroup {
  public:
    static constexpr std::int64_t kDefaultCap = 10000;

    DiagonalGroup() = default;

    int n() const { return n_; }
    std::int64_t order() const { return static_cast<std::int64_t>(elements_.size()); }
    const std::vector<Vec>& elements() const { return elements_; }
    const std::vector<Vec>& generators() const { return generators_; }

    bool contains(const Vec& w) const;

    /// Determinant character value of an element: sum of weights mod 1.
    static Rat det_weight(const Vec& w) { return frac(vec_sum(w)); }

    bool in_sl(const Vec& w) const { return det_weight(w) == 0; }
    bool subgroup_of_sl() const;

    /// Exponent: lcm of element orders (= lcm of weight denominators).
    Int exponent() const;

    friend DiagonalGroup generate_group(const std::vector<Vec>& generators, int n,
                                        std::int64_t cap);

  private:
    int n_ = 0;
    std::vector<Vec> elements_;    // sorted lexicographically
    std::vector<Vec> generators_;  // as given, validated
};

/// Closure of the generators under componentwise addition mod 1.
/// Weights must be rationals in [0,1); `cap` bounds the closure size.
DiagonalGroup generate_group(const std::vector<Vec>& generators, int n,
                             std::int64_t cap = DiagonalGroup::kDefaultCap);

struct SlIntersection {
    DiagonalGroup h;        // G intersect SL(n,C)
    std::int64_t r = 1;     // index [G:H]
    Vec det_generator;      // element whose determinant generates G/H
};

/// H = { g : sum of weights integral }, r = |G|/|H|; the quotient is cyclic,
/// witnessed by an element whose determinant character has order r.
SlIntersection sl_intersection(const DiagonalGroup& g);

/// Branch divisor coefficients b_i = 1 - 1/e_i, where e_i is the order of
/// the group of quasi-reflections supported on coordinate i alone.
struct BoundaryDivisor {
    std::vector<Rat> coefficients;       // b_i in [0,1)
    std::vector<std::int64_t> orders;    // e_i >= 1
};

BoundaryDivisor boundary_divisor(const DiagonalGroup& g);

/// One eligible center of the main theorem: a coordinate subspace V that is
/// exactly the fixed locus of its own inertia subgroup, with that inertia
/// non-trivial and not contained in SL.
struct FixedLocusRecord {
    std::vector<int> subspace;       // coordinate indices spanning V
    DiagonalGroup inertia;           // I = { g : g fixes V pointwise }
    std::int64_t decomposition_order = 0;  // |D| = |G| for diagonal groups
    std::int64_t quotient_order = 0;       // |D|/|I|
    bool inertia_in_sl = false;
};

std::vector<FixedLocusRecord> fixed_locus_census(const DiagonalGroup& g);

/// Parses the group spec text format: one generator per line,
/// `n; a1/r,a2/r,...`; a line with just `n;` (or `n`) gives the trivial
/// group. All lines must agree on n.
struct GroupSpec {
    int n = 0;
    std::vector<Vec> generators;
};

GroupSpec parse_group_spec(const std::string& text);

/// Convenience: 1/r(a1,...,an) cyclic group.
DiagonalGroup cyclic_group(std::int64_t r, const std::vector<std::int64_t>& weights);

}  // namespace mcgl
