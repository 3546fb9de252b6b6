#pragma once

#include "mcgl/group.hpp"

namespace mcgl {

struct CorpusEntry {
    std::string name;
    DiagonalGroup group;
};

/// All cyclic diagonal subgroups of GL(3,C) of order 2..max_order, one
/// representative per coordinate-permutation class. Enumerated through
/// index-m sublattices of Z^3 in Hermite form (duality with overlattices),
/// so the list is complete and duplicate-free by construction.
std::vector<CorpusEntry> corpus_cyclic3(std::int64_t max_order);

/// All two-generated non-cyclic abelian diagonal subgroups of GL(3,C) with
/// order <= max_order, up to coordinate permutation.
std::vector<CorpusEntry> corpus_two_generator3(std::int64_t max_order);

/// Cyclic diagonal subgroups of GL(2,C), order 2..max_order, up to swap.
std::vector<CorpusEntry> corpus_cyclic2(std::int64_t max_order);

/// The regression corpus of the verification suite: cyclic r <= cyclic_max
/// plus two-generated |G| <= two_gen_max, in dimension 3.
std::vector<CorpusEntry> regression_corpus(std::int64_t cyclic_max = 30,
                                           std::int64_t two_gen_max = 50);

/// Entries whose group lies in SL(3,C), order <= max_order.
std::vector<CorpusEntry> sl3_corpus(std::int64_t max_order);

}  // namespace mcgl
