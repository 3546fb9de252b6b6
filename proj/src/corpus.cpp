#include "mcgl/corpus.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "mcgl/lattice.hpp"

namespace mcgl {

namespace {

// Subgroups of (Q/Z)^n of order m correspond to index-m sublattices of Z^n
// (G = dual(M)/Z^n); Hermite forms enumerate the sublattices canonically.
struct SubgroupScan {
    std::vector<Vec> generators;  // fractional basis rows of the overlattice
    IntVec invariants;            // invariant factors of the group
};

void enumerate_hnf(int n, std::int64_t m, const std::function<void(const IntMat&)>& f) {
    // Diagonals (d_0, ..., d_{n-1}) with product m; entry (i, j), i < j,
    // ranges over [0, d_j).
    std::vector<Int> diag(n, 1);
    std::function<void(int, std::int64_t)> rec_diag = [&](int i, std::int64_t rest) {
        if (i == n - 1) {
            diag[i] = rest;
            IntMat h(n, IntVec(n, 0));
            for (int k = 0; k < n; ++k) h[k][k] = diag[k];
            std::vector<std::pair<int, int>> offcells;
            for (int r = 0; r < n; ++r)
                for (int c = r + 1; c < n; ++c) offcells.emplace_back(r, c);
            std::function<void(size_t)> rec_cells = [&](size_t k) {
                if (k == offcells.size()) {
                    f(h);
                    return;
                }
                auto [r, c] = offcells[k];
                for (Int v = 0; v < h[c][c]; ++v) {
                    h[r][c] = v;
                    rec_cells(k + 1);
                }
                h[r][c] = 0;
            };
            rec_cells(0);
            return;
        }
        for (std::int64_t d = 1; d <= rest; ++d) {
            if (rest % d != 0) continue;
            diag[i] = d;
            rec_diag(i + 1, rest / d);
        }
    };
    rec_diag(0, m);
}

// Fractional generators of dual(M)/Z^n from the HNF basis of M: rows of the
// inverse transpose, reduced mod 1.
std::vector<Vec> dual_generators(const IntMat& h) {
    const int n = static_cast<int>(h.size());
    Mat a(n, Vec(2 * n, Rat(0)));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a[i][j] = Rat(h[j][i]);  // transpose
        a[i][n + i] = 1;
    }
    for (int col = 0; col < n; ++col) {
        int piv = col;
        while (a[piv][col] == 0) ++piv;
        std::swap(a[piv], a[col]);
        Rat inv = a[col][col];
        for (int c = 0; c < 2 * n; ++c) a[col][c] /= inv;
        for (int r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            Rat f = a[r][col];
            for (int c = 0; c < 2 * n; ++c) a[r][c] -= f * a[col][c];
        }
    }
    std::vector<Vec> gens;
    for (int i = 0; i < n; ++i) {
        Vec g(n);
        for (int j = 0; j < n; ++j) g[j] = frac(a[i][n + j]);
        if (!vec_is_zero(g)) gens.push_back(std::move(g));
    }
    return gens;
}

std::string canonical_key(const DiagonalGroup& g, std::vector<int>* best_perm) {
    const int n = g.n();
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::string best;
    do {
        std::vector<Vec> elems;
        for (const Vec& w : g.elements()) {
            Vec p(n);
            for (int i = 0; i < n; ++i) p[i] = w[perm[i]];
            elems.push_back(std::move(p));
        }
        std::sort(elems.begin(), elems.end(), vec_lex_less);
        std::string key;
        for (const Vec& w : elems) key += vec_str(w);
        if (best.empty() || key < best) {
            best = key;
            if (best_perm) *best_perm = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

DiagonalGroup permuted(const DiagonalGroup& g, const std::vector<int>& perm) {
    std::vector<Vec> gens;
    for (const Vec& w : g.elements()) {
        Vec p(g.n());
        for (size_t i = 0; i < perm.size(); ++i) p[i] = w[perm[i]];
        gens.push_back(std::move(p));
    }
    return generate_group(gens, g.n(), g.order());
}

std::string cyclic_name(const DiagonalGroup& g) {
    // A generator of maximal order, lexicographically least.
    Int exponent = g.exponent();
    for (const Vec& w : g.elements()) {
        Int order = 1;
        for (const Rat& q : w) order = lcm(order, rat_den(q));
        if (order != exponent) continue;
        std::string s = "1/" + exponent.str() + "(";
        for (size_t i = 0; i < w.size(); ++i) {
            if (i) s += ",";
            s += rat_num(w[i] * exponent).str();
        }
        return s + ")";
    }
    return "trivial";
}

std::vector<CorpusEntry> scan(int n, std::int64_t max_order, int max_generators,
                              bool exactly) {
    std::set<std::string> seen;
    std::vector<CorpusEntry> out;
    for (std::int64_t m = 2; m <= max_order; ++m) {
        enumerate_hnf(n, m, [&](const IntMat& h) {
            IntVec inv = snf_diagonal(h);
            int gens_needed = 0;
            for (const Int& d : inv)
                if (d > 1) ++gens_needed;
            if (gens_needed > max_generators) return;
            if (exactly && gens_needed != max_generators) return;
            std::vector<Vec> gens = dual_generators(h);
            DiagonalGroup g = generate_group(gens, n, m);
            if (g.order() != m) throw ComputeError("corpus duality order mismatch");
            std::vector<int> perm;
            std::string key = canonical_key(g, &perm);
            if (!seen.insert(key).second) return;
            CorpusEntry entry;
            entry.group = permuted(g, perm);
            if (gens_needed <= 1) {
                entry.name = cyclic_name(entry.group);
            } else {
                entry.name = "ord" + std::to_string(m) + ":";
                for (const Int& d : inv)
                    if (d > 1) entry.name += "Z" + d.str();
                entry.name += "#" + std::to_string(out.size());
            }
            out.push_back(std::move(entry));
        });
    }
    return out;
}

}  // namespace

std::vector<CorpusEntry> corpus_cyclic3(std::int64_t max_order) {
    return scan(3, max_order, 1, false);
}

std::vector<CorpusEntry> corpus_two_generator3(std::int64_t max_order) {
    return scan(3, max_order, 2, true);
}

std::vector<CorpusEntry> corpus_cyclic2(std::int64_t max_order) {
    return scan(2, max_order, 1, false);
}

std::vector<CorpusEntry> regression_corpus(std::int64_t cyclic_max,
                                           std::int64_t two_gen_max) {
    std::vector<CorpusEntry> out = corpus_cyclic3(cyclic_max);
    std::vector<CorpusEntry> two = corpus_two_generator3(two_gen_max);
    out.insert(out.end(), two.begin(), two.end());
    return out;
}

std::vector<CorpusEntry> sl3_corpus(std::int64_t max_order) {
    std::vector<CorpusEntry> out;
    for (const CorpusEntry& e : regression_corpus(max_order, max_order))
        if (e.group.subgroup_of_sl()) out.push_back(e);
    return out;
}

}  // namespace mcgl
