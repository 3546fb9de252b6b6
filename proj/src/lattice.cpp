#include "mcgl/lattice.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace mcgl {

IntMat hnf(IntMat rows) {
    if (rows.empty()) return rows;
    const size_t m = rows.size(), n = rows[0].size();
    size_t pivot_row = 0;
    for (size_t col = 0; col < n && pivot_row < m; ++col) {
        // Euclidean elimination below the pivot.
        while (true) {
            size_t best = m;
            for (size_t r = pivot_row; r < m; ++r) {
                if (rows[r][col] == 0) continue;
                if (best == m ||
                    abs(rows[r][col]) < abs(rows[best][col]))
                    best = r;
            }
            if (best == m) break;
            std::swap(rows[pivot_row], rows[best]);
            bool clean = true;
            for (size_t r = pivot_row + 1; r < m; ++r) {
                if (rows[r][col] == 0) continue;
                Int q = floor_div(rows[r][col], rows[pivot_row][col]);
                for (size_t c = 0; c < n; ++c) rows[r][c] -= q * rows[pivot_row][c];
                if (rows[r][col] != 0) clean = false;
            }
            if (clean) break;
        }
        if (rows[pivot_row][col] == 0) continue;
        if (rows[pivot_row][col] < 0)
            for (size_t c = 0; c < n; ++c) rows[pivot_row][c] = -rows[pivot_row][c];
        // Reduce entries above the pivot into [0, pivot).
        for (size_t r = 0; r < pivot_row; ++r) {
            Int q = floor_div(rows[r][col], rows[pivot_row][col]);
            if (q == 0) continue;
            for (size_t c = 0; c < n; ++c) rows[r][c] -= q * rows[pivot_row][c];
        }
        ++pivot_row;
    }
    rows.resize(pivot_row);
    return rows;
}

IntVec snf_diagonal(IntMat m) {
    size_t rows = m.size();
    size_t cols = rows ? m[0].size() : 0;
    size_t t = 0;
    IntVec diag;
    while (t < rows && t < cols) {
        // Find a nonzero entry in the remaining block.
        size_t pr = rows, pc = cols;
        for (size_t r = t; r < rows; ++r)
            for (size_t c = t; c < cols; ++c)
                if (m[r][c] != 0 && (pr == rows || abs(m[r][c]) < abs(m[pr][pc]))) {
                    pr = r;
                    pc = c;
                }
        if (pr == rows) break;
        std::swap(m[t], m[pr]);
        for (size_t r = 0; r < rows; ++r) std::swap(m[r][t], m[r][pc]);
        bool again = true;
        while (again) {
            again = false;
            for (size_t r = t + 1; r < rows; ++r) {
                if (m[r][t] == 0) continue;
                Int q = floor_div(m[r][t], m[t][t]);
                for (size_t c = t; c < cols; ++c) m[r][c] -= q * m[t][c];
                if (m[r][t] != 0) {
                    std::swap(m[t], m[r]);
                    again = true;
                }
            }
            for (size_t c = t + 1; c < cols; ++c) {
                if (m[t][c] == 0) continue;
                Int q = floor_div(m[t][c], m[t][t]);
                for (size_t r = t; r < rows; ++r) m[r][c] -= q * m[r][t];
                if (m[t][c] != 0) {
                    for (size_t r = t; r < rows; ++r) std::swap(m[r][t], m[r][c]);
                    again = true;
                }
            }
        }
        diag.push_back(abs(m[t][t]));
        ++t;
    }
    // Enforce divisibility d1 | d2 | ... by gcd/lcm swaps.
    for (size_t i = 0; i + 1 < diag.size(); ++i)
        for (size_t j = i + 1; j < diag.size(); ++j) {
            Int g = gcd(diag[i], diag[j]);
            if (g == 0) continue;
            Int l = diag[i] / g * diag[j];
            diag[i] = g;
            diag[j] = l;
        }
    return diag;
}

IntMat int_row_kernel(const IntVec& a) {
    const size_t n = a.size();
    // Column HNF-style reduction with a recorded transform: find U with
    // a * U^T having a single nonzero entry; kernel rows are the rest.
    IntMat u(n, IntVec(n, 0));
    for (size_t i = 0; i < n; ++i) u[i][i] = 1;
    IntVec v = a;
    while (true) {
        size_t best = n;
        for (size_t i = 0; i < n; ++i)
            if (v[i] != 0 && (best == n || abs(v[i]) < abs(v[best]))) best = i;
        if (best == n) {
            return u;  // zero row: everything is kernel
        }
        bool clean = true;
        for (size_t i = 0; i < n; ++i) {
            if (i == best || v[i] == 0) continue;
            Int q = floor_div(v[i], v[best]);
            v[i] -= q * v[best];
            for (size_t c = 0; c < n; ++c) u[i][c] -= q * u[best][c];
            if (v[i] != 0) clean = false;
        }
        if (clean) {
            IntMat kernel;
            for (size_t i = 0; i < n; ++i)
                if (i != best) kernel.push_back(u[i]);
            return kernel;
        }
    }
}

Lattice Lattice::from_generators(int dim, const Mat& generators) {
    Lattice L;
    L.dim_ = dim;
    Int den = 1;
    for (const Vec& g : generators)
        for (const Rat& q : g) den = lcm(den, rat_den(q));
    IntMat rows;
    rows.reserve(generators.size());
    for (const Vec& g : generators) {
        IntVec r(dim);
        for (int i = 0; i < dim; ++i) r[i] = rat_num(g[i] * den);
        rows.push_back(std::move(r));
    }
    IntMat h = hnf(std::move(rows));
    if (static_cast<int>(h.size()) != dim)
        throw ComputeError("lattice generators do not span full rank");
    // Normalize the stored denominator: divide out common content of
    // den and all entries so equal lattices collide syntactically.
    Int g = den;
    for (const IntVec& r : h)
        for (const Int& x : r) g = gcd(g, x);
    if (g > 1) {
        den /= g;
        for (IntVec& r : h)
            for (Int& x : r) x /= g;
    }
    L.den_ = den;
    L.basis_ = std::move(h);
    return L;
}

Mat Lattice::basis() const {
    Mat b(basis_.size(), Vec(dim_));
    for (size_t i = 0; i < basis_.size(); ++i)
        for (int j = 0; j < dim_; ++j) b[i][j] = Rat(basis_[i][j], den_);
    return b;
}

Rat Lattice::covolume() const {
    Int det = 1;
    for (int i = 0; i < dim_; ++i) det *= basis_[i][i];
    Rat cov(det, 1);
    for (int i = 0; i < dim_; ++i) cov /= den_;
    return boost::multiprecision::abs(cov);
}

bool Lattice::contains(const Vec& v) const {
    // v in L iff den*v is an integral combination of basis rows.
    IntVec w(dim_);
    for (int i = 0; i < dim_; ++i) {
        Rat scaled = v[i] * den_;
        if (rat_den(scaled) != 1) return false;
        w[i] = rat_num(scaled);
    }
    // Forward substitution against the echelon basis (pivot of row i is at
    // its first nonzero column, strictly increasing).
    IntVec rem = w;
    size_t row = 0;
    for (int col = 0; col < dim_ && row < basis_.size(); ++col) {
        if (basis_[row][col] == 0) continue;
        if (rem[col] % basis_[row][col] != 0) return false;
        Int c = rem[col] / basis_[row][col];
        if (c != 0)
            for (int j = col; j < dim_; ++j) rem[j] -= c * basis_[row][j];
        ++row;
    }
    for (int j = 0; j < dim_; ++j)
        if (rem[j] != 0) return false;
    return true;
}

Int Lattice::content(const Vec& v) const {
    if (vec_is_zero(v)) throw ComputeError("content of zero vector");
    if (!contains(v)) throw ComputeError("content of non-lattice vector");
    Int g = 0;
    for (int i = 0; i < dim_; ++i) g = gcd(g, rat_num(v[i] * den_));
    g = abs(g);
    // Scan divisors of g from above; the largest k with v/k in L wins.
    std::vector<Int> divisors;
    for (Int d = 1; d * d <= g; ++d) {
        if (g % d != 0) continue;
        divisors.push_back(d);
        divisors.push_back(g / d);
    }
    std::sort(divisors.begin(), divisors.end(), std::greater<Int>());
    for (const Int& k : divisors) {
        Vec w(dim_);
        for (int i = 0; i < dim_; ++i) w[i] = v[i] / k;
        if (contains(w)) return k;
    }
    return 1;
}

Vec Lattice::primitive(const Vec& v) const {
    Int k = content(v);
    Vec w(dim_);
    for (int i = 0; i < dim_; ++i) w[i] = v[i] / k;
    return w;
}

Int Lattice::sublattice_index(const Mat& rows) const {
    for (const Vec& r : rows)
        if (!contains(r)) throw ComputeError("sublattice row not in lattice");
    Rat d = boost::multiprecision::abs(mat_det(rows));
    if (d == 0) throw ComputeError("degenerate sublattice");
    Rat idx = d / covolume();
    if (rat_den(idx) != 1)
        throw ComputeError("non-integral lattice index (internal error)");
    return rat_num(idx);
}

const std::vector<Vec>& Lattice::coset_reps() const {
    if (!reps_.empty()) return reps_;
    // Closure of the basis rows' fractional parts under addition mod 1.
    std::set<Vec, bool (*)(const Vec&, const Vec&)> seen(vec_lex_less);
    std::vector<Vec> queue;
    Vec zero(dim_, Rat(0));
    seen.insert(zero);
    queue.push_back(zero);
    Mat gens = basis();
    for (size_t i = 0; i < queue.size(); ++i) {
        for (const Vec& g : gens) {
            Vec nxt = vec_frac(vec_add(queue[i], g));
            if (seen.insert(nxt).second) queue.push_back(nxt);
        }
    }
    reps_.assign(seen.begin(), seen.end());
    return reps_;
}

std::vector<Vec> Lattice::points_in_box(const Vec& lo, const Vec& hi) const {
    std::vector<Vec> out;
    for (const Vec& rep : coset_reps()) {
        // rep + z, z integral, within [lo, hi] per coordinate.
        std::vector<std::pair<Int, Int>> ranges(dim_);
        bool empty = false;
        for (int i = 0; i < dim_; ++i) {
            Int zmin = ceil_rat(lo[i] - rep[i]);
            Int zmax = floor_rat(hi[i] - rep[i]);
            if (zmin > zmax) {
                empty = true;
                break;
            }
            ranges[i] = {zmin, zmax};
        }
        if (empty) continue;
        Vec point(dim_);
        std::vector<Int> z(dim_);
        // Nested loop over the (small) integer box, dim <= 3 in practice.
        std::function<void(int)> rec = [&](int i) {
            if (i == dim_) {
                out.push_back(point);
                return;
            }
            for (Int v = ranges[i].first; v <= ranges[i].second; ++v) {
                point[i] = rep[i] + Rat(v);
                rec(i + 1);
            }
        };
        rec(0);
    }
    std::sort(out.begin(), out.end(), vec_lex_less);
    return out;
}

OverLattice::OverLattice(int n, const Mat& weight_generators) {
    Mat gens;
    for (int i = 0; i < n; ++i) {
        Vec e(n, Rat(0));
        e[i] = 1;
        gens.push_back(std::move(e));
    }
    for (const Vec& w : weight_generators) gens.push_back(w);
    lattice_ = Lattice::from_generators(n, gens);
    Rat idx = 1 / lattice_.covolume();
    if (rat_den(idx) != 1)
        throw ComputeError("overlattice does not contain Z^n");
    index_ = rat_num(idx);
}

Vec OverLattice::boundary_ray(int axis) const {
    Vec e(dim(), Rat(0));
    e[axis] = 1;
    return lattice_.primitive(e);
}

Vec LatticeQuotient::project(const Vec& v) const {
    Vec out(projection.size());
    for (size_t i = 0; i < projection.size(); ++i) out[i] = vec_dot(projection[i], v);
    return out;
}

LatticeQuotient quotient_by_span(const Lattice& ambient, const Mat& span_rays) {
    const int n = ambient.dim();
    const int d = static_cast<int>(span_rays.size());
    // Linear forms vanishing on the span: nullspace of the transpose,
    // computed by reduced row echelon for determinism.
    Mat a(d, Vec(n));
    for (int i = 0; i < d; ++i) a[i] = span_rays[i];
    std::vector<int> pivots;
    size_t row = 0;
    for (int col = 0; col < n && row < a.size(); ++col) {
        size_t piv = row;
        while (piv < a.size() && a[piv][col] == 0) ++piv;
        if (piv == a.size()) continue;
        std::swap(a[piv], a[row]);
        Rat inv = a[row][col];
        for (int c = 0; c < n; ++c) a[row][c] /= inv;
        for (size_t r = 0; r < a.size(); ++r) {
            if (r == row || a[r][col] == 0) continue;
            Rat f = a[r][col];
            for (int c = 0; c < n; ++c) a[r][c] -= f * a[row][c];
        }
        pivots.push_back(col);
        ++row;
    }
    if (static_cast<int>(row) != d)
        throw ComputeError("quotient span rays are dependent");
    std::vector<bool> is_pivot(n, false);
    for (int p : pivots) is_pivot[p] = true;
    LatticeQuotient q;
    for (int free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        // Form vanishing on all span rays with coefficient 1 at `free`.
        Vec form(n, Rat(0));
        form[free] = 1;
        for (size_t r = 0; r < pivots.size(); ++r) form[pivots[r]] = -a[r][free];
        q.projection.push_back(std::move(form));
    }
    Mat images;
    for (const Vec& b : ambient.basis()) images.push_back(q.project(b));
    q.image = Lattice::from_generators(n - d, images);
    return q;
}

}  // namespace mcgl
