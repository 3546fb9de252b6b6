#include "mcgl/fan.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace mcgl {

CoefficientFunctional::CoefficientFunctional(const OverLattice& n,
                                             const std::vector<Int>& boundary_orders) {
    const int dim = n.dim();
    if (static_cast<int>(boundary_orders.size()) != dim)
        throw InputError("boundary orders size mismatch");
    row_.assign(dim, Rat(0));
    for (int i = 0; i < dim; ++i) {
        if (boundary_orders[i] < 1) throw InputError("boundary order must be >= 1");
        Vec e = n.boundary_ray(i);
        // psi(e_i') = 1/r_i and e_i' = e_i / a_i, so psi(e_i) = a_i / r_i.
        row_[i] = Rat(1, boundary_orders[i]) / e[i];
    }
}

FanModel FanModel::quotient_cone(std::shared_ptr<const OverLattice> lattice,
                                 std::vector<Int> boundary_orders) {
    FanModel f;
    f.lattice_ = std::move(lattice);
    f.boundary_orders_ = std::move(boundary_orders);
    const int n = f.lattice_->dim();
    if (static_cast<int>(f.boundary_orders_.size()) != n)
        throw InputError("boundary orders size mismatch");
    Cone all;
    for (int i = 0; i < n; ++i) {
        f.rays_.push_back(f.lattice_->boundary_ray(i));
        all.push_back(i);
    }
    f.cones_.push_back(all);
    f.canonicalize();
    return f;
}

FanModel FanModel::from_parts(std::shared_ptr<const OverLattice> lattice,
                              std::vector<Int> boundary_orders,
                              std::vector<Vec> rays, std::vector<Cone> cones) {
    FanModel f;
    f.lattice_ = std::move(lattice);
    f.boundary_orders_ = std::move(boundary_orders);
    if (static_cast<int>(f.boundary_orders_.size()) != f.lattice_->dim())
        throw InputError("boundary orders size mismatch");
    f.rays_ = std::move(rays);
    f.cones_ = std::move(cones);
    for (const Vec& r : f.rays_)
        if (!f.lattice_->contains(r))
            throw InputError("fan ray is not a lattice point: " + vec_str(r));
    for (const Cone& c : f.cones_)
        for (int i : c)
            if (i < 0 || i >= static_cast<int>(f.rays_.size()))
                throw InputError("cone references a missing ray");
    f.canonicalize();
    return f;
}

std::vector<int> FanModel::exceptional_ray_indices() const {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(rays_.size()); ++i)
        if (ray_axis_[i] < 0) out.push_back(i);
    return out;
}

int FanModel::ray_index(const Vec& v) const {
    auto it = std::lower_bound(rays_.begin(), rays_.end(), v, vec_lex_less);
    if (it == rays_.end() || *it != v) return -1;
    return static_cast<int>(it - rays_.begin());
}

Mat FanModel::cone_rays(const Cone& c) const {
    Mat m;
    m.reserve(c.size());
    for (int i : c) m.push_back(rays_[i]);
    return m;
}

Int FanModel::ray_order(int ray_index) const {
    int axis = ray_axis_[ray_index];
    return axis >= 0 ? boundary_orders_[axis] : Int(1);
}

Rat FanModel::ray_psi_value(int ray_index) const {
    return Rat(1, ray_order(ray_index));
}

std::optional<Vec> FanModel::cone_coordinates(const Cone& c, const Vec& v) const {
    Vec t;
    if (!mat_solve_left(cone_rays(c), v, t)) return std::nullopt;
    for (const Rat& x : t)
        if (x < 0) return std::nullopt;
    return t;
}

int FanModel::find_containing_cone(const Vec& v) const {
    for (int i = 0; i < static_cast<int>(cones_.size()); ++i)
        if (cone_coordinates(cones_[i], v)) return i;
    return -1;
}

void FanModel::stellar_subdivide(const Vec& ray) {
    if (ray_index(ray) >= 0) throw ComputeError("ray already present");
    if (!lattice_->contains(ray)) throw ComputeError("ray not a lattice point");
    std::vector<Cone> next;
    std::vector<std::pair<Cone, Vec>> hit;  // cone + barycentric coordinates
    for (const Cone& c : cones_) {
        auto t = cone_coordinates(c, ray);
        if (t)
            hit.emplace_back(c, *t);
        else
            next.push_back(c);
    }
    if (hit.empty()) throw ComputeError("ray outside the fan support");
    // New ray joins the list; remap existing indices afterwards.
    std::vector<Vec> new_rays = rays_;
    new_rays.push_back(ray);
    std::vector<Vec> sorted = new_rays;
    std::sort(sorted.begin(), sorted.end(), vec_lex_less);
    auto index_of = [&](const Vec& v) {
        return static_cast<int>(
            std::lower_bound(sorted.begin(), sorted.end(), v, vec_lex_less) -
            sorted.begin());
    };
    std::vector<int> remap(rays_.size());
    for (size_t i = 0; i < rays_.size(); ++i) remap[i] = index_of(rays_[i]);
    int vidx = index_of(ray);
    std::vector<Cone> remapped;
    for (const Cone& c : next) {
        Cone rc;
        for (int i : c) rc.push_back(remap[i]);
        std::sort(rc.begin(), rc.end());
        remapped.push_back(std::move(rc));
    }
    for (const auto& [c, t] : hit) {
        // Star of the minimal face containing the ray: replace the cone by
        // one cone per positive-coefficient generator, swapped for the ray.
        for (size_t k = 0; k < c.size(); ++k) {
            if (t[k] == 0) continue;
            Cone rc;
            for (size_t j = 0; j < c.size(); ++j)
                rc.push_back(j == k ? vidx : remap[c[j]]);
            std::sort(rc.begin(), rc.end());
            remapped.push_back(std::move(rc));
        }
    }
    rays_ = std::move(sorted);
    cones_ = std::move(remapped);
    canonicalize();
}

void FanModel::replace_cones(std::vector<Cone> cones, bool prune_rays) {
    if (!prune_rays) {
        cones_ = std::move(cones);
        canonicalize();
        return;
    }
    std::set<int> used;
    for (const Cone& c : cones)
        for (int i : c) used.insert(i);
    std::vector<Vec> new_rays;
    std::vector<int> remap(rays_.size(), -1);
    for (int i : used) {
        remap[i] = static_cast<int>(new_rays.size());
        new_rays.push_back(rays_[i]);
    }
    for (Cone& c : cones) {
        for (int& i : c) i = remap[i];
        std::sort(c.begin(), c.end());
    }
    rays_ = std::move(new_rays);
    cones_ = std::move(cones);
    canonicalize();
}

void FanModel::canonicalize() {
    // Keep rays sorted and cones as sorted tuples in sorted order; recompute
    // the axis classification of each ray.
    const int n = dim();
    std::vector<Vec> sorted = rays_;
    std::sort(sorted.begin(), sorted.end(), vec_lex_less);
    if (sorted != rays_) {
        std::vector<int> remap(rays_.size());
        for (size_t i = 0; i < rays_.size(); ++i) {
            remap[i] = static_cast<int>(
                std::lower_bound(sorted.begin(), sorted.end(), rays_[i], vec_lex_less) -
                sorted.begin());
        }
        for (Cone& c : cones_) {
            for (int& i : c) i = remap[i];
            std::sort(c.begin(), c.end());
        }
        rays_ = std::move(sorted);
    }
    for (Cone& c : cones_) std::sort(c.begin(), c.end());
    std::sort(cones_.begin(), cones_.end());
    cones_.erase(std::unique(cones_.begin(), cones_.end()), cones_.end());
    ray_axis_.assign(rays_.size(), -1);
    for (size_t r = 0; r < rays_.size(); ++r) {
        int nonzero = -1;
        bool axis = true;
        for (int i = 0; i < n; ++i) {
            if (rays_[r][i] == 0) continue;
            if (nonzero >= 0) {
                axis = false;
                break;
            }
            nonzero = i;
        }
        if (axis && nonzero >= 0) ray_axis_[r] = nonzero;
    }
}

bool FanModel::same_fan(const FanModel& other) const {
    return lattice() == other.lattice() && rays_ == other.rays_ &&
           cones_ == other.cones_ && boundary_orders_ == other.boundary_orders_;
}

std::string FanModel::cone_key() const {
    std::ostringstream os;
    for (const Vec& r : rays_) os << vec_str(r) << ";";
    os << "|";
    for (const Cone& c : cones_) {
        for (int i : c) os << i << ",";
        os << ";";
    }
    return os.str();
}

Int cone_multiplicity(const Mat& rays, const OverLattice& lattice) {
    return lattice.sublattice_index(rays);
}

TerminalityResult is_terminal(const Mat& rays, const OverLattice& lattice) {
    const int n = lattice.dim();
    if (static_cast<int>(rays.size()) != n)
        throw ComputeError("terminality test needs a full-dimensional cone");
    // Level functional: value 1 at every primitive generator.
    Vec ones(n, Rat(1));
    Vec level;
    if (!mat_solve_left(rays, ones, level))
        throw ComputeError("degenerate cone in terminality test");
    // Bounding box of the level-<=1 slice: the simplex conv(0, rays).
    Vec lo(n, Rat(0)), hi(n, Rat(0));
    for (const Vec& r : rays)
        for (int i = 0; i < n; ++i) hi[i] = std::max(hi[i], r[i]);
    TerminalityResult res;
    for (const Vec& v : lattice.points_in_box(lo, hi)) {
        if (vec_is_zero(v)) continue;
        if (vec_dot(level, v) > 1) continue;
        Vec t;
        if (!mat_solve_left(rays, v, t)) continue;
        bool inside = true;
        for (const Rat& x : t)
            if (x < 0) inside = false;
        if (!inside) continue;
        bool is_generator = false;
        for (const Vec& r : rays)
            if (r == v) is_generator = true;
        if (is_generator) continue;
        res.terminal = false;
        res.witness = v;
        return res;
    }
    return res;
}

std::string to_string(LogCanonicalOrder o) {
    switch (o) {
        case LogCanonicalOrder::Equal: return "equal";
        case LogCanonicalOrder::AGreater: return "A_greater";
        case LogCanonicalOrder::BGreater: return "B_greater";
        case LogCanonicalOrder::Incomparable: return "incomparable";
    }
    return "?";
}

namespace {

// Facet inequalities of a full-dimensional simplicial cone: row k vanishes
// on all rays but k and is positive on ray k.
Mat cone_facets(const Mat& rays) {
    const size_t n = rays.size();
    Mat facets;
    for (size_t k = 0; k < n; ++k) {
        Mat system;
        Vec rhs;
        // Solve f . ray_j = delta_{jk}; unique since rays are a basis.
        Vec f;
        Vec target(n, Rat(0));
        target[k] = 1;
        // f satisfies rays * f^T = target -> use mat_solve_left on transpose.
        Mat cols(n, Vec(n));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) cols[i][j] = rays[j][i];
        if (!mat_solve_left(cols, target, f))
            throw ComputeError("degenerate cone (facets)");
        facets.push_back(f);
    }
    return facets;
}

bool satisfies_all(const Mat& facets, const Vec& v) {
    for (const Vec& f : facets)
        if (vec_dot(f, v) < 0) return false;
    return true;
}

// Extreme rays of the intersection of two full-dimensional simplicial cones,
// normalized to coordinate sum 1. Possibly empty (trivial intersection).
std::vector<Vec> intersection_extreme_rays(const Mat& rays_a, const Mat& rays_b) {
    const int n = static_cast<int>(rays_a.size());
    Mat fa = cone_facets(rays_a), fb = cone_facets(rays_b);
    Mat all = fa;
    all.insert(all.end(), fb.begin(), fb.end());
    std::set<Vec, bool (*)(const Vec&, const Vec&)> found(vec_lex_less);
    auto consider = [&](const Vec& v) {
        if (vec_is_zero(v)) return;
        if (!satisfies_all(fa, v) || !satisfies_all(fb, v)) return;
        Rat s = vec_sum(v);
        if (s <= 0) return;
        found.insert(vec_scale(1 / s, v));
    };
    if (n == 1) {
        consider(rays_a[0]);
    } else if (n == 2) {
        for (const Vec& r : rays_a) consider(r);
        for (const Vec& r : rays_b) consider(r);
    } else if (n == 3) {
        // Candidate directions: kernels of pairs of facet forms.
        for (size_t i = 0; i < all.size(); ++i) {
            for (size_t j = i + 1; j < all.size(); ++j) {
                const Vec &f = all[i], &g = all[j];
                Vec d = {f[1] * g[2] - f[2] * g[1], f[2] * g[0] - f[0] * g[2],
                         f[0] * g[1] - f[1] * g[0]};
                if (vec_is_zero(d)) continue;
                consider(d);
                consider(vec_scale(Rat(-1), d));
            }
        }
        for (const Vec& r : rays_a) consider(r);
        for (const Vec& r : rays_b) consider(r);
    } else {
        throw ComputeError("intersection rays only implemented for n <= 3");
    }
    return {found.begin(), found.end()};
}

// Linear functional of a model's pair on one cone (values 1/r at boundary
// rays, 1 at exceptional rays, extended linearly).
Vec cone_psi_row(const FanModel& f, const Cone& c) {
    Vec values;
    for (int i : c) values.push_back(f.ray_psi_value(i));
    Vec row;
    Mat cols(c.size(), Vec(c.size()));
    Mat rays = f.cone_rays(c);
    for (size_t i = 0; i < c.size(); ++i)
        for (size_t j = 0; j < c.size(); ++j) cols[i][j] = rays[j][i];
    if (!mat_solve_left(cols, values, row))
        throw ComputeError("degenerate cone (psi)");
    return row;
}

}  // namespace

LogCanonicalOrder compare_log_canonical(const FanModel& a, const FanModel& b) {
    if (!(a.lattice() == b.lattice()))
        throw InputError("compare_log_canonical requires a common lattice");
    bool a_above = false, b_above = false;  // psi_a > psi_b means e_a < e_b
    for (const Cone& ca : a.cones()) {
        Vec psi_a = cone_psi_row(a, ca);
        Mat rays_a = a.cone_rays(ca);
        for (const Cone& cb : b.cones()) {
            Vec psi_b = cone_psi_row(b, cb);
            Mat rays_b = b.cone_rays(cb);
            for (const Vec& v : intersection_extreme_rays(rays_a, rays_b)) {
                Rat va = vec_dot(psi_a, v), vb = vec_dot(psi_b, v);
                if (va > vb) a_above = true;
                if (vb > va) b_above = true;
            }
        }
    }
    if (!a_above && !b_above) return LogCanonicalOrder::Equal;
    // Larger psi = smaller coefficients = smaller log canonical divisor.
    if (a_above && !b_above) return LogCanonicalOrder::BGreater;
    if (b_above && !a_above) return LogCanonicalOrder::AGreater;
    return LogCanonicalOrder::Incomparable;
}

std::vector<Wall> interior_walls(const FanModel& fan) {
    std::map<std::vector<int>, std::vector<std::pair<int, int>>> shared;
    const auto& cones = fan.cones();
    for (int ci = 0; ci < static_cast<int>(cones.size()); ++ci) {
        const Cone& c = cones[ci];
        for (size_t drop = 0; drop < c.size(); ++drop) {
            std::vector<int> face;
            for (size_t j = 0; j < c.size(); ++j)
                if (j != drop) face.push_back(c[j]);
            shared[face].emplace_back(ci, c[drop]);
        }
    }
    std::vector<Wall> walls;
    for (const auto& [face, owners] : shared) {
        if (owners.size() != 2) continue;
        Wall w;
        w.rays = face;
        w.cone_a = owners[0].first;
        w.opposite_a = owners[0].second;
        w.cone_b = owners[1].first;
        w.opposite_b = owners[1].second;
        walls.push_back(std::move(w));
    }
    return walls;
}

Int wall_lattice_index(const FanModel& fan, const std::vector<int>& wall_rays) {
    const int n = fan.dim();
    const int d = static_cast<int>(wall_rays.size());
    if (d == 0) return 1;
    Mat span;
    for (int i : wall_rays) span.push_back(fan.rays()[i]);
    if (d == n) return fan.lattice().sublattice_index(span);
    // Rank-d sublattice: compute N ∩ span via the integer kernel of the
    // forms cutting the span, then a d x d index computation.
    LatticeQuotient q = quotient_by_span(fan.lattice().lattice(), span);
    // Basis of N ∩ span: lattice vectors whose projection vanishes.
    // Solve on N's basis coordinates: c * (B * P^T) = 0 over Z.
    Mat nb = fan.lattice().lattice().basis();
    // Matrix M with rows = projections of basis vectors.
    Mat m;
    for (const Vec& b : nb) m.push_back(q.project(b));
    // Integer kernel of m (c * m = 0): scale to integers, then HNF trick per
    // column; for our sizes solve directly via rational RREF + saturation.
    // Rows of kernel in Z^n of rank d.
    Int den = 1;
    for (const Vec& r : m)
        for (const Rat& x : r) den = lcm(den, rat_den(x));
    IntMat im;
    for (const Vec& r : m) {
        IntVec ir;
        for (const Rat& x : r) ir.push_back(rat_num(x * den));
        im.push_back(ir);
    }
    // Kernel of im over Z: iterate single-column kernels.
    IntMat kernel(n, IntVec(n, 0));
    for (int i = 0; i < n; ++i) kernel[i][i] = 1;
    for (size_t col = 0; col < im[0].size(); ++col) {
        // Current generators mapped through column `col`.
        IntVec vals;
        for (const IntVec& k : kernel) {
            Int s = 0;
            for (int j = 0; j < n; ++j) s += k[j] * im[j][col];
            vals.push_back(s);
        }
        // Reduce to kernel of this linear form.
        IntMat next;
        IntMat kk = kernel;
        IntVec vv = vals;
        while (true) {
            size_t best = kk.size();
            for (size_t i = 0; i < kk.size(); ++i)
                if (vv[i] != 0 && (best == kk.size() || abs(vv[i]) < abs(vv[best])))
                    best = i;
            if (best == kk.size()) break;
            bool clean = true;
            for (size_t i = 0; i < kk.size(); ++i) {
                if (i == best || vv[i] == 0) continue;
                Int qq = floor_div(vv[i], vv[best]);
                vv[i] -= qq * vv[best];
                for (int j = 0; j < n; ++j) kk[i][j] -= qq * kk[best][j];
                if (vv[i] != 0) clean = false;
            }
            if (clean) {
                kk.erase(kk.begin() + best);
                vv.erase(vv.begin() + best);
                break;
            }
        }
        kernel = kk;
    }
    if (static_cast<int>(kernel.size()) != d)
        throw ComputeError("wall sublattice rank mismatch");
    // Lattice vectors spanning N ∩ span(wall).
    Mat sub_basis;
    for (const IntVec& k : kernel) {
        Vec v(n, Rat(0));
        for (int j = 0; j < n; ++j)
            v = vec_add(v, vec_scale(Rat(k[j]), nb[j]));
        sub_basis.push_back(v);
    }
    // Express the wall rays in that basis and take |det|.
    Mat coords;
    for (const Vec& w : span) {
        Vec t;
        if (!mat_solve_left(sub_basis, w, t))
            throw ComputeError("wall ray outside its own span (internal)");
        coords.push_back(t);
    }
    Rat det = boost::multiprecision::abs(mat_det(coords));
    if (rat_den(det) != 1)
        throw ComputeError("non-integral wall index (internal)");
    return rat_num(det);
}

WallRelation wall_relation(const FanModel& fan, const Wall& wall) {
    // Solve u = x*u' + sum y_k w_k; opposite sides of the wall force x < 0,
    // giving the relation 1*u + (-x)*u' = sum y_k w_k. Scale to a primitive
    // integer relation for canonical reporting.
    const Vec& u = fan.rays()[wall.opposite_a];
    const Vec& up = fan.rays()[wall.opposite_b];
    Mat basis;
    basis.push_back(up);
    for (int i : wall.rays) basis.push_back(fan.rays()[i]);
    Vec sol;
    if (!mat_solve_left(basis, u, sol))
        throw ComputeError("wall relation: degenerate configuration");
    Rat x = sol[0];
    if (x >= 0)
        throw ComputeError("wall cones are not on opposite sides (internal)");
    std::vector<Rat> rel;
    rel.push_back(1);        // u
    rel.push_back(-x);       // u'
    for (size_t k = 0; k < wall.rays.size(); ++k) rel.push_back(sol[k + 1]);
    Int den = 1;
    for (const Rat& r : rel) den = lcm(den, rat_den(r));
    Int g = 0;
    for (const Rat& r : rel) g = gcd(g, rat_num(r * den));
    g = abs(g);
    WallRelation out;
    out.beta_a = rat_num(rel[0] * den) / g;
    out.beta_b = rat_num(rel[1] * den) / g;
    for (size_t k = 2; k < rel.size(); ++k) out.gamma.push_back(rat_num(rel[k] * den) / g);
    return out;
}

Rat wall_degree(const FanModel& fan, const Wall& wall,
                const std::map<int, Rat>& coeff) {
    auto value = [&](int ray) {
        auto it = coeff.find(ray);
        return it == coeff.end() ? Rat(0) : it->second;
    };
    WallRelation rel = wall_relation(fan, wall);
    Rat deg = Rat(rel.beta_a) * value(wall.opposite_a) +
              Rat(rel.beta_b) * value(wall.opposite_b);
    for (size_t k = 0; k < wall.rays.size(); ++k)
        deg -= Rat(rel.gamma[k]) * value(wall.rays[k]);
    return deg / Rat(wall_lattice_index(fan, wall.rays));
}

}  // namespace mcgl
