#include "mcgl/group.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace mcgl {

bool DiagonalGroup::contains(const Vec& w) const {
    return std::binary_search(elements_.begin(), elements_.end(), w, vec_lex_less);
}

bool DiagonalGroup::subgroup_of_sl() const {
    for (const Vec& g : elements_)
        if (!in_sl(g)) return false;
    return true;
}

Int DiagonalGroup::exponent() const {
    Int e = 1;
    for (const Vec& g : elements_)
        for (const Rat& q : g) e = lcm(e, rat_den(q));
    return e;
}

DiagonalGroup generate_group(const std::vector<Vec>& generators, int n,
                             std::int64_t cap) {
    if (n < 1) throw InputError("dimension must be positive");
    for (const Vec& g : generators) {
        if (static_cast<int>(g.size()) != n)
            throw InputError("generator has wrong length");
        for (const Rat& q : g)
            if (q < 0 || q >= 1)
                throw InputError("generator weight outside [0,1): " + rat_str(q));
    }
    std::set<Vec, bool (*)(const Vec&, const Vec&)> seen(vec_lex_less);
    std::vector<Vec> queue;
    Vec id(n, Rat(0));
    seen.insert(id);
    queue.push_back(id);
    for (size_t i = 0; i < queue.size(); ++i) {
        for (const Vec& g : generators) {
            Vec nxt = vec_frac(vec_add(queue[i], g));
            if (seen.insert(nxt).second) {
                if (static_cast<std::int64_t>(seen.size()) > cap)
                    throw ComputeError("group size cap (" + std::to_string(cap) +
                                       ") exceeded");
                queue.push_back(std::move(nxt));
            }
        }
    }
    DiagonalGroup G;
    G.n_ = n;
    G.elements_.assign(seen.begin(), seen.end());
    G.generators_ = generators;
    return G;
}

SlIntersection sl_intersection(const DiagonalGroup& g) {
    SlIntersection out;
    std::vector<Vec> h_gens;
    std::set<Rat> det_values;
    for (const Vec& w : g.elements()) {
        det_values.insert(DiagonalGroup::det_weight(w));
        if (g.in_sl(w)) h_gens.push_back(w);
    }
    out.h = generate_group(h_gens, g.n(), g.order());
    if (out.h.order() * static_cast<std::int64_t>(det_values.size()) != g.order())
        throw ComputeError("det character fibers are not uniform (internal)");
    out.r = static_cast<std::int64_t>(det_values.size());
    // The determinant image is a finite subgroup of Q/Z, hence cyclic of
    // order r generated by 1/r; exhibit a preimage.
    Rat target(1, out.r);
    out.det_generator = Vec(g.n(), Rat(0));
    bool found = out.r == 1;
    for (const Vec& w : g.elements()) {
        if (DiagonalGroup::det_weight(w) == target) {
            out.det_generator = w;
            found = true;
            break;
        }
    }
    if (!found)
        throw ComputeError("determinant image is not cyclic of order r (internal)");
    return out;
}

BoundaryDivisor boundary_divisor(const DiagonalGroup& g) {
    BoundaryDivisor b;
    const int n = g.n();
    b.coefficients.assign(n, Rat(0));
    b.orders.assign(n, 1);
    for (int i = 0; i < n; ++i) {
        std::int64_t count = 0;
        for (const Vec& w : g.elements()) {
            bool axis_only = true;
            for (int j = 0; j < n; ++j)
                if (j != i && w[j] != 0) {
                    axis_only = false;
                    break;
                }
            if (axis_only) ++count;
        }
        b.orders[i] = count;
        b.coefficients[i] = Rat(count - 1, count);
    }
    return b;
}

std::vector<FixedLocusRecord> fixed_locus_census(const DiagonalGroup& g) {
    const int n = g.n();
    std::vector<FixedLocusRecord> out;
    // Coordinate subspaces V_S, S a proper subset of {0..n-1} (S empty is
    // the origin). For diagonal groups every fixed subspace is of this form.
    for (int mask = 0; mask < (1 << n) - 1; ++mask) {
        std::vector<int> subspace;
        for (int i = 0; i < n; ++i)
            if (mask & (1 << i)) subspace.push_back(i);
        std::vector<Vec> inertia_elems;
        for (const Vec& w : g.elements()) {
            bool fixes = true;
            for (int i : subspace)
                if (w[i] != 0) {
                    fixes = false;
                    break;
                }
            if (fixes) inertia_elems.push_back(w);
        }
        if (inertia_elems.size() <= 1) continue;  // trivial inertia
        // Keep only subspaces that are exactly Fix(I): the maximal subspace
        // their inertia fixes. Smaller subspaces repeat the same group.
        std::vector<int> fixed_set;
        for (int i = 0; i < n; ++i) {
            bool all_zero = true;
            for (const Vec& w : inertia_elems)
                if (w[i] != 0) {
                    all_zero = false;
                    break;
                }
            if (all_zero) fixed_set.push_back(i);
        }
        if (fixed_set != subspace) continue;
        FixedLocusRecord rec;
        rec.subspace = subspace;
        rec.inertia = generate_group(inertia_elems, n, g.order());
        rec.decomposition_order = g.order();
        rec.quotient_order = g.order() / rec.inertia.order();
        rec.inertia_in_sl = rec.inertia.subgroup_of_sl();
        if (rec.inertia_in_sl) continue;  // theorem requires I not in SL
        out.push_back(std::move(rec));
    }
    std::sort(out.begin(), out.end(),
              [](const FixedLocusRecord& a, const FixedLocusRecord& b) {
                  if (a.subspace.size() != b.subspace.size())
                      return a.subspace.size() < b.subspace.size();
                  return a.subspace < b.subspace;
              });
    return out;
}

GroupSpec parse_group_spec(const std::string& text) {
    GroupSpec spec;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        // Strip comments and whitespace-only lines.
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        bool blank = true;
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
        if (blank) continue;
        auto semi = line.find(';');
        std::string head = semi == std::string::npos ? line : line.substr(0, semi);
        std::string tail = semi == std::string::npos ? "" : line.substr(semi + 1);
        int n = 0;
        try {
            size_t pos = 0;
            n = std::stoi(head, &pos);
            while (pos < head.size()) {
                if (!std::isspace(static_cast<unsigned char>(head[pos])))
                    throw InputError("trailing junk");
                ++pos;
            }
        } catch (const std::exception&) {
            throw InputError("bad dimension field in group spec line: '" + line + "'");
        }
        if (n < 1 || n > 3)
            throw InputError("dimension must be 1, 2 or 3, got " + std::to_string(n));
        if (spec.n == 0) spec.n = n;
        if (spec.n != n)
            throw InputError("inconsistent dimensions across generator lines");
        bool any = false;
        for (char c : tail)
            if (!std::isspace(static_cast<unsigned char>(c))) any = true;
        if (!any) continue;  // `n;` alone declares the trivial group
        Vec gen;
        std::istringstream weights(tail);
        std::string item;
        while (std::getline(weights, item, ',')) gen.push_back(frac(parse_rat(item)));
        if (static_cast<int>(gen.size()) != n)
            throw InputError("generator has " + std::to_string(gen.size()) +
                             " weights, expected " + std::to_string(n));
        spec.generators.push_back(std::move(gen));
    }
    if (spec.n == 0) throw InputError("empty group spec");
    return spec;
}

DiagonalGroup cyclic_group(std::int64_t r, const std::vector<std::int64_t>& weights) {
    Vec g;
    for (std::int64_t a : weights) g.push_back(frac(Rat(a, r)));
    return generate_group({g}, static_cast<int>(weights.size()));
}

}  // namespace mcgl
