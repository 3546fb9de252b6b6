#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>
#include <vector>

namespace mcgl {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Exact rational vector; the workhorse value type of the whole library.
using Vec = std::vector<Rat>;

/// Thrown on malformed user input (group specs, model specs, flags).
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when a configured cap is exceeded or a certified identity fails.
struct ComputeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Int rat_num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int rat_den(const Rat& q) { return boost::multiprecision::denominator(q); }

/// floor(a/b) for exact integers, b > 0.
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if (a % b != 0 && (a < 0) != (b < 0)) --q;
    return q;
}

/// ceil(a/b) for exact integers, b > 0.
inline Int ceil_div(const Int& a, const Int& b) {
    Int q = a / b;
    if (a % b != 0 && (a < 0) == (b < 0)) ++q;
    return q;
}

inline Int floor_rat(const Rat& q) { return floor_div(rat_num(q), rat_den(q)); }
inline Int ceil_rat(const Rat& q) { return ceil_div(rat_num(q), rat_den(q)); }

/// Fractional part in [0,1).
inline Rat frac(const Rat& q) { return q - Rat(floor_rat(q)); }

inline Int gcd(Int a, Int b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm(Int a, Int b) { return boost::multiprecision::lcm(a, b); }

/// Canonical "p/q" rendering; denominators are always printed.
inline std::string rat_str(const Rat& q) {
    return rat_num(q).str() + "/" + rat_den(q).str();
}

/// Parses "p", "p/q" or "-p/q"; q must be positive after reduction.
Rat parse_rat(const std::string& text);

Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_scale(const Rat& c, const Vec& a);
Rat vec_dot(const Vec& a, const Vec& b);
Rat vec_sum(const Vec& a);
bool vec_is_zero(const Vec& a);

/// Componentwise mod 1, entries in [0,1).
Vec vec_frac(const Vec& a);

/// Strict lexicographic order; the canonical ordering used everywhere
/// determinism matters (ray lists, tie-breaking, serialization).
bool vec_lex_less(const Vec& a, const Vec& b);

std::string vec_str(const Vec& a);

using Mat = std::vector<Vec>;

/// Determinant by fraction-free expansion; rows must be square.
Rat mat_det(const Mat& m);

/// Solves x * rows = target exactly (row-vector convention).
/// Returns empty optional-like flag via bool; x resized on success.
bool mat_solve_left(const Mat& rows, const Vec& target, Vec& x);

}  // namespace mcgl
