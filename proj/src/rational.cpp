#include "mcgl/rational.hpp"

#include <sstream>

namespace mcgl {

Rat parse_rat(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw InputError("empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw InputError("zero denominator in '" + text + "'");
        return Rat(num, den);
    } catch (const std::exception&) {
        throw InputError("malformed rational '" + text + "'");
    }
}

Vec vec_add(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Vec vec_sub(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vec vec_scale(const Rat& c, const Vec& a) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

Rat vec_dot(const Vec& a, const Vec& b) {
    Rat r = 0;
    for (size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
    return r;
}

Rat vec_sum(const Vec& a) {
    Rat r = 0;
    for (const Rat& q : a) r += q;
    return r;
}

bool vec_is_zero(const Vec& a) {
    for (const Rat& q : a)
        if (q != 0) return false;
    return true;
}

Vec vec_frac(const Vec& a) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = frac(a[i]);
    return r;
}

bool vec_lex_less(const Vec& a, const Vec& b) {
    for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return a.size() < b.size();
}

std::string vec_str(const Vec& a) {
    std::string s = "(";
    for (size_t i = 0; i < a.size(); ++i) {
        if (i) s += ",";
        s += rat_str(a[i]);
    }
    return s + ")";
}

Rat mat_det(const Mat& m) {
    const size_t n = m.size();
    if (n == 0) return 1;
    if (n == 1) return m[0][0];
    if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if (n == 3) {
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    }
    // Gaussian elimination fallback for the rare larger case.
    Mat a = m;
    Rat det = 1;
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != col) {
            std::swap(a[piv], a[col]);
            det = -det;
        }
        det *= a[col][col];
        for (size_t r = col + 1; r < n; ++r) {
            if (a[r][col] == 0) continue;
            Rat f = a[r][col] / a[col][col];
            for (size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
        }
    }
    return det;
}

bool mat_solve_left(const Mat& rows, const Vec& target, Vec& x) {
    // Solve x * rows = target, i.e. rows^T * x^T = target^T.
    const size_t n = rows.size();
    if (n == 0) return vec_is_zero(target);
    const size_t m = rows[0].size();
    Mat a(m, Vec(n + 1));
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < n; ++j) a[i][j] = rows[j][i];
        a[i][n] = target[i];
    }
    std::vector<int> pivot_col(m, -1);
    size_t row = 0;
    for (size_t col = 0; col < n && row < m; ++col) {
        size_t piv = row;
        while (piv < m && a[piv][col] == 0) ++piv;
        if (piv == m) continue;
        std::swap(a[piv], a[row]);
        Rat inv = a[row][col];
        for (size_t c = col; c <= n; ++c) a[row][c] /= inv;
        for (size_t r = 0; r < m; ++r) {
            if (r == row || a[r][col] == 0) continue;
            Rat f = a[r][col];
            for (size_t c = col; c <= n; ++c) a[r][c] -= f * a[row][c];
        }
        pivot_col[row] = static_cast<int>(col);
        ++row;
    }
    for (size_t r = row; r < m; ++r)
        if (a[r][n] != 0) return false;
    x.assign(n, Rat(0));
    for (size_t r = 0; r < row; ++r) x[pivot_col[r]] = a[r][n];
    return true;
}

}  // namespace mcgl
