#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "slrep/errors.hpp"

namespace slrep {

using cplx = std::complex<double>;

enum class Field { Real, Complex };

inline const char* field_name(Field f) { return f == Field::Real ? "real" : "complex"; }

// Dense n x n matrix over R or C, n <= 4. Real matrices are stored inside
// complex scalars with imaginary part exactly zero (one code path for all
// formulas). Indices are 0-based here; the classical 1-based entry g_{pq}
// is at(p-1, q-1).
struct Mat {
    int n = 0;
    Field field = Field::Complex;
    std::array<cplx, 16> a{};

    Mat() = default;
    Mat(int dim, Field f) : n(dim), field(f) {}

    static Mat identity(int dim, Field f) {
        Mat m(dim, f);
        for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
        return m;
    }

    cplx& at(int r, int c) { return a[static_cast<std::size_t>(r * n + c)]; }
    const cplx& at(int r, int c) const { return a[static_cast<std::size_t>(r * n + c)]; }

    double max_abs() const {
        double s = 0.0;
        for (int i = 0; i < n * n; ++i) s = std::max(s, std::abs(a[static_cast<std::size_t>(i)]));
        return s;
    }

    friend Mat operator*(const Mat& x, const Mat& y) {
        Mat r(x.n, x.field);
        for (int i = 0; i < x.n; ++i)
            for (int j = 0; j < x.n; ++j) {
                cplx s = 0.0;
                for (int l = 0; l < x.n; ++l) s += x.at(i, l) * y.at(l, j);
                r.at(i, j) = s;
            }
        return r;
    }
};

// Cofactor-expansion determinant. Exact formula structure at n <= 4, no
// pivoting noise.
inline cplx det(const Mat& m) { // NOLINT(misc-no-recursion)
    switch (m.n) {
    case 1:
        return m.at(0, 0);
    case 2:
        return m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0);
    case 3:
        return m.at(0, 0) * (m.at(1, 1) * m.at(2, 2) - m.at(1, 2) * m.at(2, 1)) -
               m.at(0, 1) * (m.at(1, 0) * m.at(2, 2) - m.at(1, 2) * m.at(2, 0)) +
               m.at(0, 2) * (m.at(1, 0) * m.at(2, 1) - m.at(1, 1) * m.at(2, 0));
    case 4: {
        cplx s = 0.0;
        for (int c = 0; c < 4; ++c) {
            Mat sub(3, m.field);
            for (int i = 1; i < 4; ++i) {
                int cc = 0;
                for (int j = 0; j < 4; ++j) {
                    if (j == c) continue;
                    sub.at(i - 1, cc++) = m.at(i, j);
                }
            }
            const cplx term = m.at(0, c) * det(sub);
            s += (c % 2 == 0) ? term : -term;
        }
        return s;
    }
    default:
        throw InvalidIndex("det: dimension must be 1..4");
    }
}

// Determinant of the submatrix picked by 0-based row/column index lists.
inline cplx minor_det(const Mat& m, const std::vector<int>& rows, const std::vector<int>& cols) {
    if (rows.size() != cols.size()) throw InvalidIndex("minor: row/col lists differ in length");
    Mat sub(static_cast<int>(rows.size()), m.field);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (rows[i] < 0 || rows[i] >= m.n || cols[j] < 0 || cols[j] >= m.n)
                throw InvalidIndex("minor: index out of range");
            sub.at(static_cast<int>(i), static_cast<int>(j)) = m.at(rows[i], cols[j]);
        }
    return det(sub);
}

// 2x2 minor of the 1-BASED rows (p1,p2) x cols (q1,q2); this is the bracketed
// |g_{p1 q1} g_{p1 q2}; g_{p2 q1} g_{p2 q2}| building block of all the
// closed-form decomposition formulas.
inline cplx m2(const Mat& g, int p1, int p2, int q1, int q2) {
    return g.at(p1 - 1, q1 - 1) * g.at(p2 - 1, q2 - 1) - g.at(p1 - 1, q2 - 1) * g.at(p2 - 1, q1 - 1);
}

// 3x3 minor, 1-based rows/cols.
inline cplx m3(const Mat& g, int p1, int p2, int p3, int q1, int q2, int q3) {
    return g.at(p1 - 1, q1 - 1) * (g.at(p2 - 1, q2 - 1) * g.at(p3 - 1, q3 - 1) - g.at(p2 - 1, q3 - 1) * g.at(p3 - 1, q2 - 1)) -
           g.at(p1 - 1, q2 - 1) * (g.at(p2 - 1, q1 - 1) * g.at(p3 - 1, q3 - 1) - g.at(p2 - 1, q3 - 1) * g.at(p3 - 1, q1 - 1)) +
           g.at(p1 - 1, q3 - 1) * (g.at(p2 - 1, q1 - 1) * g.at(p3 - 1, q2 - 1) - g.at(p2 - 1, q2 - 1) * g.at(p3 - 1, q1 - 1));
}

} // namespace slrep
