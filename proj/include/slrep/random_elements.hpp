#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <complex>

#include "slrep/matrix.hpp"
#include "slrep/rng.hpp"

namespace slrep {

inline cplx random_scalar(Rng& rng, Field f) {
    if (f == Field::Real) return {rng.gaussian(), 0.0};
    // Unit-variance complex Gaussian.
    return {rng.gaussian() / std::sqrt(2.0), rng.gaussian() / std::sqrt(2.0)};
}

inline double condition_estimate(const Mat& m) {
    Eigen::MatrixXcd e(m.n, m.n);
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) e(i, j) = m.at(i, j);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(e);
    const auto& s = svd.singularValues();
    const double smin = s(m.n - 1);
    if (smin <= 0.0) return std::numeric_limits<double>::infinity();
    return s(0) / smin;
}

// det = 1 after rescaling by the principal n-th root of det; condition number
// <= conditioning_bound; deterministic per seed. Over R with even n a negative
// determinant cannot be repaired by a real rescale, so such draws are
// rejected (they count against the retry budget).
inline Mat random_group_element(int n, Field f, std::uint64_t seed, double conditioning_bound,
                                int retry_budget = 256) {
    Rng rng(Rng::derive(seed, 0x9e37));
    for (int attempt = 0; attempt < retry_budget; ++attempt) {
        Mat g(n, f);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) g.at(i, j) = random_scalar(rng, f);
        cplx d = det(g);
        if (std::abs(d) < 1e-12) continue;
        cplx root;
        if (f == Field::Real) {
            const double dr = d.real();
            if (n % 2 == 0 && dr <= 0.0) continue;
            root = std::copysign(std::pow(std::abs(dr), 1.0 / n), dr);
        } else {
            root = std::exp(std::log(d) / static_cast<double>(n));
        }
        for (int i = 0; i < n * n; ++i) g.a[static_cast<std::size_t>(i)] /= root;
        if (condition_estimate(g) <= conditioning_bound) return g;
    }
    throw RejectionExhausted("random_group_element: no sample met the conditioning bound");
}

// Small perturbation of the identity, renormalized to det 1. Used by the
// integral checks (unitarity, Haar) where bump mass must stay inside the
// quadrature box.
inline Mat random_near_identity(int n, Field f, std::uint64_t seed, double scale) {
    Rng rng(Rng::derive(seed, 0x51d0));
    Mat g = Mat::identity(n, f);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g.at(i, j) += scale * random_scalar(rng, f);
    cplx d = det(g);
    cplx root = (f == Field::Real) ? cplx(std::copysign(std::pow(std::abs(d.real()), 1.0 / n), d.real()), 0.0)
                                   : std::exp(std::log(d) / static_cast<double>(n));
    for (int i = 0; i < n * n; ++i) g.a[static_cast<std::size_t>(i)] /= root;
    return g;
}

} // namespace slrep
