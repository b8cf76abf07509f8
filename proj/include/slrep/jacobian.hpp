#pragma once

#include <Eigen/Dense>
#include <chrono>
#include <functional>

#include "slrep/chart.hpp"
#include "slrep/character.hpp"
#include "slrep/report.hpp"

namespace slrep {

enum class Side { Left, Right };

namespace detail {

// Parabolic draw with block data kept in a moderate band so finite
// differences stay well conditioned. Invariance is an identity; any test
// point is admissible.
inline ParabolicElement random_chart_parabolic(const BlockPattern& p, Rng& rng) {
    for (int t = 0; t < 200; ++t) {
        ParabolicElement k = random_parabolic(p, rng);
        bool ok = true;
        for (int ib = 0; ib < p.num_blocks(); ++ib) {
            const double d = std::abs(k.block_det(ib));
            ok = ok && d > 0.2 && d < 5.0;
        }
        const double m = k.entries.max_abs();
        if (ok && m < 4.0) return k;
    }
    throw RejectionExhausted("random_chart_parabolic");
}

} // namespace detail

// |det| of the chart-coordinate Jacobian of k -> hk (or kh), by central
// differences with step 1e-6 * coordinate magnitude. For complex charts this
// is the real Jacobian of the R^2 coordinates.
inline double translation_jacobian(const CoordinateChart& chart, const Mat& h,
                                   const std::vector<double>& x, Side side) {
    const int d = chart.real_dim();
    auto map = [&](const std::vector<double>& pt) {
        const Mat k = chart.to_matrix(pt);
        const Mat moved = (side == Side::Left) ? h * k : k * h;
        // translation must stay in the chart: the eliminated entry of the
        // image must be consistent, i.e. the constraint blocks stay invertible
        return chart.from_matrix(moved);
    };
    Eigen::MatrixXd jac(d, d);
    for (int i = 0; i < d; ++i) {
        const double step = 1e-6 * std::max(std::abs(x[static_cast<std::size_t>(i)]), 1.0);
        std::vector<double> xp = x, xm = x;
        xp[static_cast<std::size_t>(i)] += step;
        xm[static_cast<std::size_t>(i)] -= step;
        const auto fp = map(xp);
        const auto fm = map(xm);
        for (int r = 0; r < d; ++r)
            jac(r, i) = (fp[static_cast<std::size_t>(r)] - fm[static_cast<std::size_t>(r)]) / (2.0 * step);
    }
    // Translations of a group chart never collapse dimensions; a vanishing
    // determinant means the image left the chart.
    const double dj = std::abs(jac.partialPivLu().determinant());
    if (!(dj > 0.0) || !std::isfinite(dj)) throw ChartExit("translation_jacobian: degenerate image");
    return dj;
}

// Claim under test: density(hk) * Jac(L_h)(k) = density(k) (and the right
// analogue). Violation is relative; pass iff max over trials <= 1e-5.
inline VerificationReport verify_invariance(const CoordinateChart& chart, Side side, int trials,
                                            std::uint64_t seed, double tolerance = 1e-5) {
    VerificationReport rep;
    rep.suite_name = "haar-invariance/" + chart.name + (side == Side::Left ? "/left" : "/right");
    rep.tolerance = tolerance;
    rep.seed = seed;
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(Rng::derive(seed, 0xA11));
    const bool left = side == Side::Left;
    int done = 0;
    while (done < trials) {
        try {
            const ParabolicElement h = detail::random_chart_parabolic(chart.pattern, rng);
            const ParabolicElement k = detail::random_chart_parabolic(chart.pattern, rng);
            const std::vector<double> x = chart.from_matrix(k.entries);
            const double jac = translation_jacobian(chart, h.entries, x, side);
            const Mat moved = left ? h.entries * k.entries : k.entries * h.entries;
            const double rho_moved = chart.density(chart.from_matrix(moved), left);
            const double rho_here = chart.density(x, left);
            const double violation = std::abs(rho_moved * jac - rho_here) / rho_here;
            rep.measured_max_error = std::max(rep.measured_max_error, violation);
            ++done;
        } catch (const ChartExit&) {
            ++rep.resamples; // skipped-and-resampled, reported in the record
        } catch (const RejectionExhausted&) {
            ++rep.resamples;
        }
    }
    rep.trials_run = done;
    rep.finish();
    rep.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

// density_left / density_right against the displayed modular function,
// pointwise; both sides are closed-form, pass iff <= 1e-12.
inline VerificationReport verify_modular_ratio(const CoordinateChart& chart, int trials,
                                               std::uint64_t seed, double tolerance = 1e-12) {
    VerificationReport rep;
    rep.suite_name = "modular-ratio/" + chart.name;
    rep.tolerance = tolerance;
    rep.seed = seed;
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(Rng::derive(seed, 0xB22));
    for (int t = 0; t < trials; ++t) {
        const ParabolicElement k = detail::random_chart_parabolic(chart.pattern, rng);
        const std::vector<double> x = chart.from_matrix(k.entries);
        const double ratio = chart.density(x, true) / chart.density(x, false);
        const double beta = modular_eval_data(chart.pattern, chart.block_data(chart.to_matrix(x)));
        rep.measured_max_error = std::max(rep.measured_max_error, std::abs(ratio - beta) / beta);
    }
    rep.trials_run = trials;
    rep.finish();
    rep.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

} // namespace slrep
