#pragma once

#include <Eigen/Dense>
#include <chrono>

#include "slrep/innerprod.hpp"

namespace slrep {

struct OperatorInstance {
    SeriesId id;
    CharacterParams params;
    Mat g;
};

inline OperatorInstance make_operator(SeriesId id, const CharacterParams& p, const Mat& g) {
    validate_params(id, p);
    const SeriesInfo& info = series_info(id);
    if (g.n != info.n || g.field != info.field)
        throw ConfigError("operator: group element does not match series " + info.name);
    return OperatorInstance{id, p, g};
}

namespace detail {

struct ActionStep {
    std::vector<cplx> point_out;
    cplx multiplier;
    double margin;
};

// One application step: transformed coordinates and the twisting scalar.
inline ActionStep action_step(const OperatorInstance& op, const std::vector<cplx>& z) {
    const SeriesInfo& info = series_info(op.id);
    ActionStep st;
    switch (op.id) {
    case SeriesId::Sl2rDiscrete:
    case SeriesId::Sl2rLimit: {
        const cplx den = op.g.at(0, 1) * z[0] + op.g.at(1, 1);
        const double scale = std::max(1.0, op.g.max_abs() * std::max(1.0, std::abs(z[0])));
        st.margin = std::abs(den) / scale;
        if (st.margin < kSingularTol) throw DecompositionSingular("half-plane action: denominator vanished");
        const int s = (op.id == SeriesId::Sl2rDiscrete) ? op.params.s_or_n : 0;
        const cplx inv = cplx(1.0) / den;
        cplx mult = 1.0;
        for (int i = 0; i < 1 + s; ++i) mult *= inv; // integer power, no branch ambiguity
        st.multiplier = mult;
        st.point_out = {(op.g.at(0, 0) * z[0] + op.g.at(1, 0)) / den};
        return st;
    }
    case SeriesId::Sl3rGG: {
        const GGFrame f = gg_frame(z[1].real(), z[2].real(), op.g);
        const cplx den = f.beta1 * z[0] + f.delta1;
        const double dscale = std::max(1.0, std::max(std::abs(f.beta1), std::abs(f.delta1)) *
                                                std::max(1.0, std::abs(z[0])));
        st.margin = std::abs(den) / dscale;
        if (st.margin < kSingularTol) throw DecompositionSingular("gg action: frame denominator vanished");
        const double dl = std::log(std::abs(f.det()));
        const double n1 = op.params.s_or_n;
        const cplx mod_pow = std::exp(cplx((1.5 + 0.5 * n1) * dl, op.params.rho[0] * dl));
        const cplx inv = cplx(1.0) / den;
        cplx intpow = 1.0;
        for (int i = 0; i < op.params.s_or_n; ++i) intpow *= inv;
        st.multiplier = mod_pow * intpow;
        st.point_out = {f.moebius(z[0]), cplx(f.x31_out), cplx(f.x32_out)};
        return st;
    }
    default: {
        UnipotentPoint zp = UnipotentPoint::zero(info.pattern);
        zp.coords = z;
        const DecompResult d = decompose_closed_form(info.pattern, zp, op.g);
        st.margin = d.genericity_margin;
        st.multiplier = multiplier_from_data(op.id, op.params, d.block_char_data);
        st.point_out = d.z_out.coords;
        return st;
    }
    }
}

} // namespace detail

// (T(g) f)(z) = multiplier(z, g) * f(z g-bar), with the series' exact
// exponents.
inline cplx apply_value(const OperatorInstance& op, const CellFunction& f, const std::vector<cplx>& z) {
    const detail::ActionStep st = detail::action_step(op, z);
    return st.multiplier * f(st.point_out);
}

inline cplx apply(const OperatorInstance& op, const TestFunction& f, const std::vector<cplx>& z) {
    const SpaceKind kind = series_info(op.id).space;
    if (kind == SpaceKind::Bergman || kind == SpaceKind::Hardy || kind == SpaceKind::GGWeight) {
        const bool holomorphic =
            f.decay == DecayClass::HalfPlaneHolomorphic || f.decay == DecayClass::HardyBoundary;
        if (!holomorphic || f.analytic_coord != 0)
            throw AnalyticityViolation("series requires holomorphy in the half-plane coordinate");
    }
    return apply_value(op, f.eval, z);
}

// T(g) f as a cell function; points outside the open cell contribute zero
// (the test families vanish to high order there).
inline CellFunction transformed_function(const OperatorInstance& op, const CellFunction& f) {
    return [op, f](const std::vector<cplx>& z) -> cplx {
        try {
            return apply_value(op, f, z);
        } catch (const DecompositionSingular&) {
            return 0.0;
        } catch (const ZeroDiagonal&) {
            return 0.0; // a character datum vanished: same measure-zero set
        }
    };
}

namespace detail {

// Sample a point of the series' coordinate space.
inline std::vector<cplx> sample_point(SeriesId id, int halfplane_sign, Rng& rng) {
    const SeriesInfo& info = series_info(id);
    switch (info.space) {
    case SpaceKind::Bergman:
    case SpaceKind::Hardy:
        return {cplx(rng.gaussian(), halfplane_sign * (0.2 + std::abs(rng.gaussian())))};
    case SpaceKind::GGWeight: {
        const double sgn = rng.uniform() < 0.5 ? 1.0 : -1.0;
        return {cplx(rng.gaussian(), sgn * (0.2 + std::abs(rng.gaussian()))), cplx(rng.gaussian()),
                cplx(rng.gaussian())};
    }
    default: {
        const auto pos = info.pattern.free_positions();
        std::vector<cplx> z(pos.size());
        for (auto& c : z) c = random_scalar(rng, info.field);
        return z;
    }
    }
}

} // namespace detail

// max over sample points of |(T(g1 g2) f)(z) - (T(g1) T(g2) f)(z)| relative
// to the local value scale; singular points are resampled (100x budget).
inline VerificationReport compose_check(SeriesId id, const CharacterParams& params, const Mat& g1,
                                        const Mat& g2, const TestFunction& f, int n_points,
                                        std::uint64_t seed, double tolerance = 1e-8) {
    VerificationReport rep;
    rep.suite_name = "compose/" + series_info(id).name;
    rep.tolerance = tolerance;
    rep.seed = seed;
    Rng rng(Rng::derive(seed, 0xC0));
    const OperatorInstance t12 = make_operator(id, params, g1 * g2);
    const OperatorInstance t1 = make_operator(id, params, g1);
    const OperatorInstance t2 = make_operator(id, params, g2);
    int done = 0;
    long budget = 100L * n_points;
    while (done < n_points && budget-- > 0) {
        const auto z = detail::sample_point(id, params.halfplane_sign, rng);
        try {
            const detail::ActionStep s12 = detail::action_step(t12, z);
            const detail::ActionStep s1 = detail::action_step(t1, z);
            const detail::ActionStep s2 = detail::action_step(t2, s1.point_out);
            if (std::min({s12.margin, s1.margin, s2.margin}) < 1e-4) {
                ++rep.resamples;
                continue;
            }
            const cplx lhs = s12.multiplier * f.eval(s12.point_out);
            const cplx rhs = s1.multiplier * s2.multiplier * f.eval(s2.point_out);
            const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs),
                                           std::abs(s12.multiplier), std::abs(s1.multiplier * s2.multiplier)});
            rep.measured_max_error = std::max(rep.measured_max_error, std::abs(lhs - rhs) / scale);
            ++done;
        } catch (const DecompositionSingular&) {
            ++rep.resamples;
        } catch (const ZeroDiagonal&) {
            ++rep.resamples;
        }
    }
    rep.trials_run = done;
    if (done < n_points) {
        rep.status = SuiteStatus::Skipped;
        rep.details.push_back("resample budget exhausted");
        return rep;
    }
    rep.finish();
    return rep;
}

enum class UnitarityClass { TensorQuadrature, PlainMonteCarlo, KernelMonteCarlo, DetCovariance, HardyLevels };

// Tolerance class of each space: tensor quadrature at 1e-4 where the cell
// has at most 4 real dimensions (above that the grid needed for 1e-4 exceeds
// 1e9 nodes per norm), Monte-Carlo within 3 standard errors for kernel
// spaces and the wider plain cells, the pointwise covariance route for the
// determinant kernel.
inline UnitarityClass unitarity_class(SeriesId id) {
    const SeriesInfo& info = series_info(id);
    switch (info.space) {
    case SpaceKind::RieszKernel: return UnitarityClass::KernelMonteCarlo;
    case SpaceKind::DetKernel: return UnitarityClass::DetCovariance;
    case SpaceKind::Hardy: return UnitarityClass::HardyLevels;
    case SpaceKind::Bergman:
    case SpaceKind::GGWeight: return UnitarityClass::TensorQuadrature;
    case SpaceKind::PlainL2: {
        const int real_dim = static_cast<int>(info.pattern.free_positions().size()) *
                             (info.field == Field::Complex ? 2 : 1);
        return real_dim <= 4 ? UnitarityClass::TensorQuadrature : UnitarityClass::PlainMonteCarlo;
    }
    }
    return UnitarityClass::TensorQuadrature;
}

namespace detail {

// Pointwise identities carrying the unitarity of the determinant-kernel
// series: det(z-w) = det(z'-w') Delta(z) Delta(w), the action Jacobian equals
// 1/beta, and the multiplier modulus is |Delta|^(-4-2 sigma).
inline double stein_covariance_violation(const OperatorInstance& op, Rng& rng, double& worst_jac,
                                         double& worst_mod) {
    const BlockPattern& pat = series_info(op.id).pattern;
    UnipotentPoint z = UnipotentPoint::zero(pat), w = UnipotentPoint::zero(pat);
    for (auto& c : z.coords) c = random_scalar(rng, Field::Complex);
    for (auto& c : w.coords) c = random_scalar(rng, Field::Complex);
    const DecompResult dz = decompose_closed_form(pat, z, op.g);
    const DecompResult dw = decompose_closed_form(pat, w, op.g);
    if (std::min(dz.genericity_margin, dw.genericity_margin) < 1e-4)
        throw DecompositionSingular("stein sample near the singular set");

    auto block_det_diff = [](const std::vector<cplx>& a, const std::vector<cplx>& b) {
        // coords (z31, z32, z41, z42) as a 2x2 matrix
        return (a[0] - b[0]) * (a[3] - b[3]) - (a[1] - b[1]) * (a[2] - b[2]);
    };
    const cplx lhs = block_det_diff(z.coords, w.coords);
    const cplx rhs = block_det_diff(dz.z_out.coords, dw.z_out.coords) * dz.block_char_data[1] *
                     dw.block_char_data[1];
    const double cov = std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)});

    // finite-difference Jacobian of the 8-real-dimensional action vs 1/beta
    const double h = 1e-6;
    Eigen::MatrixXd jac(8, 8);
    for (int i = 0; i < 8; ++i) {
        UnipotentPoint zp = z, zm = z;
        const int ci = i / 2;
        const bool im = i % 2;
        zp.coords[static_cast<std::size_t>(ci)] += im ? cplx(0, h) : cplx(h, 0);
        zm.coords[static_cast<std::size_t>(ci)] -= im ? cplx(0, h) : cplx(h, 0);
        const auto fp = decompose_closed_form(pat, zp, op.g).z_out.coords;
        const auto fm = decompose_closed_form(pat, zm, op.g).z_out.coords;
        for (int r = 0; r < 4; ++r) {
            jac(2 * r, i) = (fp[static_cast<std::size_t>(r)].real() - fm[static_cast<std::size_t>(r)].real()) / (2 * h);
            jac(2 * r + 1, i) = (fp[static_cast<std::size_t>(r)].imag() - fm[static_cast<std::size_t>(r)].imag()) / (2 * h);
        }
    }
    const double jdet = std::abs(jac.partialPivLu().determinant());
    const double beta_inv = std::pow(std::abs(dz.block_char_data[1]), -8.0);
    worst_jac = std::max(worst_jac, std::abs(jdet - beta_inv) / beta_inv);

    const cplx mult = multiplier_from_data(op.id, op.params, dz.block_char_data);
    const double expect = std::pow(std::abs(dz.block_char_data[1]), -4.0 - 2.0 * op.params.sigma[0]);
    worst_mod = std::max(worst_mod, std::abs(std::abs(mult) - expect) / expect);
    return cov;
}

} // namespace detail

// Norm preservation |(Tf, Tf) - (f, f)| within the space's tolerance class.
inline VerificationReport unitarity_check(SeriesId id, const CharacterParams& params, const Mat& g,
                                          const std::vector<TestFunction>& family,
                                          const QuadratureConfig& quad) {
    const SeriesInfo& info = series_info(id);
    VerificationReport rep;
    rep.suite_name = "unitarity/" + info.name;
    rep.seed = quad.seed;
    const SpaceSpec space = make_space(id, params);
    const OperatorInstance op = make_operator(id, params, g);
    const UnitarityClass cls = unitarity_class(id);

    switch (cls) {
    case UnitarityClass::TensorQuadrature: {
        rep.tolerance = 1e-4;
        rep.details.push_back("class: tensor quadrature");
        for (const TestFunction& f : family) {
            TestFunction tf = f;
            tf.eval = transformed_function(op, f.eval);
            const InnerProductResult base = inner_product(space, f, f, quad);
            const InnerProductResult moved = inner_product(space, tf, tf, quad);
            const double denom = std::abs(base.value.real());
            const double viol = std::abs(moved.value.real() - base.value.real()) / denom;
            rep.measured_max_error = std::max(rep.measured_max_error, viol);
            ++rep.trials_run;
        }
        rep.finish();
        return rep;
    }
    case UnitarityClass::PlainMonteCarlo:
    case UnitarityClass::KernelMonteCarlo: {
        rep.tolerance = 3.0;
        rep.details.push_back("class: Monte Carlo, shared-draw difference in standard errors");
        QuadratureConfig q = quad;
        q.scheme = QuadratureConfig::Scheme::MonteCarlo;
        for (const TestFunction& f : family) {
            q.seed = Rng::derive(quad.seed, static_cast<std::uint64_t>(rep.trials_run));
            TestFunction tf = f;
            tf.eval = transformed_function(op, f.eval);
            const InnerProductResult diff = (cls == UnitarityClass::PlainMonteCarlo)
                                                ? detail::plain_mc_diff(space, tf, f, q)
                                                : detail::riesz_mc_diff(space, tf, f, q);
            rep.resamples += diff.resamples;
            const double sigmas = std::abs(diff.value.real()) / std::max(diff.error, 1e-300);
            rep.measured_max_error = std::max(rep.measured_max_error, sigmas);
            ++rep.trials_run;
        }
        rep.finish();
        return rep;
    }
    case UnitarityClass::DetCovariance: {
        rep.details.push_back("class: kernel covariance + Jacobian identities");
        Rng rng(Rng::derive(quad.seed, 0x57E1));
        double worst_cov = 0.0, worst_jac = 0.0, worst_mod = 0.0;
        int done = 0;
        long budget = 2000;
        while (done < 200 && budget-- > 0) {
            try {
                worst_cov = std::max(worst_cov, detail::stein_covariance_violation(op, rng, worst_jac, worst_mod));
                ++done;
            } catch (const DecompositionSingular&) {
                ++rep.resamples;
            }
        }
        rep.trials_run = done;
        rep.tolerance = 1.0; // each identity normalized by its own tolerance
        rep.details.push_back("covariance violation (tol 1e-10): " + std::to_string(worst_cov));
        rep.details.push_back("multiplier modulus violation (tol 1e-12): " + std::to_string(worst_mod));
        rep.details.push_back("jacobian vs 1/beta violation (tol 1e-4): " + std::to_string(worst_jac));
        rep.measured_max_error = std::max({worst_cov / 1e-10, worst_mod / 1e-12, worst_jac / 1e-4});
        rep.finish();
        return rep;
    }
    case UnitarityClass::HardyLevels: {
        // level-integral comparison; the O(eps) level bias dominates the budget
        rep.tolerance = 5e-3;
        rep.details.push_back("class: boundary levels (informational, outside the acceptance gate)");
        for (const TestFunction& f : family) {
            TestFunction tf = f;
            tf.eval = transformed_function(op, f.eval);
            const HardyNormResult base = hardy_norm(f, params.halfplane_sign, {1e-1, 1e-2, 1e-3}, quad);
            const HardyNormResult moved = hardy_norm(tf, params.halfplane_sign, {1e-1, 1e-2, 1e-3}, quad);
            const double viol = std::abs(moved.value - base.value) / base.value;
            rep.measured_max_error = std::max(rep.measured_max_error, viol);
            if (!base.monotone_toward_boundary) rep.details.push_back(f.label + ": levels not monotone");
            ++rep.trials_run;
        }
        rep.finish();
        return rep;
    }
    }
    throw ConfigError("unitarity_check: unknown class");
}

// Aggregated unitarity suite over n_g seeded near-identity group elements.
// Base norms (f, f) are g-independent and computed once per family member.
inline VerificationReport unitarity_suite(SeriesId id, const CharacterParams& params, int n_g,
                                          const std::vector<TestFunction>& family,
                                          const QuadratureConfig& quad, std::uint64_t seed,
                                          double near_identity_scale = 0.05) {
    const SeriesInfo& info = series_info(id);
    VerificationReport rep;
    rep.suite_name = "unitarity/" + info.name;
    rep.seed = seed;
    const SpaceSpec space = make_space(id, params);
    const UnitarityClass cls = unitarity_class(id);
    Rng gseed(Rng::derive(seed, 0x07));

    if (cls == UnitarityClass::DetCovariance || cls == UnitarityClass::HardyLevels) {
        for (int t = 0; t < n_g; ++t) {
            const Mat g = (cls == UnitarityClass::DetCovariance)
                              ? random_group_element(info.n, info.field, gseed.next_u64(), 30.0)
                              : random_near_identity(info.n, info.field, gseed.next_u64(), near_identity_scale);
            QuadratureConfig q = quad;
            q.seed = gseed.next_u64();
            const VerificationReport one = unitarity_check(id, params, g, family, q);
            rep.tolerance = one.tolerance;
            rep.measured_max_error = std::max(rep.measured_max_error, one.measured_max_error);
            rep.trials_run += one.trials_run;
            rep.resamples += one.resamples;
            if (t == 0) rep.details = one.details;
        }
        rep.finish();
        return rep;
    }

    const bool tensor = cls == UnitarityClass::TensorQuadrature;
    rep.tolerance = tensor ? 1e-4 : 3.0;
    rep.details.push_back(tensor ? "class: tensor quadrature"
                                 : "class: Monte Carlo, shared-draw difference in standard errors");
    // base norms, one per family member (tensor class only; the Monte-Carlo
    // classes estimate the difference directly with common random numbers)
    std::vector<InnerProductResult> base(family.size());
    if (tensor)
        for (std::size_t i = 0; i < family.size(); ++i) {
            base[i] = inner_product(space, family[i], family[i], quad);
            rep.resamples += base[i].resamples;
        }
    for (int t = 0; t < n_g; ++t) {
        const Mat g = random_near_identity(info.n, info.field, gseed.next_u64(), near_identity_scale);
        const OperatorInstance op = make_operator(id, params, g);
        for (std::size_t i = 0; i < family.size(); ++i) {
            TestFunction tf = family[i];
            tf.eval = transformed_function(op, family[i].eval);
            double viol;
            if (tensor) {
                const InnerProductResult moved = inner_product(space, tf, tf, quad);
                rep.resamples += moved.resamples;
                viol = std::abs(moved.value.real() - base[i].value.real()) / std::abs(base[i].value.real());
            } else {
                QuadratureConfig q = quad;
                q.scheme = QuadratureConfig::Scheme::MonteCarlo;
                q.seed = Rng::derive(seed, 9000 + 100 * static_cast<std::uint64_t>(t) + i);
                const InnerProductResult diff =
                    (cls == UnitarityClass::PlainMonteCarlo) ? detail::plain_mc_diff(space, tf, family[i], q)
                                                             : detail::riesz_mc_diff(space, tf, family[i], q);
                rep.resamples += diff.resamples;
                viol = std::abs(diff.value.real()) / std::max(diff.error, 1e-300);
            }
            rep.measured_max_error = std::max(rep.measured_max_error, viol);
            ++rep.trials_run;
        }
    }
    rep.finish();
    return rep;
}

// Exact sign law sign(Im z') = sign(relevant determinant) * sign(Im z) for
// the holomorphically realized families.
inline VerificationReport halfplane_preservation_check(SeriesId id, const CharacterParams& params,
                                                       const Mat& g, int n_points, std::uint64_t seed) {
    if (series_info(id).space != SpaceKind::Bergman && series_info(id).space != SpaceKind::Hardy &&
        series_info(id).space != SpaceKind::GGWeight)
        throw ConfigError("halfplane check applies to the holomorphic families only");
    VerificationReport rep;
    rep.suite_name = "halfplane/" + series_info(id).name;
    rep.tolerance = 0.0; // exact sign test
    rep.seed = seed;
    Rng rng(Rng::derive(seed, 0x4A));
    const OperatorInstance op = make_operator(id, params, g);
    int done = 0;
    long budget = 100L * n_points;
    while (done < n_points && budget-- > 0) {
        auto z = detail::sample_point(id, params.halfplane_sign, rng);
        if (series_info(id).space != SpaceKind::GGWeight && rng.uniform() < 0.5)
            z[0] = std::conj(z[0]); // exercise both half-planes
        try {
            const detail::ActionStep st = detail::action_step(op, z);
            double det_sign = 1.0; // Moebius determinant of the rank-1 action is det g = 1
            if (id == SeriesId::Sl3rGG) det_sign = gg_frame(z[1].real(), z[2].real(), op.g).det() >= 0 ? 1.0 : -1.0;
            const bool ok = (st.point_out[0].imag() > 0) == ((det_sign * z[0].imag()) > 0);
            if (!ok) rep.measured_max_error = 1.0;
            ++done;
        } catch (const DecompositionSingular&) {
            ++rep.resamples;
        }
    }
    rep.trials_run = done;
    rep.finish();
    return rep;
}

} // namespace slrep
