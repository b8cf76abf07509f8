#pragma once

#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "slrep/quadrature.hpp"
#include "slrep/series.hpp"

namespace slrep {

enum class DecayClass { GaussianBump, HalfPlaneHolomorphic, HardyBoundary };

// A callable on unipotent coordinates with a declared support/decay class.
// fourier is set for the Gaussian family (closed form), used by the
// determinant-kernel pairing.
struct TestFunction {
    std::string label;
    int arity = 0;
    Field field = Field::Complex;
    DecayClass decay = DecayClass::GaussianBump;
    CellFunction eval;
    CellFunction fourier;    // empty unless closed-form transform available
    int analytic_coord = -1; // half-plane coordinate index (discrete/limit/gg)
    // support profile for importance-sampled pairings
    std::vector<cplx> prop_centers;
    std::vector<double> prop_widths;

    cplx operator()(const std::vector<cplx>& z) const { return eval(z); }
};

// Gaussian bump exp(-sum |z_j - c_j|^2 / w_j^2), optionally with a linear
// prefactor (z_0 - c_0). Fourier convention: fhat(xi) = int f(z)
// exp(-i <xi, z>) with <xi, z> = sum Re(conj(xi_j) z_j); each complex
// coordinate contributes pi w^2 exp(-|xi|^2 w^2 / 4) exp(-i <xi, c>).
inline TestFunction gaussian_bump(Field field, std::vector<cplx> centers, std::vector<double> widths,
                                  bool linear_prefactor = false, const std::string& label = "bump") {
    TestFunction f;
    f.label = label;
    f.arity = static_cast<int>(centers.size());
    f.field = field;
    f.decay = DecayClass::GaussianBump;
    f.prop_centers = centers;
    f.prop_widths = widths;
    f.eval = [centers, widths, linear_prefactor](const std::vector<cplx>& z) -> cplx {
        double e = 0.0;
        for (std::size_t j = 0; j < centers.size(); ++j) {
            const cplx d = z[j] - centers[j];
            e += std::norm(d) / (widths[j] * widths[j]);
        }
        cplx pref = 1.0;
        if (linear_prefactor) pref = z[0] - centers[0];
        return pref * std::exp(-e);
    };
    if (!linear_prefactor && field == Field::Complex) {
        f.fourier = [centers, widths](const std::vector<cplx>& xi) -> cplx {
            cplx out = 1.0;
            for (std::size_t j = 0; j < centers.size(); ++j) {
                const double w2 = widths[j] * widths[j];
                const double pair = xi[j].real() * centers[j].real() + xi[j].imag() * centers[j].imag();
                out *= std::numbers::pi * w2 * std::exp(-std::norm(xi[j]) * w2 / 4.0) *
                       std::exp(cplx(0.0, -pair));
            }
            return out;
        };
    }
    return f;
}

// (z - pole)^(-power) on the half-plane opposite the pole, 0 elsewhere.
// With poles on both sides the function is holomorphic on each half-plane
// separately.
inline TestFunction halfplane_rational(int coord, int arity, cplx pole_up, cplx pole_down, int power,
                                       const std::vector<cplx>& bump_centers,
                                       const std::string& label = "rational") {
    TestFunction f;
    f.label = label;
    f.arity = arity;
    f.field = Field::Real;
    f.decay = DecayClass::HalfPlaneHolomorphic;
    f.analytic_coord = coord;
    f.eval = [coord, pole_up, pole_down, power, bump_centers, arity](const std::vector<cplx>& z) -> cplx {
        const cplx v = z[static_cast<std::size_t>(coord)];
        const cplx pole = (v.imag() > 0.0) ? pole_up : pole_down;
        cplx base = cplx(1.0) / (v - pole);
        cplx out = 1.0;
        for (int i = 0; i < power; ++i) out *= base;
        // bump factor on the remaining (real) coordinates
        std::size_t b = 0;
        for (int j = 0; j < arity; ++j) {
            if (j == coord) continue;
            const double d = z[static_cast<std::size_t>(j)].real() - bump_centers[b].real();
            out *= std::exp(-d * d);
            ++b;
        }
        return out;
    };
    return f;
}

// Shipped family for a series' space: smooth, decaying, closed under the
// needed evaluations. count <= 5 distinct members; spread controls the
// center separation (wide for Gram positivity checks, compact when the
// family must sit well inside a quadrature box).
inline std::vector<TestFunction> shipped_family(SeriesId id, const CharacterParams& p, int count,
                                                double spread = 1.1) {
    const SeriesInfo& info = series_info(id);
    const int arity = static_cast<int>(info.pattern.free_positions().size());
    std::vector<TestFunction> fam;

    if (info.space == SpaceKind::Bergman || info.space == SpaceKind::Hardy) {
        const int sign = p.halfplane_sign;
        const int s = (info.space == SpaceKind::Bergman) ? p.s_or_n : 0;
        const int power = s + 2;
        for (int i = 0; i < count; ++i) {
            const double shift = 0.6 * i - 0.5;
            const cplx pu(shift, -1.0 - 0.3 * i); // pole below for the upper half-plane
            const cplx pd(shift, 1.0 + 0.3 * i);
            TestFunction f = halfplane_rational(0, 1, sign > 0 ? pu : cplx(0, -1e9), sign > 0 ? cplx(0, 1e9) : pd,
                                                power, {}, "halfplane-" + std::to_string(i));
            // restrict to the chosen half-plane: zero on the other one
            const cplx pole = sign > 0 ? pu : pd;
            f.eval = [pole, power, sign](const std::vector<cplx>& z) -> cplx {
                const cplx v = z[0];
                if (sign > 0 ? (v.imag() <= 0.0) : (v.imag() >= 0.0)) return 0.0;
                cplx base = cplx(1.0) / (v - pole);
                cplx out = 1.0;
                for (int k = 0; k < power; ++k) out *= base;
                return out;
            };
            fam.push_back(std::move(f));
        }
        return fam;
    }

    if (info.space == SpaceKind::GGWeight) {
        const int power = p.s_or_n + 1;
        for (int i = 0; i < count; ++i) {
            const double shift = 0.5 * i - 0.4;
            const cplx pu(shift, -1.2 - 0.25 * i);
            const cplx pd(-shift, 1.2 + 0.25 * i);
            fam.push_back(halfplane_rational(0, 3, pu, pd, power,
                                             {cplx(0.3 * i - 0.2), cplx(0.15 * i)}, "gg-" + std::to_string(i)));
        }
        return fam;
    }

    // Gaussian bumps with well-separated centers; one member carries a
    // linear prefactor for variety.
    for (int i = 0; i < count; ++i) {
        const double off = spread * (i - 0.5 * (count - 1));
        std::vector<cplx> centers(static_cast<std::size_t>(arity));
        std::vector<double> widths(static_cast<std::size_t>(arity), 1.0);
        for (int j = 0; j < arity; ++j) {
            const double re = off * std::cos(0.9 * j + 0.2 * i);
            const double im = (info.field == Field::Complex) ? off * 0.6 * std::sin(1.1 * j + 0.4 * i + 0.3) : 0.0;
            centers[static_cast<std::size_t>(j)] = cplx(re, im);
            // member-independent widths keep the family's norms comparable
            widths[static_cast<std::size_t>(j)] = 0.9 + 0.1 * (j % 2);
        }
        const bool linear = (i == 1) && info.space != SpaceKind::DetKernel;
        fam.push_back(gaussian_bump(info.field, centers, widths, linear, "bump-" + std::to_string(i)));
    }
    return fam;
}

} // namespace slrep
