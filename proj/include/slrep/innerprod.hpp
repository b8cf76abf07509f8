#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "slrep/character.hpp"
#include "slrep/report.hpp"
#include "slrep/testfun.hpp"

namespace slrep {

// Inner-product space of a series: which coordinates are integrated with
// which kernel or weight.
struct SpaceSpec {
    SeriesId series = SeriesId::Sl2cPrincipal;
    SpaceKind kind = SpaceKind::PlainL2;
    Field field = Field::Complex;
    int n_coords = 1;
    std::vector<int> kernel_idx;
    std::vector<double> sigmas;
    double prefactor = 1.0;  // e.g. 1/Gamma(sigma) for the rank-1 real kernel
    int weight_exp = 0;      // Bergman: s-1, gg: n1-2
    double weight_norm = 1.0;// gg: 1/Gamma(n1-1)
    int sign = +1;           // half-plane choice
    double det_sigma = 0.5;  // determinant-kernel exponent parameter
};

inline SpaceSpec make_space(SeriesId id, const CharacterParams& p) {
    validate_params(id, p);
    const SeriesInfo& info = series_info(id);
    SpaceSpec s;
    s.series = id;
    s.kind = info.space;
    s.field = info.field;
    s.n_coords = static_cast<int>(info.pattern.free_positions().size());
    switch (info.space) {
    case SpaceKind::RieszKernel: {
        const KernelSplit ks = kernel_split(id, p);
        s.kernel_idx = ks.kernel_coord_index;
        s.sigmas = ks.sigmas;
        if (id == SeriesId::Sl2rComplementary) s.prefactor = 1.0 / std::tgamma(p.sigma[0]);
        break;
    }
    case SpaceKind::Bergman:
        s.n_coords = 1;
        s.weight_exp = p.s_or_n - 1;
        s.sign = p.halfplane_sign;
        break;
    case SpaceKind::Hardy:
        s.n_coords = 1;
        s.sign = p.halfplane_sign;
        break;
    case SpaceKind::GGWeight:
        s.n_coords = 3;
        s.weight_exp = p.s_or_n - 2;
        s.weight_norm = 1.0 / std::tgamma(static_cast<double>(p.s_or_n - 1));
        break;
    case SpaceKind::DetKernel:
        s.det_sigma = p.sigma[0];
        break;
    case SpaceKind::PlainL2:
        break;
    }
    return s;
}

struct InnerProductResult {
    cplx value = 0.0;
    double error = 0.0; // grid-refinement delta or MC standard error
    long resamples = 0;
};

namespace detail {

// ---- tensor engines -------------------------------------------------------

inline cplx tensor_integrate_cplx(const std::vector<Axis>& axes,
                                  const std::function<cplx(const std::vector<double>&)>& f) {
    const std::size_t d = axes.size();
    std::vector<std::size_t> idx(d, 0);
    std::vector<double> x(d);
    cplx acc = 0.0;
    while (true) {
        double w = 1.0;
        for (std::size_t i = 0; i < d; ++i) {
            x[i] = axes[i].nodes[idx[i]];
            w *= axes[i].weights[idx[i]];
        }
        acc += w * f(x);
        std::size_t k = 0;
        while (k < d && ++idx[k] == axes[k].nodes.size()) {
            idx[k] = 0;
            ++k;
        }
        if (k == d) break;
    }
    return acc;
}

// Axes of a plain-L2 cell: one box axis per real coordinate, two per complex.
inline std::vector<Axis> plain_axes(const SpaceSpec& s, int p, double radius) {
    std::vector<Axis> axes;
    const int per = (s.field == Field::Complex) ? 2 : 1;
    for (int i = 0; i < s.n_coords * per; ++i) axes.push_back(Axis::box(p, radius));
    return axes;
}

inline std::vector<cplx> coords_from_real(const SpaceSpec& s, const std::vector<double>& x) {
    std::vector<cplx> z(static_cast<std::size_t>(s.n_coords));
    if (s.field == Field::Complex) {
        for (int i = 0; i < s.n_coords; ++i)
            z[static_cast<std::size_t>(i)] = cplx(x[static_cast<std::size_t>(2 * i)], x[static_cast<std::size_t>(2 * i + 1)]);
    } else {
        for (int i = 0; i < s.n_coords; ++i) z[static_cast<std::size_t>(i)] = cplx(x[static_cast<std::size_t>(i)], 0.0);
    }
    return z;
}

inline cplx tensor_pairing_at(const SpaceSpec& s, const CellFunction& f, const CellFunction& h, int p,
                              double radius) {
    switch (s.kind) {
    case SpaceKind::PlainL2: {
        const auto axes = plain_axes(s, p, radius);
        return tensor_integrate_cplx(axes, [&](const std::vector<double>& x) {
            const auto z = coords_from_real(s, x);
            return f(z) * std::conj(h(z));
        });
    }
    case SpaceKind::Bergman: {
        std::vector<Axis> axes = {Axis::tan_line(p, radius), Axis::tan_half_line(p, radius, s.sign)};
        const int we = s.weight_exp;
        return tensor_integrate_cplx(axes, [&](const std::vector<double>& x) {
            const std::vector<cplx> z = {cplx(x[0], x[1])};
            return f(z) * std::conj(h(z)) * std::pow(std::abs(x[1]), we);
        });
    }
    case SpaceKind::GGWeight: {
        cplx total = 0.0;
        for (int sign : {+1, -1}) {
            std::vector<Axis> axes = {Axis::tan_line(p, radius), Axis::tan_half_line(p, radius, sign),
                                      Axis::box(p, radius * 2.0), Axis::box(p, radius * 2.0)};
            total += tensor_integrate_cplx(axes, [&](const std::vector<double>& x) {
                const std::vector<cplx> z = {cplx(x[0], x[1]), cplx(x[2], 0.0), cplx(x[3], 0.0)};
                return f(z) * std::conj(h(z)) * std::pow(std::abs(x[1]), s.weight_exp);
            });
        }
        return total * s.weight_norm;
    }
    default:
        throw ConfigError("tensor pairing: unsupported space kind");
    }
}

// ---- Monte-Carlo engines --------------------------------------------------

inline double gauss_density(double x, double mean, double sd) {
    const double d = (x - mean) / sd;
    return std::exp(-0.5 * d * d) / (sd * std::sqrt(2.0 * std::numbers::pi));
}

// Gaussian proposal for one real axis, matched to the arguments' support
// profiles: shared axes sit at the midpoint of the two centers, per-argument
// axes at the argument's own center.
struct AxisProposal {
    double mean = 0.0;
    double sd = 1.0;
};

inline cplx profile_center(const TestFunction& f, int coord) {
    return coord < static_cast<int>(f.prop_centers.size()) ? f.prop_centers[static_cast<std::size_t>(coord)]
                                                           : cplx(0.0);
}

inline double profile_width(const TestFunction& f, int coord, double fallback) {
    return coord < static_cast<int>(f.prop_widths.size()) ? f.prop_widths[static_cast<std::size_t>(coord)]
                                                          : fallback;
}

inline AxisProposal shared_axis(double cf, double wf, double ch, double wh) {
    return {0.5 * (cf + ch), 0.8 * std::max(wf, wh) + 0.3 * std::abs(cf - ch) + 0.25};
}

inline AxisProposal own_axis(double c, double w) { return {c, 0.9 * w + 0.3}; }

// The shear z = zdot*zhat in split coordinates: each entry says hat
// coordinate `target` equals the full coordinate minus kernel[kernel_pos]
// times hat coordinate `partner`. Sheared targets are sampled conditionally
// on the kernel and partner draws so proposals track the true support.
struct ShearEntry {
    int target_hat;
    int partner_hat;
    int kernel_pos;
    int target_full;
};

inline std::vector<ShearEntry> shear_table(SeriesId id) {
    switch (id) {
    case SeriesId::Sl3cComplementary:
    case SeriesId::Sl3rComplementary:
        // hat (z21, z31); z31 = zhat31 + z1*z21
        return {{1, 0, 0, 1}};
    case SeriesId::Sl4cComplementaryI:
        // hat (z21, z31, z32, z41, z42); z4j = zhat4j + z1*z3j
        return {{3, 1, 0, 3}, {4, 2, 0, 4}};
    case SeriesId::Sl4cComplementaryII:
        // hat (z31, z32, z41, z42); kernel (z43, z21); z4j = zhat4j + z43*z3j
        return {{2, 0, 0, 3}, {3, 1, 0, 4}};
    case SeriesId::Sl4cComplementaryIII:
        // hat (z31, z32, z41, z42); z4j = zhat4j + z1*z3j
        return {{2, 0, 0, 2}, {3, 1, 0, 3}};
    default:
        return {};
    }
}

// plain-L2 Monte Carlo for the high-dimensional cells, matched proposal;
// the integrand callback sees the cell point
template <typename Integrand>
InnerProductResult plain_mc_core(const SpaceSpec& s, const TestFunction& f, const TestFunction& h,
                                 const QuadratureConfig& q, Integrand&& integrand) {
    Rng rng(Rng::derive(q.seed, 0x91C0));
    McAccumulator re, im;
    const int per = (s.field == Field::Complex) ? 2 : 1;
    const int d = s.n_coords * per;
    std::vector<AxisProposal> prop(static_cast<std::size_t>(d));
    for (int i = 0; i < s.n_coords; ++i) {
        const cplx cf = profile_center(f, i), ch = profile_center(h, i);
        const double wf = profile_width(f, i, q.proposal_width);
        const double wh = profile_width(h, i, q.proposal_width);
        prop[static_cast<std::size_t>(per * i)] = shared_axis(cf.real(), wf, ch.real(), wh);
        if (per == 2) prop[static_cast<std::size_t>(per * i + 1)] = shared_axis(cf.imag(), wf, ch.imag(), wh);
    }
    std::vector<double> x(static_cast<std::size_t>(d));
    for (long it = 0; it < q.samples; ++it) {
        double dens = 1.0;
        for (int i = 0; i < d; ++i) {
            const auto& pr = prop[static_cast<std::size_t>(i)];
            x[static_cast<std::size_t>(i)] = pr.mean + pr.sd * rng.gaussian();
            dens *= gauss_density(x[static_cast<std::size_t>(i)], pr.mean, pr.sd);
        }
        const auto z = coords_from_real(s, x);
        const cplx v = integrand(z, 1.0 / dens);
        re.add(v.real());
        im.add(v.imag());
    }
    InnerProductResult out;
    out.value = cplx(re.mean(), im.mean());
    out.error = std::hypot(re.std_error(), im.std_error());
    return out;
}

inline InnerProductResult plain_mc(const SpaceSpec& s, const TestFunction& f, const TestFunction& h,
                                   const QuadratureConfig& q) {
    return plain_mc_core(s, f, h, q, [&](const std::vector<cplx>& z, double w) {
        return f.eval(z) * std::conj(h.eval(z)) * w;
    });
}

// (a, a) - (b, b) with common random numbers: the shared-draw difference has
// far smaller variance than two independent estimates. value carries the
// difference; error carries the norms' own combined standard error, the
// budget a 3-standard-error comparison is measured against.
inline InnerProductResult plain_mc_diff(const SpaceSpec& s, const TestFunction& a, const TestFunction& b,
                                        const QuadratureConfig& q) {
    McAccumulator na, nb;
    InnerProductResult out = plain_mc_core(s, a, b, q, [&](const std::vector<cplx>& z, double w) {
        const double va = std::norm(a.eval(z)) * w;
        const double vb = std::norm(b.eval(z)) * w;
        na.add(va);
        nb.add(vb);
        return cplx(va - vb, 0.0);
    });
    out.error = std::hypot(na.std_error(), nb.std_error());
    return out;
}

// Riesz-kernel pairing. The kernel coordinates of the second argument are
// sampled as z + delta with delta drawn from a mixture whose near-component
// is the kernel's own radial law, so the estimator has finite variance for
// every sigma in (0,1); sheared hat coordinates are drawn conditionally on
// the kernel values so the proposal follows the true support.
template <typename Integrand>
InnerProductResult riesz_mc_core(const SpaceSpec& s, const TestFunction& f, const TestFunction& h,
                                 const QuadratureConfig& q, Integrand&& integrand) {
    Rng rng(Rng::derive(q.seed, 0x52E5));
    const bool cx = s.field == Field::Complex;
    const double foldR = 1.0;
    const double mix = 0.5;

    std::vector<bool> is_kernel(static_cast<std::size_t>(s.n_coords), false);
    for (int k : s.kernel_idx) is_kernel[static_cast<std::size_t>(k)] = true;
    std::vector<int> hat_full; // full-coordinate index of each hat slot
    for (int i = 0; i < s.n_coords; ++i)
        if (!is_kernel[static_cast<std::size_t>(i)]) hat_full.push_back(i);
    const std::vector<ShearEntry> shears = shear_table(s.series);
    std::vector<bool> sheared(hat_full.size(), false);
    for (const auto& e : shears) sheared[static_cast<std::size_t>(e.target_hat)] = true;

    // static proposals: unsheared hat axes at the midpoint of the profiles,
    // kernel axes matched per argument
    std::vector<AxisProposal> hat_re(hat_full.size()), hat_im(hat_full.size());
    for (std::size_t i = 0; i < hat_full.size(); ++i) {
        if (sheared[i]) continue;
        const int fi = hat_full[i];
        const cplx cf = profile_center(f, fi), ch = profile_center(h, fi);
        const double wf = profile_width(f, fi, q.proposal_width);
        const double wh = profile_width(h, fi, q.proposal_width);
        hat_re[i] = shared_axis(cf.real(), wf, ch.real(), wh);
        hat_im[i] = shared_axis(cf.imag(), wf, ch.imag(), wh);
    }
    std::vector<AxisProposal> z_re, z_im, w_re, w_im;
    for (int k : s.kernel_idx) {
        const cplx cf = profile_center(f, k), ch = profile_center(h, k);
        const double wf = profile_width(f, k, q.proposal_width);
        const double wh = profile_width(h, k, q.proposal_width);
        z_re.push_back(own_axis(cf.real(), wf));
        z_im.push_back(own_axis(cf.imag(), wf));
        w_re.push_back(own_axis(ch.real(), wh));
        w_im.push_back(own_axis(ch.imag(), wh));
    }

    McAccumulator re, im;
    InnerProductResult out;
    long it = 0;
    while (it < q.samples) {
        double dens = 1.0;
        std::vector<cplx> hat(hat_full.size());
        for (std::size_t i = 0; i < hat_full.size(); ++i) {
            if (sheared[i]) continue;
            const double a = hat_re[i].mean + hat_re[i].sd * rng.gaussian();
            dens *= gauss_density(a, hat_re[i].mean, hat_re[i].sd);
            double b = 0.0;
            if (cx) {
                b = hat_im[i].mean + hat_im[i].sd * rng.gaussian();
                dens *= gauss_density(b, hat_im[i].mean, hat_im[i].sd);
            }
            hat[i] = cplx(a, b);
        }
        std::vector<cplx> zk(s.kernel_idx.size()), wk(s.kernel_idx.size());
        double kernel_weight = 1.0;
        bool singular = false;
        for (std::size_t ki = 0; ki < s.kernel_idx.size(); ++ki) {
            const double sig = s.sigmas[ki];
            const double a = z_re[ki].mean + z_re[ki].sd * rng.gaussian();
            dens *= gauss_density(a, z_re[ki].mean, z_re[ki].sd);
            double b = 0.0;
            if (cx) {
                b = z_im[ki].mean + z_im[ki].sd * rng.gaussian();
                dens *= gauss_density(b, z_im[ki].mean, z_im[ki].sd);
            }
            zk[ki] = cplx(a, b);
            // second argument: mixture of the kernel's own radial law around
            // z and an independent draw matched to h
            cplx w1;
            if (rng.uniform() < mix) {
                cplx delta;
                if (cx) {
                    const double r = foldR * std::pow(rng.uniform(), 1.0 / (2.0 * sig));
                    const double th = 2.0 * std::numbers::pi * rng.uniform();
                    delta = cplx(r * std::cos(th), r * std::sin(th));
                } else {
                    const double r = foldR * std::pow(rng.uniform(), 1.0 / sig);
                    delta = cplx(rng.uniform() < 0.5 ? r : -r, 0.0);
                }
                w1 = zk[ki] + delta;
            } else {
                const double a2 = w_re[ki].mean + w_re[ki].sd * rng.gaussian();
                const double b2 = cx ? w_im[ki].mean + w_im[ki].sd * rng.gaussian() : 0.0;
                w1 = cplx(a2, b2);
            }
            const double r = std::abs(w1 - zk[ki]);
            if (r < 1e-10) {
                singular = true; // kernel evaluation at its singularity: resample
                break;
            }
            double p_fold = 0.0;
            if (r <= foldR)
                p_fold = cx ? sig * std::pow(r, 2.0 * sig - 2.0) / (std::numbers::pi * std::pow(foldR, 2.0 * sig))
                            : 0.5 * sig * std::pow(r, sig - 1.0) / std::pow(foldR, sig);
            double p_far = gauss_density(w1.real(), w_re[ki].mean, w_re[ki].sd);
            if (cx) p_far *= gauss_density(w1.imag(), w_im[ki].mean, w_im[ki].sd);
            dens *= mix * p_fold + (1.0 - mix) * p_far;
            wk[ki] = w1;
            kernel_weight *= cx ? std::pow(r, 2.0 * sig - 2.0) : std::pow(r, sig - 1.0);
        }
        if (singular) {
            ++out.resamples;
            continue;
        }
        // sheared targets, conditioned on the partner and kernel draws: the
        // first argument wants zhat = c_f - zK*partner, the second
        // c_h - wK*partner; the shared draw sits between them
        for (const auto& e : shears) {
            const cplx zp = hat[static_cast<std::size_t>(e.partner_hat)];
            const cplx cf = profile_center(f, e.target_full) - zk[static_cast<std::size_t>(e.kernel_pos)] * zp;
            const cplx ch = profile_center(h, e.target_full) - wk[static_cast<std::size_t>(e.kernel_pos)] * zp;
            const double wf = profile_width(f, e.target_full, q.proposal_width);
            const double wh = profile_width(h, e.target_full, q.proposal_width);
            const AxisProposal pre = shared_axis(cf.real(), wf, ch.real(), wh);
            const double a = pre.mean + pre.sd * rng.gaussian();
            dens *= gauss_density(a, pre.mean, pre.sd);
            double b = 0.0;
            if (cx) {
                const AxisProposal pim = shared_axis(cf.imag(), wf, ch.imag(), wh);
                b = pim.mean + pim.sd * rng.gaussian();
                dens *= gauss_density(b, pim.mean, pim.sd);
            }
            hat[static_cast<std::size_t>(e.target_hat)] = cplx(a, b);
        }
        const auto zfull = coords_from_split(s.series, hat, zk);
        const auto wfull = coords_from_split(s.series, hat, wk);
        const cplx v = integrand(zfull, wfull, s.prefactor * kernel_weight / dens);
        re.add(v.real());
        im.add(v.imag());
        ++it;
    }
    out.value = cplx(re.mean(), im.mean());
    out.error = std::hypot(re.std_error(), im.std_error());
    return out;
}

inline InnerProductResult riesz_mc(const SpaceSpec& s, const TestFunction& f, const TestFunction& h,
                                   const QuadratureConfig& q) {
    return riesz_mc_core(s, f, h, q,
                         [&](const std::vector<cplx>& z, const std::vector<cplx>& w, double wt) {
                             return f.eval(z) * std::conj(h.eval(w)) * wt;
                         });
}

inline InnerProductResult riesz_mc_diff(const SpaceSpec& s, const TestFunction& a, const TestFunction& b,
                                        const QuadratureConfig& q) {
    McAccumulator na, nb;
    InnerProductResult out = riesz_mc_core(
        s, a, b, q, [&](const std::vector<cplx>& z, const std::vector<cplx>& w, double wt) {
            const cplx va = a.eval(z) * std::conj(a.eval(w)) * wt;
            const cplx vb = b.eval(z) * std::conj(b.eval(w)) * wt;
            na.add(va.real());
            nb.add(vb.real());
            return va - vb;
        });
    out.error = std::hypot(na.std_error(), nb.std_error());
    return out;
}

// Determinant-kernel pairing, evaluated on the Fourier side where the kernel
// is the locally integrable positive weight |det xi|^(-2 sigma). Requires
// closed-form transforms; value is normalized up to one positive constant
// shared by every pairing at the same sigma.
inline double gamma_sample(Rng& rng, double shape) {
    // Marsaglia-Tsang, with the boost for shape < 1
    if (shape < 1.0) {
        const double u = rng.uniform();
        return gamma_sample(rng, shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    while (true) {
        double x = rng.gaussian();
        double v = 1.0 + c * x;
        if (v <= 0.0) continue;
        v = v * v * v;
        const double u = rng.uniform();
        if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) return d * v;
    }
}

inline InnerProductResult det_kernel_mc(const SpaceSpec& s, const TestFunction& f, const TestFunction& h,
                                        const QuadratureConfig& q) {
    if (!f.fourier || !h.fourier)
        throw ConfigError("determinant-kernel pairing needs closed-form transforms of both arguments");
    const double sig = s.det_sigma;
    if (!(sig > 0.0 && sig < 1.0)) throw NonConvergent("determinant-kernel weight not integrable");
    const double alpha = 0.25;
    Rng rng(Rng::derive(q.seed, 0xDE7));
    McAccumulator re, im;
    for (long it = 0; it < q.samples; ++it) {
        const double r1 = std::sqrt(gamma_sample(rng, 2.0 - sig) / alpha);
        const double r2 = std::sqrt(gamma_sample(rng, 1.0 - sig) / alpha);
        const double tsd = 1.0 / std::sqrt(2.0 * alpha);
        const cplx t(tsd * rng.gaussian(), tsd * rng.gaussian());
        // Haar unitary from a Ginibre draw
        cplx g11(rng.gaussian(), rng.gaussian()), g21(rng.gaussian(), rng.gaussian());
        const double n1 = std::sqrt(std::norm(g11) + std::norm(g21));
        const cplx u11 = g11 / n1, u21 = g21 / n1;
        const cplx u12 = -std::conj(u21), u22 = std::conj(u11);
        const double phase = 2.0 * std::numbers::pi * rng.uniform();
        const cplx ph(std::cos(phase), std::sin(phase));
        // Xi = U * [[r1, t], [0, r2]]  (column phase on the second column)
        const cplx xi11 = u11 * r1, xi21 = u21 * r1;
        const cplx xi12 = (u11 * t + u12 * r2) * ph, xi22 = (u21 * t + u22 * r2) * ph;
        // coordinates ordered (z31, z32, z41, z42) as the difference matrix rows
        const std::vector<cplx> xi = {xi11, xi12, xi21, xi22};
        const double frob = std::norm(xi11) + std::norm(xi12) + std::norm(xi21) + std::norm(xi22);
        const cplx v = f.fourier(xi) * std::conj(h.fourier(xi)) * std::exp(alpha * frob);
        re.add(v.real());
        im.add(v.imag());
    }
    InnerProductResult out;
    out.value = cplx(re.mean(), im.mean());
    out.error = std::hypot(re.std_error(), im.std_error());
    return out;
}

// boundary-level pairing of the Hardy space
inline cplx hardy_level_pairing(const CellFunction& f, const CellFunction& h, int sign, double eps, int p,
                                double scale) {
    const Axis ax = Axis::tan_line(p, scale);
    cplx acc = 0.0;
    for (std::size_t i = 0; i < ax.nodes.size(); ++i) {
        const std::vector<cplx> z = {cplx(ax.nodes[i], sign * eps)};
        acc += ax.weights[i] * f(z) * std::conj(h(z));
    }
    return acc;
}

} // namespace detail

// Numerical pairing (f, h) with an a-posteriori error estimate. When the
// configuration requests a tolerance, an estimate above it raises
// NonConvergent.
inline InnerProductResult inner_product_impl(const SpaceSpec& s, const TestFunction& f,
                                             const TestFunction& h, const QuadratureConfig& q) {
    switch (s.kind) {
    case SpaceKind::PlainL2:
        if (q.scheme == QuadratureConfig::Scheme::MonteCarlo) return detail::plain_mc(s, f, h, q);
        [[fallthrough]];
    case SpaceKind::Bergman:
    case SpaceKind::GGWeight: {
        const int p2 = std::max(6, (3 * q.points_per_axis) / 4);
        InnerProductResult out;
        out.value = detail::tensor_pairing_at(s, f.eval, h.eval, q.points_per_axis, q.box_radius);
        const cplx coarse = detail::tensor_pairing_at(s, f.eval, h.eval, p2, q.box_radius);
        out.error = std::abs(out.value - coarse);
        return out;
    }
    case SpaceKind::RieszKernel:
        return detail::riesz_mc(s, f, h, q);
    case SpaceKind::DetKernel:
        return detail::det_kernel_mc(s, f, h, q);
    case SpaceKind::Hardy: {
        InnerProductResult out;
        out.value = detail::hardy_level_pairing(f.eval, h.eval, s.sign, 1e-3, q.points_per_axis, q.box_radius);
        const cplx coarser =
            detail::hardy_level_pairing(f.eval, h.eval, s.sign, 1e-2, q.points_per_axis, q.box_radius);
        out.error = std::abs(out.value - coarser);
        return out;
    }
    }
    throw ConfigError("inner_product: unknown space kind");
}

inline InnerProductResult inner_product(const SpaceSpec& s, const TestFunction& f, const TestFunction& h,
                                        const QuadratureConfig& q) {
    const InnerProductResult out = inner_product_impl(s, f, h, q);
    if (q.requested_tolerance > 0.0 &&
        out.error > q.requested_tolerance * std::max(1.0, std::abs(out.value)))
        throw NonConvergent("inner_product: error estimate above the requested tolerance at this budget");
    return out;
}

// sup_{y>0} of the boundary integrals, approximated along fixed levels;
// reports whether the levels increase toward the boundary.
struct HardyNormResult {
    double value = 0.0;
    std::vector<double> level_values;
    bool monotone_toward_boundary = true;
};

inline HardyNormResult hardy_norm(const TestFunction& f, int sign, const std::vector<double>& eps_levels,
                                  const QuadratureConfig& q) {
    HardyNormResult out;
    for (double eps : eps_levels) {
        const cplx v = detail::hardy_level_pairing(f.eval, f.eval, sign, eps, q.points_per_axis, q.box_radius);
        out.level_values.push_back(v.real());
    }
    // levels are listed from farthest to closest to the boundary
    for (std::size_t i = 1; i < out.level_values.size(); ++i)
        if (out.level_values[i] + 1e-12 < out.level_values[i - 1] * (1.0 - 1e-6))
            out.monotone_toward_boundary = false;
    for (double v : out.level_values) out.value = std::max(out.value, v);
    return out;
}

// Gram positive-semidefiniteness over a finite family: Gram entries are
// independent pairings, the matrix is normalized to unit maximal diagonal,
// and the minimum eigenvalue is compared against the floor.
inline VerificationReport gram_psd_check(const SpaceSpec& s, const std::vector<TestFunction>& funcs,
                                         const QuadratureConfig& q, double floor_tol = 1e-6) {
    if (funcs.size() < 2) throw ConfigError("gram_psd_check needs at least 2 functions");
    VerificationReport rep;
    rep.suite_name = "gram-psd/" + series_info(s.series).name;
    rep.tolerance = floor_tol;
    rep.seed = q.seed;
    const int n = static_cast<int>(funcs.size());
    Eigen::MatrixXcd gram(n, n);
    long resamples = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            QuadratureConfig qq = q;
            qq.seed = Rng::derive(q.seed, 131 * static_cast<std::uint64_t>(i) + static_cast<std::uint64_t>(j));
            const InnerProductResult r = inner_product(s, funcs[static_cast<std::size_t>(i)],
                                                       funcs[static_cast<std::size_t>(j)], qq);
            gram(i, j) = r.value;
            gram(j, i) = std::conj(r.value);
            resamples += r.resamples;
        }
    double scale = 0.0;
    for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(gram(i, i).real()));
    if (scale <= 0.0) throw NonConvergent("gram_psd_check: vanishing diagonal");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram / scale);
    const double min_eig = es.eigenvalues().minCoeff();
    rep.measured_max_error = std::max(0.0, -min_eig);
    rep.trials_run = n * (n + 1) / 2;
    rep.resamples = resamples;
    std::string spectrum = "normalized spectrum:";
    for (int i = 0; i < n; ++i) spectrum += " " + std::to_string(es.eigenvalues()(i));
    rep.details.push_back(spectrum);
    rep.finish();
    return rep;
}

} // namespace slrep
