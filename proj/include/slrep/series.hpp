#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "slrep/pattern.hpp"

namespace slrep {

enum class SeriesId {
    Sl2cPrincipal,
    Sl2cComplementary,
    Sl2rPrincipal,
    Sl2rComplementary,
    Sl2rDiscrete,
    Sl2rLimit,
    Sl3cPrincipal,
    Sl3cComplementary,
    Sl3cDegenerate21,
    Sl3rPrincipal,
    Sl3rComplementary,
    Sl3rDegenerate21,
    Sl3rGG,
    Sl4cPrincipal,
    Sl4cDegenerate31,
    Sl4cDegenerate211,
    Sl4cDegenerate22,
    Sl4cComplementaryI,
    Sl4cComplementaryII,
    Sl4cComplementaryIII,
    Sl4cStein,
};

constexpr int kSeriesCount = 21;

// Parameter record of a series. Arity conventions per series are validated by
// validate_params(); sign is the half-plane choice for the discrete and
// limit-of-discrete families, s_or_n is the discrete s (>=1) or the
// holomorphic weight n1 (>=2).
struct CharacterParams {
    std::vector<int> m;
    std::vector<double> rho;
    std::vector<double> sigma;
    int s_or_n = 0;
    int halfplane_sign = +1;
};

enum class SpaceKind { PlainL2, RieszKernel, Bergman, Hardy, GGWeight, DetKernel };

// How the coordinates of the cell split for a kernel inner product:
// full = shear(hat, kernel) per z = zdot * zhat with zhat the normal factor.
struct KernelSplit {
    // indices (into the pattern's canonical coordinate order) of the kernel
    // coordinates; remaining indices are the hat coordinates
    std::vector<int> kernel_coord_index;
    std::vector<double> sigmas; // kernel exponent parameter per kernel coordinate
};

struct SeriesInfo {
    SeriesId id;
    std::string name;
    int n;
    Field field;
    BlockPattern pattern;       // decomposition pattern driving the action
    SpaceKind space;
    std::string param_desc;
    std::string space_desc;
    std::string description;
    bool has_character;         // chi(k) display exists (everything except discrete/limit/gg)
    bool principal_type;        // |chi| = 1
};

inline const std::array<SeriesInfo, kSeriesCount>& series_table() {
    static const std::array<SeriesInfo, kSeriesCount> t = {{
        {SeriesId::Sl2cPrincipal, "sl2c-principal", 2, Field::Complex, {{1, 1}, Field::Complex},
         SpaceKind::PlainL2, "(m2 in Z, rho2 in R)", "L2 of the complex line",
         "principal series of the rank-1 complex group on the affine cell", true, true},
        {SeriesId::Sl2cComplementary, "sl2c-complementary", 2, Field::Complex, {{1, 1}, Field::Complex},
         SpaceKind::RieszKernel, "(sigma in (0,1))", "|z-w|^(2s-2) kernel pairing over C",
         "complementary series with Riesz-kernel inner product", true, false},
        {SeriesId::Sl2rPrincipal, "sl2r-principal", 2, Field::Real, {{1, 1}, Field::Real},
         SpaceKind::PlainL2, "(m2 in {0,1}, rho2 in R)", "L2 of the real line",
         "principal series of the rank-1 split group", true, true},
        {SeriesId::Sl2rComplementary, "sl2r-complementary", 2, Field::Real, {{1, 1}, Field::Real},
         SpaceKind::RieszKernel, "(sigma in (0,1))", "|x-y|^(s-1)/Gamma(s) kernel pairing over R",
         "complementary series with Riesz-kernel inner product", true, false},
        {SeriesId::Sl2rDiscrete, "sl2r-discrete", 2, Field::Real, {{1, 1}, Field::Real},
         SpaceKind::Bergman, "(sign in {+,-}, s in Z, s>=1)", "weighted Bergman space of a half-plane",
         "discrete series on holomorphic functions of the upper/lower half-plane", false, false},
        {SeriesId::Sl2rLimit, "sl2r-limit", 2, Field::Real, {{1, 1}, Field::Real},
         SpaceKind::Hardy, "(sign in {+,-})", "Hardy space of a half-plane",
         "limit of discrete series on the Hardy space", false, false},
        {SeriesId::Sl3cPrincipal, "sl3c-principal", 3, Field::Complex, {{1, 1, 1}, Field::Complex},
         SpaceKind::PlainL2, "(m2,m3 in Z; rho2,rho3 in R)", "L2 of the full unipotent cell",
         "principal series on the full flag cell", true, true},
        {SeriesId::Sl3cComplementary, "sl3c-complementary", 3, Field::Complex, {{1, 1, 1}, Field::Complex},
         SpaceKind::RieszKernel, "(m in Z, rho in R, sigma in (0,1))",
         "Riesz kernel in the z32 coordinate, L2 in the rest",
         "complementary series deformed along one root direction", true, false},
        {SeriesId::Sl3cDegenerate21, "sl3c-degenerate-21", 3, Field::Complex, {{2, 1}, Field::Complex},
         SpaceKind::PlainL2, "(m2 in Z, rho2 in R)", "L2 of the (2,1) cell",
         "degenerate principal series induced from the (2,1) parabolic", true, true},
        {SeriesId::Sl3rPrincipal, "sl3r-principal", 3, Field::Real, {{1, 1, 1}, Field::Real},
         SpaceKind::PlainL2, "(m2,m3 in {0,1}; rho2,rho3 in R)", "L2 of the full real cell",
         "principal series on the full real flag cell", true, true},
        {SeriesId::Sl3rComplementary, "sl3r-complementary", 3, Field::Real, {{1, 1, 1}, Field::Real},
         SpaceKind::RieszKernel, "(m in {0,1}, rho in R, sigma in (0,1))",
         "Riesz kernel in the x32 coordinate, L2 in the rest",
         "real complementary series deformed along one root direction", true, false},
        {SeriesId::Sl3rDegenerate21, "sl3r-degenerate-21", 3, Field::Real, {{2, 1}, Field::Real},
         SpaceKind::PlainL2, "(m2 in {0,1}, rho2 in R)", "L2 of the real (2,1) cell",
         "real degenerate principal series from the (2,1) parabolic", true, true},
        {SeriesId::Sl3rGG, "sl3r-gg", 3, Field::Real, {{2, 1}, Field::Real},
         SpaceKind::GGWeight, "(n1 in Z, n1>=2, rho1 in R)",
         "|Im z21|^(n1-2)/Gamma(n1-1) weighted L2 over both half-planes",
         "extra principal series on Z1, holomorphic in z21 on each half-plane", false, false},
        {SeriesId::Sl4cPrincipal, "sl4c-principal", 4, Field::Complex, {{1, 1, 1, 1}, Field::Complex},
         SpaceKind::PlainL2, "(m2,m3,m4 in Z; rho2,rho3,rho4 in R)", "L2 of the full unipotent cell",
         "principal series on the full flag cell", true, true},
        {SeriesId::Sl4cDegenerate31, "sl4c-degenerate-31", 4, Field::Complex, {{3, 1}, Field::Complex},
         SpaceKind::PlainL2, "(m2 in Z, rho2 in R)", "L2 of the (3,1) cell",
         "degenerate principal series from the (3,1) parabolic", true, true},
        {SeriesId::Sl4cDegenerate211, "sl4c-degenerate-211", 4, Field::Complex, {{2, 1, 1}, Field::Complex},
         SpaceKind::PlainL2, "(m2,m3 in Z; rho2,rho3 in R)", "L2 of the (2,1,1) cell",
         "degenerate principal series from the (2,1,1) parabolic", true, true},
        {SeriesId::Sl4cDegenerate22, "sl4c-degenerate-22", 4, Field::Complex, {{2, 2}, Field::Complex},
         SpaceKind::PlainL2, "(m2 in Z, rho2 in R)", "L2 of the (2,2) cell",
         "degenerate principal series from the (2,2) parabolic; character of the block determinant",
         true, true},
        {SeriesId::Sl4cComplementaryI, "sl4c-complementary-i", 4, Field::Complex,
         {{1, 1, 1, 1}, Field::Complex}, SpaceKind::RieszKernel,
         "(m2,m3 in Z; rho2,rho3 in R; sigma in (0,1))", "Riesz kernel in z43, L2 in the rest",
         "first complementary family on the full cell", true, false},
        {SeriesId::Sl4cComplementaryII, "sl4c-complementary-ii", 4, Field::Complex,
         {{1, 1, 1, 1}, Field::Complex}, SpaceKind::RieszKernel,
         "(m2 in Z, rho2 in R; sigma1,sigma2 in (0,1))",
         "Riesz kernels in z43 and z21, L2 in the rest",
         "second complementary family, deformed along two root directions", true, false},
        {SeriesId::Sl4cComplementaryIII, "sl4c-complementary-iii", 4, Field::Complex,
         {{2, 1, 1}, Field::Complex}, SpaceKind::RieszKernel,
         "(m2 in Z, rho2 in R, sigma in (0,1))", "Riesz kernel in z43 over the (2,1,1) cell",
         "third complementary family, on the (2,1,1) cell", true, false},
        {SeriesId::Sl4cStein, "sl4c-stein", 4, Field::Complex, {{2, 2}, Field::Complex},
         SpaceKind::DetKernel, "(sigma in (0,1))",
         "|det(z-w)|^(2s-4) determinant-kernel pairing over the (2,2) cell",
         "Stein complementary series with determinant kernel", true, false},
    }};
    return t;
}

inline const SeriesInfo& series_info(SeriesId id) {
    return series_table()[static_cast<std::size_t>(id)];
}

inline std::optional<SeriesId> series_by_name(const std::string& name) {
    for (const auto& s : series_table())
        if (s.name == name) return s.id;
    return std::nullopt;
}

// Arity checks per series; sigma bounds strict (0,1); GG requires n1 >= 2
// (the weight's Gamma(n1-1) is undefined at n1 = 1).
inline void validate_params(SeriesId id, const CharacterParams& p) {
    auto need = [&](bool ok, const char* what) {
        if (!ok) throw ConfigError(std::string("params for ") + series_info(id).name + ": " + what);
    };
    auto sigmas_open01 = [&](std::size_t count) {
        need(p.sigma.size() == count, "wrong sigma arity");
        for (double s : p.sigma) need(s > 0.0 && s < 1.0, "sigma must lie strictly in (0,1)");
    };
    auto binary_m = [&](std::size_t count) {
        need(p.m.size() == count, "wrong m arity");
        for (int m : p.m) need(m == 0 || m == 1, "real principal-type m must be 0 or 1");
    };
    switch (id) {
    case SeriesId::Sl2cPrincipal:
        need(p.m.size() == 1 && p.rho.size() == 1 && p.sigma.empty(), "expected (m2, rho2)");
        break;
    case SeriesId::Sl2cComplementary:
        need(p.m.empty() && p.rho.empty(), "expected (sigma)");
        sigmas_open01(1);
        break;
    case SeriesId::Sl2rPrincipal:
        binary_m(1);
        need(p.rho.size() == 1 && p.sigma.empty(), "expected (m2, rho2)");
        break;
    case SeriesId::Sl2rComplementary:
        need(p.m.empty() && p.rho.empty(), "expected (sigma)");
        sigmas_open01(1);
        break;
    case SeriesId::Sl2rDiscrete:
        need(p.s_or_n >= 1, "discrete s must be a positive integer");
        need(p.halfplane_sign == 1 || p.halfplane_sign == -1, "sign must be +1/-1");
        break;
    case SeriesId::Sl2rLimit:
        need(p.halfplane_sign == 1 || p.halfplane_sign == -1, "sign must be +1/-1");
        break;
    case SeriesId::Sl3cPrincipal:
        need(p.m.size() == 2 && p.rho.size() == 2 && p.sigma.empty(), "expected (m2,m3,rho2,rho3)");
        break;
    case SeriesId::Sl3cComplementary:
        need(p.m.size() == 1 && p.rho.size() == 1, "expected (m, rho, sigma)");
        sigmas_open01(1);
        break;
    case SeriesId::Sl3cDegenerate21:
        need(p.m.size() == 1 && p.rho.size() == 1 && p.sigma.empty(), "expected (m2, rho2)");
        break;
    case SeriesId::Sl3rPrincipal:
        binary_m(2);
        need(p.rho.size() == 2 && p.sigma.empty(), "expected (m2,m3,rho2,rho3)");
        break;
    case SeriesId::Sl3rComplementary:
        binary_m(1);
        need(p.rho.size() == 1, "expected (m, rho, sigma)");
        sigmas_open01(1);
        break;
    case SeriesId::Sl3rDegenerate21:
        binary_m(1);
        need(p.rho.size() == 1 && p.sigma.empty(), "expected (m2, rho2)");
        break;
    case SeriesId::Sl3rGG:
        need(p.s_or_n >= 2, "gg weight n1 must be >= 2");
        need(p.rho.size() == 1, "expected (n1, rho1)");
        break;
    case SeriesId::Sl4cPrincipal:
        need(p.m.size() == 3 && p.rho.size() == 3 && p.sigma.empty(),
             "expected (m2,m3,m4,rho2,rho3,rho4)");
        break;
    case SeriesId::Sl4cDegenerate31:
    case SeriesId::Sl4cDegenerate22:
        need(p.m.size() == 1 && p.rho.size() == 1 && p.sigma.empty(), "expected (m2, rho2)");
        break;
    case SeriesId::Sl4cDegenerate211:
        need(p.m.size() == 2 && p.rho.size() == 2 && p.sigma.empty(), "expected (m2,m3,rho2,rho3)");
        break;
    case SeriesId::Sl4cComplementaryI:
        need(p.m.size() == 2 && p.rho.size() == 2, "expected (m2,m3,rho2,rho3,sigma)");
        sigmas_open01(1);
        break;
    case SeriesId::Sl4cComplementaryII:
        need(p.m.size() == 1 && p.rho.size() == 1, "expected (m2,rho2,sigma1,sigma2)");
        sigmas_open01(2);
        break;
    case SeriesId::Sl4cComplementaryIII:
        need(p.m.size() == 1 && p.rho.size() == 1, "expected (m2,rho2,sigma)");
        sigmas_open01(1);
        break;
    case SeriesId::Sl4cStein:
        need(p.m.empty() && p.rho.empty(), "expected (sigma)");
        sigmas_open01(1);
        break;
    }
}

// Generic parameter values used when a suite does not specify its own.
inline CharacterParams default_params(SeriesId id) {
    CharacterParams p;
    switch (id) {
    case SeriesId::Sl2cPrincipal: p.m = {1}; p.rho = {0.7}; break;
    case SeriesId::Sl2cComplementary: p.sigma = {0.5}; break;
    case SeriesId::Sl2rPrincipal: p.m = {1}; p.rho = {0.6}; break;
    case SeriesId::Sl2rComplementary: p.sigma = {0.5}; break;
    case SeriesId::Sl2rDiscrete: p.s_or_n = 1; p.halfplane_sign = +1; break;
    case SeriesId::Sl2rLimit: p.halfplane_sign = +1; break;
    case SeriesId::Sl3cPrincipal: p.m = {1, 2}; p.rho = {0.4, 1.1}; break;
    case SeriesId::Sl3cComplementary: p.m = {1}; p.rho = {0.3}; p.sigma = {0.5}; break;
    case SeriesId::Sl3cDegenerate21: p.m = {2}; p.rho = {0.8}; break;
    case SeriesId::Sl3rPrincipal: p.m = {1, 0}; p.rho = {0.5, 1.2}; break;
    case SeriesId::Sl3rComplementary: p.m = {1}; p.rho = {0.4}; p.sigma = {0.5}; break;
    case SeriesId::Sl3rDegenerate21: p.m = {1}; p.rho = {0.9}; break;
    case SeriesId::Sl3rGG: p.s_or_n = 2; p.rho = {0.6}; break;
    case SeriesId::Sl4cPrincipal: p.m = {1, -1, 2}; p.rho = {0.3, 0.9, -0.5}; break;
    case SeriesId::Sl4cDegenerate31: p.m = {1}; p.rho = {0.7}; break;
    case SeriesId::Sl4cDegenerate211: p.m = {1, 2}; p.rho = {0.4, -0.6}; break;
    case SeriesId::Sl4cDegenerate22: p.m = {2}; p.rho = {0.5}; break;
    case SeriesId::Sl4cComplementaryI: p.m = {1, 1}; p.rho = {0.3, 0.7}; p.sigma = {0.5}; break;
    case SeriesId::Sl4cComplementaryII: p.m = {1}; p.rho = {0.4}; p.sigma = {0.4, 0.6}; break;
    case SeriesId::Sl4cComplementaryIII: p.m = {1}; p.rho = {0.5}; p.sigma = {0.5}; break;
    case SeriesId::Sl4cStein: p.sigma = {0.5}; break;
    }
    return p;
}

// Kernel structure of the complementary-type spaces (empty split otherwise).
// Indices refer to the pattern's canonical coordinate order.
inline KernelSplit kernel_split(SeriesId id, const CharacterParams& p) {
    KernelSplit ks;
    switch (id) {
    case SeriesId::Sl2cComplementary:
    case SeriesId::Sl2rComplementary:
        ks.kernel_coord_index = {0};
        ks.sigmas = {p.sigma[0]};
        break;
    case SeriesId::Sl3cComplementary:
    case SeriesId::Sl3rComplementary:
        ks.kernel_coord_index = {2}; // z32 of (z21,z31,z32)
        ks.sigmas = {p.sigma[0]};
        break;
    case SeriesId::Sl4cComplementaryI:
        ks.kernel_coord_index = {5}; // z43 of (z21,z31,z32,z41,z42,z43)
        ks.sigmas = {p.sigma[0]};
        break;
    case SeriesId::Sl4cComplementaryII:
        // the z21 direction pairs with the |k22| deformation (sigma1), the
        // z43 direction with the k33/k44 split (sigma2)
        ks.kernel_coord_index = {5, 0}; // z43, z21
        ks.sigmas = {p.sigma[1], p.sigma[0]};
        break;
    case SeriesId::Sl4cComplementaryIII:
        ks.kernel_coord_index = {4}; // z43 of (z31,z32,z41,z42,z43)
        ks.sigmas = {p.sigma[0]};
        break;
    default:
        break;
    }
    return ks;
}

// Coordinates of the cell from the split (zhat, kernel values): the shear
// z = zdot * zhat. Hat coordinates are listed in canonical order with the
// kernel slots skipped.
inline std::vector<cplx> coords_from_split(SeriesId id, const std::vector<cplx>& hat,
                                           const std::vector<cplx>& kernel_vals) {
    const SeriesInfo& info = series_info(id);
    const KernelSplit ks = kernel_split(id, default_params(id));
    const std::size_t total = info.pattern.free_positions().size();
    std::vector<cplx> full(total, cplx(0.0));
    std::vector<bool> is_kernel(total, false);
    for (std::size_t i = 0; i < ks.kernel_coord_index.size(); ++i) {
        full[static_cast<std::size_t>(ks.kernel_coord_index[i])] = kernel_vals[i];
        is_kernel[static_cast<std::size_t>(ks.kernel_coord_index[i])] = true;
    }
    std::size_t h = 0;
    for (std::size_t i = 0; i < total; ++i)
        if (!is_kernel[i]) full[i] = hat[h++];

    // apply the zdot shear onto the normal factor
    switch (id) {
    case SeriesId::Sl3cComplementary:
    case SeriesId::Sl3rComplementary: {
        // coords (z21, z31, z32): z31 += z1 * z21 with z1 = z32
        full[1] += full[2] * full[0];
        break;
    }
    case SeriesId::Sl4cComplementaryI: {
        // (z21,z31,z32,z41,z42,z43): z41 += z43*z31, z42 += z43*z32
        full[3] += full[5] * full[1];
        full[4] += full[5] * full[2];
        break;
    }
    case SeriesId::Sl4cComplementaryII: {
        full[3] += full[5] * full[1];
        full[4] += full[5] * full[2];
        break;
    }
    case SeriesId::Sl4cComplementaryIII: {
        // (z31,z32,z41,z42,z43): z41 += z43*z31, z42 += z43*z32
        full[2] += full[4] * full[0];
        full[3] += full[4] * full[1];
        break;
    }
    default:
        break;
    }
    return full;
}

} // namespace slrep
