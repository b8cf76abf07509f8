#pragma once

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "slrep/decompose.hpp"
#include "slrep/series.hpp"

namespace slrep {

// One multiplicative factor of a character: |d|^(mod_re + i*rho) * d^(-int_pow)
// in the complex form, |d|^(mod_re + i*rho) * sign(d)^int_pow in the real
// sign form. d is the block datum (a diagonal entry or block determinant).
struct CharFactor {
    int datum;
    double mod_re;
    double rho;
    int int_pow;
    bool sign_form;
};

inline std::vector<CharFactor> char_factors(SeriesId id, const CharacterParams& p) {
    switch (id) {
    case SeriesId::Sl2cPrincipal:
        return {{1, double(p.m[0]), p.rho[0], p.m[0], false}};
    case SeriesId::Sl2cComplementary:
        return {{1, -2.0 * p.sigma[0], 0.0, 0, false}};
    case SeriesId::Sl2rPrincipal:
        return {{1, 0.0, p.rho[0], p.m[0], true}};
    case SeriesId::Sl2rComplementary:
        return {{1, -p.sigma[0], 0.0, 0, false}};
    case SeriesId::Sl3cPrincipal:
        return {{1, double(p.m[0]), p.rho[0], p.m[0], false},
                {2, double(p.m[1]), p.rho[1], p.m[1], false}};
    case SeriesId::Sl3cComplementary:
        return {{1, p.m[0] + p.sigma[0], p.rho[0], p.m[0], false},
                {2, p.m[0] - p.sigma[0], p.rho[0], p.m[0], false}};
    case SeriesId::Sl3cDegenerate21:
        return {{1, double(p.m[0]), p.rho[0], p.m[0], false}};
    case SeriesId::Sl3rPrincipal:
        return {{1, 0.0, p.rho[0], p.m[0], true}, {2, 0.0, p.rho[1], p.m[1], true}};
    case SeriesId::Sl3rComplementary:
        // operator display carries sign(k)^(-m); for real k and m in {0,1}
        // this equals sign(k)^m. The deformation enters with half the kernel
        // parameter: that is the normalization under which the |x-y|^(s-1)
        // pairing is both invariant and positive on the whole window (0,1).
        return {{1, 0.5 * p.sigma[0], p.rho[0], p.m[0], true},
                {2, -0.5 * p.sigma[0], p.rho[0], p.m[0], true}};
    case SeriesId::Sl3rDegenerate21:
        // verbatim |k33|^(m2+i rho2) k33^(-m2) on the real field
        return {{1, double(p.m[0]), p.rho[0], p.m[0], false}};
    case SeriesId::Sl4cPrincipal:
        return {{1, double(p.m[0]), p.rho[0], p.m[0], false},
                {2, double(p.m[1]), p.rho[1], p.m[1], false},
                {3, double(p.m[2]), p.rho[2], p.m[2], false}};
    case SeriesId::Sl4cDegenerate31:
        return {{1, double(p.m[0]), p.rho[0], p.m[0], false}};
    case SeriesId::Sl4cDegenerate211:
        return {{1, double(p.m[0]), p.rho[0], p.m[0], false},
                {2, double(p.m[1]), p.rho[1], p.m[1], false}};
    case SeriesId::Sl4cDegenerate22:
        return {{1, double(p.m[0]), p.rho[0], p.m[0], false}};
    case SeriesId::Sl4cComplementaryI:
        return {{1, double(p.m[0]), p.rho[0], p.m[0], false},
                {2, p.m[1] + p.sigma[0], p.rho[1], p.m[1], false},
                {3, p.m[1] - p.sigma[0], p.rho[1], p.m[1], false}};
    case SeriesId::Sl4cComplementaryII:
        return {{1, -2.0 * p.sigma[0], 0.0, 0, false},
                {2, p.m[0] + p.sigma[1] - p.sigma[0], p.rho[0], p.m[0], false},
                {3, p.m[0] - p.sigma[1] - p.sigma[0], p.rho[0], p.m[0], false}};
    case SeriesId::Sl4cComplementaryIII:
        return {{1, p.m[0] + p.sigma[0], p.rho[0], p.m[0], false},
                {2, p.m[0] - p.sigma[0], p.rho[0], p.m[0], false}};
    case SeriesId::Sl4cStein:
        return {{1, -2.0 * p.sigma[0], 0.0, 0, false}};
    case SeriesId::Sl2rDiscrete:
    case SeriesId::Sl2rLimit:
    case SeriesId::Sl3rGG:
        throw ConfigError("series has no character display: " + series_info(id).name);
    }
    throw ConfigError("unknown series");
}

// beta^(-1/2) as modulus-exponent shifts on the block data (absolute-value
// exponents; the complex field carries twice the real exponents).
inline std::vector<std::pair<int, double>> beta_half_shifts(const BlockPattern& p) {
    const double c = (p.field == Field::Complex) ? 1.0 : 0.5;
    if (p.is_full()) {
        std::vector<std::pair<int, double>> s;
        for (int j = 1; j < p.num_blocks(); ++j) s.emplace_back(j, -2.0 * j * c);
        return s;
    }
    if (p.blocks == std::vector<int>{2, 1}) return {{1, -3.0 * c}};
    if (p.blocks == std::vector<int>{3, 1}) return {{1, -4.0 * c}};
    if (p.blocks == std::vector<int>{2, 1, 1}) return {{1, -3.0 * c}, {2, -5.0 * c}};
    if (p.blocks == std::vector<int>{2, 2}) return {{1, -4.0 * c}};
    throw ConfigError("beta_half_shifts: unsupported pattern " + p.label());
}

namespace detail {

inline void check_nonzero_datum(const std::vector<cplx>& data, int idx) {
    double scale = 1.0;
    for (const cplx& d : data) scale = std::max(scale, std::abs(d));
    if (std::abs(data[static_cast<std::size_t>(idx)]) < 1e-12 * scale)
        throw ZeroDiagonal("character datum is numerically zero");
}

// |d|^(mod_re + i rho), single-valued: exp((mod_re + i rho) ln|d|).
inline cplx modulus_power(cplx d, double mod_re, double rho) {
    const double l = std::log(std::abs(d));
    return std::exp(cplx(mod_re * l, rho * l));
}

// d^(-p) by repeated multiplication; integer exponents avoid branch cuts.
inline cplx int_power_neg(cplx d, int p) {
    cplx r = 1.0;
    if (p >= 0) {
        const cplx inv = cplx(1.0) / d;
        for (int i = 0; i < p; ++i) r *= inv;
    } else {
        for (int i = 0; i < -p; ++i) r *= d;
    }
    return r;
}

inline cplx eval_factors(const std::vector<CharFactor>& fs, const std::vector<cplx>& data,
                         const std::vector<std::pair<int, double>>* shifts) {
    cplx out = 1.0;
    for (const CharFactor& f : fs) {
        check_nonzero_datum(data, f.datum);
        const cplx d = data[static_cast<std::size_t>(f.datum)];
        double mod_re = f.mod_re;
        if (shifts)
            for (const auto& [idx, sh] : *shifts)
                if (idx == f.datum) mod_re += sh;
        out *= modulus_power(d, mod_re, f.rho);
        if (f.sign_form) {
            const double sg = (d.real() >= 0.0) ? 1.0 : -1.0;
            if (f.int_pow % 2 != 0) out *= sg;
        } else {
            out *= int_power_neg(d, f.int_pow);
        }
    }
    // shifts on data the character does not touch (e.g. sigma-free blocks)
    if (shifts)
        for (const auto& [idx, sh] : *shifts) {
            bool seen = false;
            for (const CharFactor& f : fs) seen = seen || f.datum == idx;
            if (!seen) {
                check_nonzero_datum(data, idx);
                out *= modulus_power(data[static_cast<std::size_t>(idx)], sh, 0.0);
            }
        }
    return out;
}

} // namespace detail

inline cplx character_eval_data(SeriesId id, const CharacterParams& p, const std::vector<cplx>& data) {
    return detail::eval_factors(char_factors(id, p), data, nullptr);
}

inline cplx character_eval(SeriesId id, const CharacterParams& p, const ParabolicElement& k) {
    std::vector<cplx> data(static_cast<std::size_t>(k.pattern.num_blocks()));
    for (int ib = 0; ib < k.pattern.num_blocks(); ++ib) data[static_cast<std::size_t>(ib)] = k.block_det(ib);
    // 1x1 blocks: the datum is the diagonal entry itself
    for (int ib = 0; ib < k.pattern.num_blocks(); ++ib)
        if (k.pattern.blocks[static_cast<std::size_t>(ib)] == 1)
            data[static_cast<std::size_t>(ib)] = k.entries.at(k.pattern.block_start(ib), k.pattern.block_start(ib));
    return character_eval_data(id, p, data);
}

// The displayed modular function beta(k) on block data.
inline double modular_eval_data(const BlockPattern& p, const std::vector<cplx>& data) {
    const double c = (p.field == Field::Complex) ? 2.0 : 1.0;
    std::vector<std::pair<int, double>> exps;
    if (p.is_full()) {
        for (int j = 1; j < p.num_blocks(); ++j) exps.emplace_back(j, (2.0 * j) * c);
    } else if (p.blocks == std::vector<int>{2, 1}) {
        exps = {{1, 3.0 * c}};
    } else if (p.blocks == std::vector<int>{3, 1}) {
        exps = {{1, 4.0 * c}};
    } else if (p.blocks == std::vector<int>{2, 1, 1}) {
        exps = {{1, 3.0 * c}, {2, 5.0 * c}};
    } else if (p.blocks == std::vector<int>{2, 2}) {
        exps = {{1, 4.0 * c}};
    } else {
        throw ConfigError("modular_eval: unsupported pattern " + p.label());
    }
    double out = 1.0;
    for (const auto& [idx, e] : exps) {
        detail::check_nonzero_datum(data, idx);
        out *= std::pow(std::abs(data[static_cast<std::size_t>(idx)]), e);
    }
    return out;
}

inline double modular_eval(const ParabolicElement& k) {
    std::vector<cplx> data(static_cast<std::size_t>(k.pattern.num_blocks()));
    for (int ib = 0; ib < k.pattern.num_blocks(); ++ib) {
        const int s = k.pattern.block_start(ib);
        data[static_cast<std::size_t>(ib)] =
            (k.pattern.blocks[static_cast<std::size_t>(ib)] == 1) ? k.entries.at(s, s) : k.block_det(ib);
    }
    return modular_eval_data(k.pattern, data);
}

// chi(k_g) beta^(-1/2)(k_g) evaluated through the closed-form decomposition
// at (z, g). This is the twisting scalar of every character-induced series.
inline cplx multiplier_from_data(SeriesId id, const CharacterParams& p, const std::vector<cplx>& data) {
    const auto shifts = beta_half_shifts(series_info(id).pattern);
    return detail::eval_factors(char_factors(id, p), data, &shifts);
}

inline cplx multiplier(SeriesId id, const CharacterParams& p, const UnipotentPoint& z, const Mat& g) {
    const DecompResult d = decompose_closed_form(series_info(id).pattern, z, g);
    return multiplier_from_data(id, p, d.block_char_data);
}

// ---------------------------------------------------------------------------
// parameter equivalence

struct Sl3Params {
    double m2, m3, rho2, rho3;
    friend bool operator<(const Sl3Params& a, const Sl3Params& b) {
        if (a.m2 != b.m2) return a.m2 < b.m2;
        if (a.m3 != b.m3) return a.m3 < b.m3;
        if (a.rho2 != b.rho2) return a.rho2 < b.rho2;
        return a.rho3 < b.rho3;
    }
};

// The six listed parameter transformations; for the real case integer parts
// are reduced mod 2 into {0,1}.
inline std::vector<Sl3Params> weyl_images_sl3(const Sl3Params& p, bool real_case) {
    auto norm = [&](Sl3Params q) {
        if (real_case) {
            auto mod2 = [](double v) {
                long r = std::lround(v) % 2;
                return double(r < 0 ? r + 2 : r);
            };
            q.m2 = mod2(q.m2);
            q.m3 = mod2(q.m3);
        }
        return q;
    };
    return {norm({p.m2, p.m3, p.rho2, p.rho3}),
            norm({-p.m2, p.m3 - p.m2, -p.rho2, p.rho3 - p.rho2}),
            norm({p.m3 - p.m2, -p.m2, p.rho3 - p.rho2, -p.rho2}),
            norm({-p.m3, p.m2 - p.m3, -p.rho3, p.rho2 - p.rho3}),
            norm({p.m3, p.m2, p.rho3, p.rho2}),
            norm({p.m2 - p.m3, -p.m3, p.rho2 - p.rho3, -p.rho3})};
}

inline bool sl3_params_close(const Sl3Params& a, const Sl3Params& b, double tol) {
    const double s = 1.0 + std::max({std::abs(a.rho2), std::abs(a.rho3), std::abs(b.rho2), std::abs(b.rho3)});
    return std::abs(a.m2 - b.m2) < 0.5 && std::abs(a.m3 - b.m3) < 0.5 &&
           std::abs(a.rho2 - b.rho2) <= tol * s && std::abs(a.rho3 - b.rho3) <= tol * s;
}

// Orbit as a deduplicated set (rho parts compared at 1e-12 relative).
inline std::vector<Sl3Params> weyl_orbit_sl3(const Sl3Params& p, bool real_case) {
    std::vector<Sl3Params> orbit;
    for (const Sl3Params& q : weyl_images_sl3(p, real_case)) {
        bool dup = false;
        for (const Sl3Params& o : orbit) dup = dup || sl3_params_close(o, q, 1e-12);
        if (!dup) orbit.push_back(q);
    }
    return orbit;
}

inline bool params_equal(const CharacterParams& a, const CharacterParams& b, double tol = 1e-12) {
    if (a.m != b.m || a.s_or_n != b.s_or_n || a.halfplane_sign != b.halfplane_sign) return false;
    if (a.rho.size() != b.rho.size() || a.sigma.size() != b.sigma.size()) return false;
    for (std::size_t i = 0; i < a.rho.size(); ++i)
        if (std::abs(a.rho[i] - b.rho[i]) > tol * (1.0 + std::abs(a.rho[i]))) return false;
    for (std::size_t i = 0; i < a.sigma.size(); ++i)
        if (std::abs(a.sigma[i] - b.sigma[i]) > tol) return false;
    return true;
}

// The stated equivalence condition of each family. Families the source
// catalogue labels only "inequivalent" compare by parameter equality.
inline bool are_equivalent(SeriesId id, const CharacterParams& a, const CharacterParams& b) {
    validate_params(id, a);
    validate_params(id, b);
    constexpr double tol = 1e-12;
    switch (id) {
    case SeriesId::Sl2cPrincipal: {
        const bool plus = a.m[0] == b.m[0] && std::abs(a.rho[0] - b.rho[0]) <= tol * (1.0 + std::abs(a.rho[0]));
        const bool minus = a.m[0] == -b.m[0] && std::abs(a.rho[0] + b.rho[0]) <= tol * (1.0 + std::abs(a.rho[0]));
        return plus || minus;
    }
    case SeriesId::Sl2rPrincipal:
        return a.m[0] == b.m[0] && (std::abs(a.rho[0] - b.rho[0]) <= tol * (1.0 + std::abs(a.rho[0])) ||
                                    std::abs(a.rho[0] + b.rho[0]) <= tol * (1.0 + std::abs(a.rho[0])));
    case SeriesId::Sl3cPrincipal:
    case SeriesId::Sl3rPrincipal: {
        const bool real_case = id == SeriesId::Sl3rPrincipal;
        const Sl3Params pa{double(a.m[0]), double(a.m[1]), a.rho[0], a.rho[1]};
        // normalized representative of b (mod-2 reduction in the real case)
        const Sl3Params pb =
            weyl_images_sl3({double(b.m[0]), double(b.m[1]), b.rho[0], b.rho[1]}, real_case)[0];
        for (const Sl3Params& q : weyl_images_sl3(pa, real_case))
            if (sl3_params_close(q, pb, tol)) return true;
        return false;
    }
    default:
        return params_equal(a, b, tol);
    }
}

// Irreducible if and only if (m2, rho2) != (1, 0); strict.
inline bool irreducibility_flag_sl2r(const CharacterParams& p) {
    validate_params(SeriesId::Sl2rPrincipal, p);
    return !(p.m[0] == 1 && p.rho[0] == 0.0);
}

} // namespace slrep
