#pragma once

#include <algorithm>
#include <cmath>

#include "slrep/pattern.hpp"

namespace slrep {

constexpr double kSingularTol = 1e-8;

namespace detail {

// Solve T*x = b for a b x b block, b <= 3, by Cramer's rule.
inline void cramer_solve(const Mat& t, const cplx* b, cplx* x, int dim) {
    const cplx d = det(t);
    for (int j = 0; j < dim; ++j) {
        Mat tj = t;
        for (int i = 0; i < dim; ++i) tj.at(i, j) = b[i];
        x[j] = det(tj) / d;
    }
}

// Local scale for margin normalization: max entry modulus of m, floored away
// from zero.
inline double local_scale(const Mat& m) { return std::max(m.max_abs(), 1e-300); }

} // namespace detail

// Direct elimination factorization m = k * z' with z' lower-block-unipotent,
// k upper-block-parabolic, working bottom block-row up. The genericity margin
// is min over trailing principal block minors M_j of |M_j| / scale^(size),
// identical to the quantity the closed forms divide by.
inline DecompResult decompose_oracle(const BlockPattern& p, const UnipotentPoint& z, const Mat& g) {
    const int n = p.n();
    const int q = p.num_blocks();
    Mat m = z.embed() * g;
    const double scale = detail::local_scale(m);

    Mat work = m;
    Mat k(n, p.field);
    Mat zp = Mat::identity(n, p.field);
    double margin = std::numeric_limits<double>::infinity();
    cplx trailing_minor = 1.0;

    for (int jb = q - 1; jb >= 0; --jb) {
        const int s = p.block_start(jb);
        const int b = p.blocks[static_cast<std::size_t>(jb)];
        Mat t(b, p.field);
        for (int i = 0; i < b; ++i)
            for (int j = 0; j < b; ++j) t.at(i, j) = work.at(s + i, s + j);

        if (jb > 0) {
            trailing_minor *= det(t);
            const int tsize = n - s;
            const double mj = std::abs(trailing_minor) / std::pow(scale, tsize);
            margin = std::min(margin, mj);
            if (!(mj >= kSingularTol))
                throw DecompositionSingular("decompose_oracle: point outside the open cell for pattern " +
                                            p.label());
        }

        // z' block row jb (columns left of the block)
        for (int c = 0; c < s; ++c) {
            cplx rhs[3], sol[3];
            for (int i = 0; i < b; ++i) rhs[i] = work.at(s + i, c);
            detail::cramer_solve(t, rhs, sol, b);
            for (int i = 0; i < b; ++i) zp.at(s + i, c) = sol[i];
        }
        // k column block jb for rows at/above it
        for (int r = 0; r < s + b; ++r)
            for (int j = 0; j < b; ++j) k.at(r, s + j) = work.at(r, s + j);
        // remove this z'-block-row's contribution from the remaining columns
        for (int r = 0; r < s; ++r)
            for (int c = 0; c < s; ++c) {
                cplx acc = 0.0;
                for (int j = 0; j < b; ++j) acc += k.at(r, s + j) * zp.at(s + j, c);
                work.at(r, c) -= acc;
            }
    }

    DecompResult res;
    res.k = k;
    res.k_complete = true;
    res.z_out.pattern = p;
    const auto pos = p.free_positions();
    res.z_out.coords.resize(pos.size());
    for (std::size_t i = 0; i < pos.size(); ++i) res.z_out.coords[i] = zp.at(pos[i].first, pos[i].second);
    res.genericity_margin = margin;
    res.block_char_data.resize(static_cast<std::size_t>(q));
    for (int ib = 0; ib < q; ++ib) {
        const int s = p.block_start(ib);
        const int b = p.blocks[static_cast<std::size_t>(ib)];
        if (b == 1) {
            res.block_char_data[static_cast<std::size_t>(ib)] = k.at(s, s);
        } else {
            std::vector<int> idx(static_cast<std::size_t>(b));
            for (int i = 0; i < b; ++i) idx[static_cast<std::size_t>(i)] = s + i;
            res.block_char_data[static_cast<std::size_t>(ib)] = minor_det(k, idx, idx);
        }
    }
    return res;
}

namespace detail {

inline void require_margin(double margin, const char* where) {
    if (!(margin >= kSingularTol)) throw DecompositionSingular(std::string(where) + ": denominator below genericity threshold");
}

inline DecompResult closed_form_n2(const BlockPattern& p, const UnipotentPoint& z, const Mat& g) {
    const cplx zc = z.coords[0];
    const Mat m = z.embed() * g;
    const double scale = local_scale(m);
    const cplx den = g.at(0, 1) * zc + g.at(1, 1); // a12 z + a22
    DecompResult r;
    r.genericity_margin = std::abs(den) / scale;
    require_margin(r.genericity_margin, "closed_form (1,1)");
    r.k = Mat(2, p.field);
    r.k.at(1, 1) = den;
    r.k.at(0, 0) = det(g) / den;
    r.k.at(0, 1) = g.at(0, 1);
    r.z_out.pattern = p;
    r.z_out.coords = {(g.at(0, 0) * zc + g.at(1, 0)) / den};
    r.block_char_data = {r.k.at(0, 0), den};
    return r;
}

inline DecompResult closed_form_n3_full(const BlockPattern& p, const UnipotentPoint& z, const Mat& g) {
    const cplx z21 = z.coords[0], z31 = z.coords[1], z32 = z.coords[2];
    const Mat m = z.embed() * g;
    const double scale = local_scale(m);
    const cplx zm = z21 * z32 - z31; // |z21 1; z31 z32|

    const cplx d1 = m2(g, 2, 3, 2, 3) + m2(g, 1, 3, 2, 3) * z21 + m2(g, 1, 2, 2, 3) * zm;
    const cplx n1 = m2(g, 2, 3, 1, 3) + m2(g, 1, 3, 1, 3) * z21 + m2(g, 1, 2, 1, 3) * zm;
    const cplx den3 = g.at(2, 2) + g.at(1, 2) * z32 + g.at(0, 2) * z31;

    DecompResult r;
    r.genericity_margin = std::min(std::abs(den3) / scale, std::abs(d1) / (scale * scale));
    require_margin(r.genericity_margin, "closed_form (1,1,1)");

    r.k = Mat(3, p.field);
    r.k.at(0, 0) = cplx(1.0) / d1;
    r.k.at(1, 1) = d1 / den3;
    r.k.at(2, 2) = den3;
    r.z_out.pattern = p;
    r.z_out.coords = {n1 / d1,
                      (g.at(2, 0) + g.at(1, 0) * z32 + g.at(0, 0) * z31) / den3,
                      (g.at(2, 1) + g.at(1, 1) * z32 + g.at(0, 1) * z31) / den3};
    // entries the displayed formulas omit, recovered from z*g = k*z'
    r.k.at(0, 2) = m.at(0, 2);
    r.k.at(1, 2) = m.at(1, 2);
    r.k.at(0, 1) = m.at(0, 1) - r.k.at(0, 2) * r.z_out.coords[2];
    r.block_char_data = {r.k.at(0, 0), r.k.at(1, 1), r.k.at(2, 2)};
    return r;
}

inline DecompResult closed_form_n3_21(const BlockPattern& p, const UnipotentPoint& z, const Mat& g) {
    const cplx z31 = z.coords[0], z32 = z.coords[1];
    const Mat m = z.embed() * g;
    const double scale = local_scale(m);
    const cplx den = g.at(2, 2) + g.at(1, 2) * z32 + g.at(0, 2) * z31;

    DecompResult r;
    r.genericity_margin = std::abs(den) / scale;
    require_margin(r.genericity_margin, "closed_form (2,1)");

    r.k = Mat(3, p.field);
    r.k.at(0, 0) = (m2(g, 1, 3, 1, 3) + m2(g, 1, 2, 1, 3) * z32) / den;
    r.k.at(0, 1) = (m2(g, 1, 3, 2, 3) + m2(g, 1, 2, 2, 3) * z32) / den;
    r.k.at(1, 0) = (m2(g, 2, 3, 1, 3) - m2(g, 1, 2, 1, 3) * z31) / den;
    r.k.at(1, 1) = (m2(g, 2, 3, 2, 3) - m2(g, 1, 2, 2, 3) * z31) / den;
    r.k.at(0, 2) = g.at(0, 2);
    r.k.at(1, 2) = g.at(1, 2);
    r.k.at(2, 2) = den;
    r.z_out.pattern = p;
    r.z_out.coords = {(g.at(2, 0) + g.at(1, 0) * z32 + g.at(0, 0) * z31) / den,
                      (g.at(2, 1) + g.at(1, 1) * z32 + g.at(0, 1) * z31) / den};
    r.block_char_data = {r.k.at(0, 0) * r.k.at(1, 1) - r.k.at(0, 1) * r.k.at(1, 0), den};
    return r;
}

// Shared building blocks for the n=4 patterns: pair weights over rows
// {3,4} of z, triple weights over rows {2,3,4}.
struct N4Weights {
    // pair weights w_ij (i<j in 1..4) for det over z rows {3,4}
    cplx w12, w13, w14, w23, w24, w34;
    // triple weights for det over z rows {2,3,4}
    cplx t123, t124, t134, t234;
};

inline N4Weights n4_weights(cplx z21, cplx z31, cplx z32, cplx z41, cplx z42, cplx z43) {
    N4Weights w;
    w.w12 = z31 * z42 - z32 * z41;
    w.w13 = z31 * z43 - z41;
    w.w14 = z31;
    w.w23 = z32 * z43 - z42;
    w.w24 = z32;
    w.w34 = 1.0;
    w.t123 = z21 * (z32 * z43 - z42) - (z31 * z43 - z41);
    w.t124 = z21 * z32 - z31;
    w.t134 = z21;
    w.t234 = 1.0;
    return w;
}

inline cplx pair_sum(const Mat& g, const N4Weights& w, int q1, int q2) {
    return w.w12 * m2(g, 1, 2, q1, q2) + w.w13 * m2(g, 1, 3, q1, q2) + w.w14 * m2(g, 1, 4, q1, q2) +
           w.w23 * m2(g, 2, 3, q1, q2) + w.w24 * m2(g, 2, 4, q1, q2) + w.w34 * m2(g, 3, 4, q1, q2);
}

inline cplx triple_sum(const Mat& g, const N4Weights& w, int q1, int q2, int q3) {
    return w.t234 * m3(g, 2, 3, 4, q1, q2, q3) + w.t134 * m3(g, 1, 3, 4, q1, q2, q3) +
           w.t124 * m3(g, 1, 2, 4, q1, q2, q3) + w.t123 * m3(g, 1, 2, 3, q1, q2, q3);
}

inline cplx row4_sum(const Mat& g, cplx z41, cplx z42, cplx z43, int col1) {
    return g.at(0, col1 - 1) * z41 + g.at(1, col1 - 1) * z42 + g.at(2, col1 - 1) * z43 + g.at(3, col1 - 1);
}

inline DecompResult closed_form_n4_full(const BlockPattern& p, const UnipotentPoint& z, const Mat& g) {
    const cplx z21 = z.coords[0], z31 = z.coords[1], z32 = z.coords[2];
    const cplx z41 = z.coords[3], z42 = z.coords[4], z43 = z.coords[5];
    const Mat m = z.embed() * g;
    const double scale = local_scale(m);
    const N4Weights w = n4_weights(z21, z31, z32, z41, z42, z43);

    const cplx m4 = row4_sum(g, z41, z42, z43, 4);
    const cplx m3v = pair_sum(g, w, 3, 4);
    const cplx m2v = triple_sum(g, w, 2, 3, 4);

    DecompResult r;
    r.genericity_margin = std::min({std::abs(m4) / scale, std::abs(m3v) / std::pow(scale, 2),
                                    std::abs(m2v) / std::pow(scale, 3)});
    require_margin(r.genericity_margin, "closed_form (1,1,1,1)");

    r.k = Mat(4, p.field);
    r.k.at(0, 0) = cplx(1.0) / m2v;
    r.k.at(1, 1) = m2v / m3v;
    r.k.at(2, 2) = m3v / m4;
    r.k.at(3, 3) = m4;
    r.z_out.pattern = p;
    r.z_out.coords = {triple_sum(g, w, 1, 3, 4) / m2v,
                      pair_sum(g, w, 1, 4) / m3v,
                      pair_sum(g, w, 2, 4) / m3v,
                      row4_sum(g, z41, z42, z43, 1) / m4,
                      row4_sum(g, z41, z42, z43, 2) / m4,
                      row4_sum(g, z41, z42, z43, 3) / m4};
    // back-substituted off-diagonal k entries
    const cplx zp32 = r.z_out.coords[2];
    const cplx zp42 = r.z_out.coords[4], zp43 = r.z_out.coords[5];
    r.k.at(0, 3) = m.at(0, 3);
    r.k.at(1, 3) = m.at(1, 3);
    r.k.at(2, 3) = m.at(2, 3);
    r.k.at(0, 2) = m.at(0, 2) - r.k.at(0, 3) * zp43;
    r.k.at(1, 2) = m.at(1, 2) - r.k.at(1, 3) * zp43;
    r.k.at(0, 1) = m.at(0, 1) - r.k.at(0, 2) * zp32 - r.k.at(0, 3) * zp42;
    r.block_char_data = {r.k.at(0, 0), r.k.at(1, 1), r.k.at(2, 2), r.k.at(3, 3)};
    return r;
}

inline DecompResult closed_form_n4_31(const BlockPattern& p, const UnipotentPoint& z, const Mat& g) {
    const cplx z41 = z.coords[0], z42 = z.coords[1], z43 = z.coords[2];
    const Mat m = z.embed() * g;
    const double scale = local_scale(m);
    const cplx m4 = row4_sum(g, z41, z42, z43, 4);

    DecompResult r;
    r.genericity_margin = std::abs(m4) / scale;
    require_margin(r.genericity_margin, "closed_form (3,1)");

    r.z_out.pattern = p;
    r.z_out.coords = {row4_sum(g, z41, z42, z43, 1) / m4, row4_sum(g, z41, z42, z43, 2) / m4,
                      row4_sum(g, z41, z42, z43, 3) / m4};
    r.k = Mat(4, p.field);
    r.k.at(3, 3) = m4;
    for (int i = 0; i < 3; ++i) {
        r.k.at(i, 3) = g.at(i, 3);
        for (int j = 0; j < 3; ++j) r.k.at(i, j) = g.at(i, j) - g.at(i, 3) * r.z_out.coords[static_cast<std::size_t>(j)];
    }
    std::vector<int> top{0, 1, 2};
    r.block_char_data = {minor_det(r.k, top, top), m4};
    return r;
}

inline DecompResult closed_form_n4_211(const BlockPattern& p, const UnipotentPoint& z, const Mat& g) {
    const cplx z31 = z.coords[0], z32 = z.coords[1];
    const cplx z41 = z.coords[2], z42 = z.coords[3], z43 = z.coords[4];
    const Mat m = z.embed() * g;
    const double scale = local_scale(m);
    const N4Weights w = n4_weights(0.0, z31, z32, z41, z42, z43);

    const cplx m4 = row4_sum(g, z41, z42, z43, 4);
    const cplx m3v = pair_sum(g, w, 3, 4);

    DecompResult r;
    r.genericity_margin = std::min(std::abs(m4) / scale, std::abs(m3v) / std::pow(scale, 2));
    require_margin(r.genericity_margin, "closed_form (2,1,1)");

    r.z_out.pattern = p;
    r.z_out.coords = {pair_sum(g, w, 1, 4) / m3v, pair_sum(g, w, 2, 4) / m3v,
                      row4_sum(g, z41, z42, z43, 1) / m4, row4_sum(g, z41, z42, z43, 2) / m4,
                      row4_sum(g, z41, z42, z43, 3) / m4};
    const cplx zp31 = r.z_out.coords[0], zp32 = r.z_out.coords[1];
    const cplx zp41 = r.z_out.coords[2], zp42 = r.z_out.coords[3], zp43 = r.z_out.coords[4];

    r.k = Mat(4, p.field);
    r.k.at(2, 2) = m3v / m4;
    r.k.at(3, 3) = m4;
    r.k.at(2, 3) = m.at(2, 3);
    for (int i = 0; i < 2; ++i) {
        r.k.at(i, 3) = g.at(i, 3);
        r.k.at(i, 2) = g.at(i, 2) - g.at(i, 3) * zp43;
        r.k.at(i, 0) = g.at(i, 0) - r.k.at(i, 2) * zp31 - r.k.at(i, 3) * zp41;
        r.k.at(i, 1) = g.at(i, 1) - r.k.at(i, 2) * zp32 - r.k.at(i, 3) * zp42;
    }
    r.block_char_data = {r.k.at(0, 0) * r.k.at(1, 1) - r.k.at(0, 1) * r.k.at(1, 0), r.k.at(2, 2),
                         r.k.at(3, 3)};
    return r;
}

inline DecompResult closed_form_n4_22(const BlockPattern& p, const UnipotentPoint& z, const Mat& g) {
    const cplx z31 = z.coords[0], z32 = z.coords[1];
    const cplx z41 = z.coords[2], z42 = z.coords[3];
    const Mat m = z.embed() * g;
    const double scale = local_scale(m);
    const N4Weights w = n4_weights(0.0, z31, z32, z41, z42, 0.0);

    const cplx delta = pair_sum(g, w, 3, 4); // k33*k44 - k34*k43

    DecompResult r;
    r.genericity_margin = std::abs(delta) / std::pow(scale, 2);
    require_margin(r.genericity_margin, "closed_form (2,2)");

    r.z_out.pattern = p;
    r.z_out.coords = {pair_sum(g, w, 1, 4) / delta, pair_sum(g, w, 2, 4) / delta,
                      pair_sum(g, w, 3, 1) / delta, pair_sum(g, w, 3, 2) / delta};
    const cplx zp31 = r.z_out.coords[0], zp32 = r.z_out.coords[1];
    const cplx zp41 = r.z_out.coords[2], zp42 = r.z_out.coords[3];

    // Individual entries of the trailing 2x2 block are not pinned by the
    // displayed data; only their determinant is produced (k_complete=false).
    r.k = Mat(4, p.field);
    r.k_complete = false;
    for (int i = 0; i < 2; ++i) {
        r.k.at(i, 2) = g.at(i, 2);
        r.k.at(i, 3) = g.at(i, 3);
        r.k.at(i, 0) = g.at(i, 0) - g.at(i, 2) * zp31 - g.at(i, 3) * zp41;
        r.k.at(i, 1) = g.at(i, 1) - g.at(i, 2) * zp32 - g.at(i, 3) * zp42;
    }
    r.block_char_data = {r.k.at(0, 0) * r.k.at(1, 1) - r.k.at(0, 1) * r.k.at(1, 0), delta};
    return r;
}

} // namespace detail

// The rational minor formulas for each supported pattern; entries the
// displays omit are recovered by one back-substitution from z*g = k*z'.
inline DecompResult decompose_closed_form(const BlockPattern& p, const UnipotentPoint& z, const Mat& g) {
    if (!p.supported()) throw InvalidIndex("decompose_closed_form: unsupported pattern " + p.label());
    const int n = p.n();
    if (n == 2) return detail::closed_form_n2(p, z, g);
    if (n == 3) return p.is_full() ? detail::closed_form_n3_full(p, z, g) : detail::closed_form_n3_21(p, z, g);
    if (p.is_full()) return detail::closed_form_n4_full(p, z, g);
    if (p.blocks == std::vector<int>{3, 1}) return detail::closed_form_n4_31(p, z, g);
    if (p.blocks == std::vector<int>{2, 1, 1}) return detail::closed_form_n4_211(p, z, g);
    return detail::closed_form_n4_22(p, z, g);
}

inline UnipotentPoint birational_action(const BlockPattern& p, const UnipotentPoint& z, const Mat& g) {
    return decompose_closed_form(p, z, g).z_out;
}

// The 2x2 real Moebius frame of the extra principal series on Z1: the
// (2,1)-pattern k-block at base point (x31, x32), plus k33 and the
// transformed base point.
struct GGFrame {
    double alpha1, beta1, gamma1, delta1;
    double k33;
    double x31_out, x32_out;

    double det() const { return alpha1 * delta1 - beta1 * gamma1; }
    cplx moebius(cplx z21) const { return (alpha1 * z21 + gamma1) / (beta1 * z21 + delta1); }
};

inline GGFrame gg_frame(double x31, double x32, const Mat& g) {
    BlockPattern p{{2, 1}, Field::Real};
    UnipotentPoint x = UnipotentPoint::zero(p);
    x.coords = {cplx(x31), cplx(x32)};
    DecompResult d = detail::closed_form_n3_21(p, x, g);
    GGFrame f;
    f.alpha1 = d.k.at(0, 0).real();
    f.beta1 = d.k.at(0, 1).real();
    f.gamma1 = d.k.at(1, 0).real();
    f.delta1 = d.k.at(1, 1).real();
    f.k33 = d.k.at(2, 2).real();
    f.x31_out = d.z_out.coords[0].real();
    f.x32_out = d.z_out.coords[1].real();
    return f;
}

} // namespace slrep
