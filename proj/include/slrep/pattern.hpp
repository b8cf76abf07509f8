#pragma once

#include <string>
#include <vector>

#include "slrep/matrix.hpp"
#include "slrep/rng.hpp"
#include "slrep/random_elements.hpp"

namespace slrep {

// A composition (n1,...,nk) of n plus a field tag. Selects the block
// upper-triangular group K and its lower-unipotent complement Z.
struct BlockPattern {
    std::vector<int> blocks;
    Field field = Field::Complex;

    int n() const {
        int s = 0;
        for (int b : blocks) s += b;
        return s;
    }
    int num_blocks() const { return static_cast<int>(blocks.size()); }
    int block_start(int ib) const {
        int s = 0;
        for (int i = 0; i < ib; ++i) s += blocks[static_cast<std::size_t>(i)];
        return s;
    }
    int block_of_row(int r) const {
        int s = 0;
        for (int ib = 0; ib < num_blocks(); ++ib) {
            s += blocks[static_cast<std::size_t>(ib)];
            if (r < s) return ib;
        }
        return num_blocks() - 1;
    }
    bool is_full() const {
        for (int b : blocks)
            if (b != 1) return false;
        return true;
    }

    bool supported() const {
        const int dim = n();
        if (dim == 2) return blocks == std::vector<int>{1, 1};
        if (dim == 3) return is_full() || blocks == std::vector<int>{2, 1};
        if (dim == 4)
            return is_full() || blocks == std::vector<int>{3, 1} ||
                   blocks == std::vector<int>{2, 1, 1} || blocks == std::vector<int>{2, 2};
        return false;
    }

    // Free coordinates of Z: positions strictly below the block diagonal,
    // row-major. For the full pattern at n=3 this is (2,1),(3,1),(3,2) in
    // 1-based terms, i.e. z21, z31, z32.
    std::vector<std::pair<int, int>> free_positions() const {
        std::vector<std::pair<int, int>> pos;
        const int dim = n();
        for (int r = 0; r < dim; ++r)
            for (int c = 0; c < r; ++c)
                if (block_of_row(r) > block_of_row(c)) pos.emplace_back(r, c);
        return pos;
    }

    std::string label() const {
        std::string s = "(";
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(blocks[i]);
        }
        s += ")";
        return s;
    }

    friend bool operator==(const BlockPattern& a, const BlockPattern& b) {
        return a.blocks == b.blocks && a.field == b.field;
    }
};

// Point of the unipotent cell Z: coordinates in the pattern's free_positions
// order.
struct UnipotentPoint {
    BlockPattern pattern;
    std::vector<cplx> coords;

    static UnipotentPoint zero(const BlockPattern& p) {
        UnipotentPoint z;
        z.pattern = p;
        z.coords.assign(p.free_positions().size(), cplx(0.0));
        return z;
    }

    Mat embed() const {
        Mat m = Mat::identity(pattern.n(), pattern.field);
        const auto pos = pattern.free_positions();
        for (std::size_t i = 0; i < pos.size(); ++i) m.at(pos[i].first, pos[i].second) = coords[i];
        return m;
    }

    cplx coord(int r1, int c1) const { // 1-based position lookup
        const auto pos = pattern.free_positions();
        for (std::size_t i = 0; i < pos.size(); ++i)
            if (pos[i].first == r1 - 1 && pos[i].second == c1 - 1) return coords[i];
        throw InvalidIndex("UnipotentPoint: not a free position");
    }
};

inline UnipotentPoint random_unipotent(const BlockPattern& p, Rng& rng) {
    UnipotentPoint z = UnipotentPoint::zero(p);
    for (auto& c : z.coords) c = random_scalar(rng, p.field);
    return z;
}

// Element of the parabolic K-group: entries below the block diagonal vanish,
// product of block determinants is 1.
struct ParabolicElement {
    BlockPattern pattern;
    Mat entries;

    cplx block_det(int ib) const {
        const int s = pattern.block_start(ib);
        const int b = pattern.blocks[static_cast<std::size_t>(ib)];
        std::vector<int> idx(static_cast<std::size_t>(b));
        for (int i = 0; i < b; ++i) idx[static_cast<std::size_t>(i)] = s + i;
        return minor_det(entries, idx, idx);
    }
};

// Random parabolic element: Gaussian entries in and above the block diagonal,
// first block rescaled so the block determinants multiply to 1.
inline ParabolicElement random_parabolic(const BlockPattern& p, Rng& rng, int max_tries = 64) {
    const int n = p.n();
    for (int t = 0; t < max_tries; ++t) {
        Mat m(n, p.field);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                if (p.block_of_row(r) <= p.block_of_row(c)) m.at(r, c) = random_scalar(rng, p.field);
        ParabolicElement k{p, m};
        cplx prod = 1.0;
        for (int ib = 0; ib < p.num_blocks(); ++ib) prod *= k.block_det(ib);
        if (std::abs(prod) < 1e-8) continue;
        const int b0 = p.blocks[0];
        cplx root;
        if (p.field == Field::Real) {
            double pr = prod.real();
            if (b0 % 2 == 0 && pr < 0.0) {
                // flip one row of the first block to flip its determinant sign
                for (int c = 0; c < n; ++c) k.entries.at(0, c) = -k.entries.at(0, c);
                pr = -pr;
            }
            root = std::copysign(std::pow(std::abs(pr), 1.0 / b0), pr);
        } else {
            root = std::exp(std::log(prod) / static_cast<double>(b0));
        }
        for (int r = 0; r < b0; ++r)
            for (int c = 0; c < n; ++c) k.entries.at(r, c) /= root;
        return k;
    }
    throw RejectionExhausted("random_parabolic: degenerate draws exhausted retries");
}

// Result of z*g = k*(z g-bar). block_char_data holds, per diagonal block, the
// datum characters consume: k_ii for 1x1 blocks, the block determinant for
// larger blocks. For pattern (2,2) the closed-form path produces only that
// determinant (k_complete=false), which is all any series on K_{2,2} uses.
struct DecompResult {
    Mat k;
    bool k_complete = true;
    UnipotentPoint z_out;
    double genericity_margin = 0.0;
    std::vector<cplx> block_char_data;
};

} // namespace slrep
