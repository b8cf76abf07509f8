#pragma once

#include <string>
#include <vector>

#include "slrep/pattern.hpp"

namespace slrep {

// Coordinate chart on a parabolic K-group. Free coordinates are the in- and
// above-block-diagonal entries minus one det-eliminated entry: k11 for the
// full patterns (matching the displayed measures, which omit dk11), the last
// diagonal entry for patterns with a trailing 1-block. density exponents act
// on the block data (diagonal entries / block determinants) in absolute value.
struct CoordinateChart {
    std::string name;
    BlockPattern pattern;
    std::vector<std::pair<int, int>> free_pos;
    std::pair<int, int> eliminated{0, 0};
    std::vector<std::pair<int, double>> left_exps;
    std::vector<std::pair<int, double>> right_exps;

    bool complex_chart() const { return pattern.field == Field::Complex; }
    int real_dim() const { return static_cast<int>(free_pos.size()) * (complex_chart() ? 2 : 1); }

    // chart point (real vector; complex charts interleave re/im) -> matrix
    Mat to_matrix(const std::vector<double>& x) const {
        const int n = pattern.n();
        Mat k(n, pattern.field);
        std::size_t ix = 0;
        for (const auto& [r, c] : free_pos) {
            if (complex_chart()) {
                k.at(r, c) = cplx(x[ix], x[ix + 1]);
                ix += 2;
            } else {
                k.at(r, c) = cplx(x[ix], 0.0);
                ix += 1;
            }
        }
        // reconstruct the eliminated coordinate from the determinant constraint
        cplx other = 1.0;
        ParabolicElement pe{pattern, k};
        for (int ib = 0; ib < pattern.num_blocks(); ++ib) {
            const int s = pattern.block_start(ib);
            const int b = pattern.blocks[static_cast<std::size_t>(ib)];
            const bool holds_elim = eliminated.first >= s && eliminated.first < s + b;
            if (holds_elim && b != 1)
                throw ConfigError("chart: eliminated coordinate must sit in a 1x1 block");
            if (!holds_elim) other *= pe.block_det(ib);
        }
        if (std::abs(other) < 1e-12) throw ChartExit("chart: constraint block determinant vanished");
        k.at(eliminated.first, eliminated.second) = cplx(1.0) / other;
        return k;
    }

    std::vector<double> from_matrix(const Mat& k) const {
        std::vector<double> x;
        x.reserve(static_cast<std::size_t>(real_dim()));
        for (const auto& [r, c] : free_pos) {
            x.push_back(k.at(r, c).real());
            if (complex_chart()) x.push_back(k.at(r, c).imag());
        }
        return x;
    }

    std::vector<cplx> block_data(const Mat& km) const {
        ParabolicElement pe{pattern, km};
        std::vector<cplx> data(static_cast<std::size_t>(pattern.num_blocks()));
        for (int ib = 0; ib < pattern.num_blocks(); ++ib) {
            const int s = pattern.block_start(ib);
            data[static_cast<std::size_t>(ib)] =
                pattern.blocks[static_cast<std::size_t>(ib)] == 1 ? km.at(s, s) : pe.block_det(ib);
        }
        return data;
    }

    double density(const std::vector<double>& x, bool left) const {
        const Mat km = to_matrix(x);
        const auto data = block_data(km);
        double out = 1.0;
        for (const auto& [idx, e] : (left ? left_exps : right_exps)) {
            const double base = std::abs(data[static_cast<std::size_t>(idx)]);
            if (base < 1e-300) throw ChartExit("chart: density datum vanished");
            out *= std::pow(base, e);
        }
        return out;
    }
};

inline std::vector<CoordinateChart> shipped_charts() {
    auto full_chart = [](int n, Field f, const std::string& name) {
        CoordinateChart ch;
        ch.name = name;
        ch.pattern = BlockPattern{std::vector<int>(static_cast<std::size_t>(n), 1), f};
        for (int r = 0; r < n; ++r)
            for (int c = r; c < n; ++c)
                if (!(r == 0 && c == 0)) ch.free_pos.emplace_back(r, c);
        ch.eliminated = {0, 0};
        const double cc = (f == Field::Complex) ? 2.0 : 1.0;
        for (int j = 2; j < n; ++j) ch.left_exps.emplace_back(j, cc * (j - 1));
        for (int j = 1; j < n; ++j) ch.right_exps.emplace_back(j, -cc * (j + 1));
        return ch;
    };

    std::vector<CoordinateChart> charts;
    charts.push_back(full_chart(2, Field::Complex, "sl2c-full"));
    charts.push_back(full_chart(2, Field::Real, "sl2r-full"));
    charts.push_back(full_chart(3, Field::Complex, "sl3c-full"));
    charts.push_back(full_chart(3, Field::Real, "sl3r-full"));
    charts.push_back(full_chart(4, Field::Complex, "sl4c-full"));

    auto block_chart = [](std::vector<int> blocks, Field f, const std::string& name,
                          std::vector<std::pair<int, double>> left,
                          std::vector<std::pair<int, double>> right) {
        CoordinateChart ch;
        ch.name = name;
        ch.pattern = BlockPattern{std::move(blocks), f};
        const int n = ch.pattern.n();
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                if (ch.pattern.block_of_row(r) <= ch.pattern.block_of_row(c) && !(r == n - 1 && c == n - 1))
                    ch.free_pos.emplace_back(r, c);
        ch.eliminated = {n - 1, n - 1};
        ch.left_exps = std::move(left);
        ch.right_exps = std::move(right);
        return ch;
    };

    charts.push_back(block_chart({2, 1}, Field::Complex, "sl3c-21", {{1, 6.0}}, {}));
    charts.push_back(block_chart({2, 1}, Field::Real, "sl3r-21", {{1, 3.0}}, {}));
    charts.push_back(block_chart({3, 1}, Field::Complex, "sl4c-31", {{1, 8.0}}, {}));
    charts.push_back(block_chart({2, 1, 1}, Field::Complex, "sl4c-211", {{1, 4.0}, {2, 8.0}},
                                 {{1, -2.0}, {2, -2.0}}));
    return charts;
}

inline const CoordinateChart& chart_by_name(const std::string& name) {
    static const std::vector<CoordinateChart> charts = shipped_charts();
    for (const auto& c : charts)
        if (c.name == name) return c;
    throw ConfigError("unknown chart: " + name);
}

} // namespace slrep
