#include <catch2/catch_amalgamated.hpp>

#include "slrep/matrix.hpp"
#include "slrep/random_elements.hpp"
#include "slrep/rng.hpp"

using namespace slrep;

namespace {

// Independent determinant oracle: LU with partial pivoting.
cplx lu_det(const Mat& m) {
    const int n = m.n;
    std::array<cplx, 16> a = m.a;
    auto at = [&](int r, int c) -> cplx& { return a[static_cast<std::size_t>(r * n + c)]; };
    cplx d = 1.0;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(at(r, col)) > std::abs(at(piv, col))) piv = r;
        if (piv != col) {
            for (int c = 0; c < n; ++c) std::swap(at(col, c), at(piv, c));
            d = -d;
        }
        if (std::abs(at(col, col)) == 0.0) return 0.0;
        d *= at(col, col);
        for (int r = col + 1; r < n; ++r) {
            const cplx f = at(r, col) / at(col, col);
            for (int c = col; c < n; ++c) at(r, c) -= f * at(col, c);
        }
    }
    return d;
}

Mat random_mat(int n, Field f, Rng& rng) {
    Mat m(n, f);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = random_scalar(rng, f);
    return m;
}

} // namespace

TEST_CASE("determinant: identity and rotation") {
    CHECK(det(Mat::identity(3, Field::Complex)) == cplx(1.0));
    Mat rot(2, Field::Real);
    rot.at(0, 0) = 0.0;
    rot.at(0, 1) = 1.0;
    rot.at(1, 0) = -1.0;
    rot.at(1, 1) = 0.0;
    CHECK(det(rot) == cplx(1.0));
}

TEST_CASE("determinant matches LU-with-pivoting oracle on seeded 4x4") {
    Rng rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        for (Field f : {Field::Complex, Field::Real}) {
            for (int n = 2; n <= 4; ++n) {
                Mat m = random_mat(n, f, rng);
                const cplx a = det(m);
                const cplx b = lu_det(m);
                CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)));
            }
        }
    }
}

TEST_CASE("determinant is multiplicative on random pairs") {
    Rng rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        Mat a = random_mat(4, Field::Complex, rng);
        Mat b = random_mat(4, Field::Complex, rng);
        const cplx lhs = det(a * b);
        const cplx rhs = det(a) * det(b);
        CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("minor: identity, diagonal, and cofactor oracle") {
    CHECK(minor_det(Mat::identity(4, Field::Complex), {0, 1}, {0, 1}) == cplx(1.0));

    Mat d = Mat::identity(3, Field::Complex);
    d.at(0, 0) = 2.0;
    d.at(1, 1) = 3.0;
    d.at(2, 2) = 1.0 / 6.0;
    CHECK(std::abs(minor_det(d, {1, 2}, {1, 2}) - cplx(0.5)) < 1e-15);

    Rng rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        Mat g = random_mat(4, Field::Complex, rng);
        // every 2x2 choice against direct extraction
        for (int r1 = 0; r1 < 4; ++r1)
            for (int r2 = r1 + 1; r2 < 4; ++r2)
                for (int c1 = 0; c1 < 4; ++c1)
                    for (int c2 = c1 + 1; c2 < 4; ++c2) {
                        Mat sub(2, Field::Complex);
                        sub.at(0, 0) = g.at(r1, c1);
                        sub.at(0, 1) = g.at(r1, c2);
                        sub.at(1, 0) = g.at(r2, c1);
                        sub.at(1, 1) = g.at(r2, c2);
                        CHECK(minor_det(g, {r1, r2}, {c1, c2}) == det(sub));
                    }
    }
    CHECK_THROWS_AS(minor_det(Mat::identity(3, Field::Real), {0, 4}, {0, 1}), InvalidIndex);
}

TEST_CASE("m2/m3 helpers agree with minor_det") {
    Rng rng(13);
    Mat g = random_mat(4, Field::Complex, rng);
    CHECK(std::abs(m2(g, 1, 3, 2, 4) - minor_det(g, {0, 2}, {1, 3})) == 0.0);
    CHECK(std::abs(m3(g, 1, 2, 4, 1, 3, 4) - minor_det(g, {0, 1, 3}, {0, 2, 3})) < 1e-14);
}

TEST_CASE("random_group_element: determinism, unit det, conditioning") {
    const Mat a = random_group_element(3, Field::Complex, 7, 1e3);
    const Mat b = random_group_element(3, Field::Complex, 7, 1e3);
    for (int i = 0; i < 9; ++i) CHECK(a.a[static_cast<std::size_t>(i)] == b.a[static_cast<std::size_t>(i)]);

    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        for (Field f : {Field::Complex, Field::Real}) {
            for (int n = 2; n <= 4; ++n) {
                const Mat g = random_group_element(n, f, seed, 1e3);
                const double scale = std::pow(g.max_abs(), n);
                CHECK(std::abs(det(g) - cplx(1.0)) <= 1e-10 * std::max(1.0, scale));
                CHECK(condition_estimate(g) <= 1e3);
                if (f == Field::Real)
                    for (int i = 0; i < n * n; ++i) CHECK(g.a[static_cast<std::size_t>(i)].imag() == 0.0);
            }
        }
    }
}

TEST_CASE("random_group_element: impossible conditioning bound exhausts retries") {
    CHECK_THROWS_AS(random_group_element(4, Field::Complex, 3, 1.0 + 1e-9, 16), RejectionExhausted);
}
