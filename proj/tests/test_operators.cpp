#include <catch2/catch_amalgamated.hpp>

#include "slrep/operators.hpp"

using namespace slrep;

namespace {

std::vector<SeriesId> all_series() {
    std::vector<SeriesId> out;
    for (const auto& s : series_table()) out.push_back(s.id);
    return out;
}

} // namespace

TEST_CASE("apply at the identity returns f(z)") {
    Rng rng(1);
    for (SeriesId id : all_series()) {
        const SeriesInfo& info = series_info(id);
        const CharacterParams p = default_params(id);
        const OperatorInstance op = make_operator(id, p, Mat::identity(info.n, info.field));
        const auto fam = shipped_family(id, p, 1, 0.5);
        const auto z = detail::sample_point(id, p.halfplane_sign, rng);
        const cplx lhs = apply(op, fam[0], z);
        const cplx rhs = fam[0].eval(z);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("discrete series at the rotation: s=1, z=i gives -f(i)") {
    CharacterParams p;
    p.s_or_n = 1;
    p.halfplane_sign = +1;
    Mat g(2, Field::Real);
    g.at(0, 0) = 0.0;
    g.at(0, 1) = 1.0;
    g.at(1, 0) = -1.0;
    g.at(1, 1) = 0.0;
    const OperatorInstance op = make_operator(SeriesId::Sl2rDiscrete, p, g);
    // z = i maps to -1/i = i; multiplier z^-2 = -1
    const CellFunction f = [](const std::vector<cplx>& z) { return std::exp(-std::norm(z[0] - cplx(0, 1))); };
    const cplx lhs = apply_value(op, f, {cplx(0.0, 1.0)});
    const cplx rhs = -f({cplx(0.0, 1.0)});
    CHECK(std::abs(lhs - rhs) < 1e-14);
}

TEST_CASE("apply matches the elimination-oracle route") {
    Rng rng(17);
    for (SeriesId id : all_series()) {
        const SeriesInfo& info = series_info(id);
        if (!info.has_character) continue;
        const CharacterParams p = default_params(id);
        int done = 0;
        for (int trial = 0; done < 25 && trial < 100; ++trial) {
            const Mat g = random_group_element(info.n, info.field, 37 + trial, 30.0);
            const OperatorInstance op = make_operator(id, p, g);
            const auto fam = shipped_family(id, p, 1, 0.5);
            const auto zc = detail::sample_point(id, p.halfplane_sign, rng);
            UnipotentPoint z = UnipotentPoint::zero(info.pattern);
            z.coords = zc;
            try {
                const DecompResult oracle = decompose_oracle(info.pattern, z, g);
                if (oracle.genericity_margin < 1e-4) continue;
                const cplx via_oracle = multiplier_from_data(id, p, oracle.block_char_data) *
                                        fam[0].eval(oracle.z_out.coords);
                const cplx via_closed = apply(op, fam[0], zc);
                ++done;
                CHECK(std::abs(via_oracle - via_closed) <=
                      1e-9 * std::max({1.0, std::abs(via_oracle), std::abs(via_closed)}));
            } catch (const DecompositionSingular&) {
                continue;
            }
        }
        CHECK(done == 25);
    }
}

TEST_CASE("analyticity requirement enforced for holomorphic families") {
    const CharacterParams p = default_params(SeriesId::Sl2rDiscrete);
    const Mat g = random_group_element(2, Field::Real, 5, 20.0);
    const OperatorInstance op = make_operator(SeriesId::Sl2rDiscrete, p, g);
    const TestFunction bump = gaussian_bump(Field::Real, {cplx(0.0)}, {1.0});
    CHECK_THROWS_AS(apply(op, bump, {cplx(0.0, 1.0)}), AnalyticityViolation);
}

TEST_CASE("compose_check passes for every series") {
    for (SeriesId id : all_series()) {
        const SeriesInfo& info = series_info(id);
        const CharacterParams p = default_params(id);
        const auto fam = shipped_family(id, p, 1, 0.5);
        const Mat g1 = random_group_element(info.n, info.field, 11, 30.0);
        const Mat g2 = random_group_element(info.n, info.field, 23, 30.0);
        const VerificationReport rep = compose_check(id, p, g1, g2, fam[0], 20, 99);
        INFO(rep.suite_name << " violation " << rep.measured_max_error << " resamples " << rep.resamples);
        CHECK(rep.status == SuiteStatus::Pass);
    }
}

TEST_CASE("compose_check with g2 = identity has zero violation") {
    const SeriesId id = SeriesId::Sl3cPrincipal;
    const CharacterParams p = default_params(id);
    const auto fam = shipped_family(id, p, 1, 0.5);
    const Mat g1 = random_group_element(3, Field::Complex, 3, 30.0);
    const VerificationReport rep =
        compose_check(id, p, g1, Mat::identity(3, Field::Complex), fam[0], 10, 1);
    CHECK(rep.measured_max_error <= 1e-14);
}

TEST_CASE("discrete-series integer-power multiplier: exact cocycle, no phase defect") {
    CharacterParams p;
    p.s_or_n = 2;
    p.halfplane_sign = +1;
    Rng rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        const Mat g1 = random_group_element(2, Field::Real, 100 + trial, 30.0);
        const Mat g2 = random_group_element(2, Field::Real, 200 + trial, 30.0);
        const OperatorInstance t1 = make_operator(SeriesId::Sl2rDiscrete, p, g1);
        const OperatorInstance t2 = make_operator(SeriesId::Sl2rDiscrete, p, g2);
        const OperatorInstance t12 = make_operator(SeriesId::Sl2rDiscrete, p, g1 * g2);
        const std::vector<cplx> z = {cplx(rng.gaussian(), 0.3 + std::abs(rng.gaussian()))};
        try {
            const auto s12 = detail::action_step(t12, z);
            const auto s1 = detail::action_step(t1, z);
            const auto s2 = detail::action_step(t2, s1.point_out);
            const cplx lhs = s12.multiplier;
            const cplx rhs = s1.multiplier * s2.multiplier;
            CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
        } catch (const DecompositionSingular&) {
        }
    }
}

TEST_CASE("unitarity at the identity is exact for tensor-class spaces") {
    for (SeriesId id : {SeriesId::Sl2cPrincipal, SeriesId::Sl2rDiscrete, SeriesId::Sl3rGG}) {
        const SeriesInfo& info = series_info(id);
        const CharacterParams p = default_params(id);
        const auto fam = shipped_family(id, p, 1, 0.5);
        QuadratureConfig q;
        q.points_per_axis = (id == SeriesId::Sl2cPrincipal) ? 40 : 36;
        q.box_radius = (info.space == SpaceKind::PlainL2) ? 4.5 : 2.0;
        const VerificationReport rep =
            unitarity_check(id, p, Mat::identity(info.n, info.field), fam, q);
        INFO(rep.suite_name << " err " << rep.measured_max_error);
        CHECK(rep.measured_max_error <= 1e-12);
    }
}

TEST_CASE("unitarity: near-identity group elements, representative series") {
    struct Cfg {
        SeriesId id;
        int points;
        double radius;
    };
    // one series per tolerance class (full sweep lives in the acceptance suite)
    const std::vector<Cfg> cases = {
        {SeriesId::Sl2cPrincipal, 40, 5.0},   // tensor, plain
        {SeriesId::Sl2rPrincipal, 64, 5.0},   // tensor, real line
        {SeriesId::Sl2rDiscrete, 48, 2.0},    // tensor, Bergman weight
        {SeriesId::Sl3rGG, 32, 2.0},          // tensor, gg weight
    };
    for (const Cfg& c : cases) {
        const SeriesInfo& info = series_info(c.id);
        const CharacterParams p = default_params(c.id);
        const auto fam = shipped_family(c.id, p, 1, 0.4);
        QuadratureConfig q;
        q.points_per_axis = c.points;
        q.box_radius = c.radius;
        const Mat g = random_near_identity(info.n, info.field, 42, 0.12);
        const VerificationReport rep = unitarity_check(c.id, p, g, fam, q);
        INFO(rep.suite_name << " err " << rep.measured_max_error << " tol " << rep.tolerance);
        CHECK(rep.status == SuiteStatus::Pass);
    }
}

TEST_CASE("unitarity: kernel space within 3 standard errors") {
    const SeriesId id = SeriesId::Sl2cComplementary;
    const CharacterParams p = default_params(id);
    const auto fam = shipped_family(id, p, 1, 0.4);
    QuadratureConfig q;
    q.samples = 100000;
    q.seed = 7;
    const Mat g = random_near_identity(2, Field::Complex, 19, 0.12);
    const VerificationReport rep = unitarity_check(id, p, g, fam, q);
    INFO(rep.suite_name << " sigmas " << rep.measured_max_error);
    CHECK(rep.status == SuiteStatus::Pass);
}

TEST_CASE("unitarity: determinant-kernel covariance identities") {
    const SeriesId id = SeriesId::Sl4cStein;
    const CharacterParams p = default_params(id);
    const auto fam = shipped_family(id, p, 1);
    QuadratureConfig q;
    q.seed = 3;
    const Mat g = random_group_element(4, Field::Complex, 8, 20.0);
    const VerificationReport rep = unitarity_check(id, p, g, fam, q);
    for (const auto& d : rep.details) INFO(d);
    CHECK(rep.status == SuiteStatus::Pass);
}

TEST_CASE("half-plane preservation: trivial, scaling, seeded") {
    CharacterParams p = default_params(SeriesId::Sl2rDiscrete);
    SECTION("identity and diagonal scaling") {
        const VerificationReport r1 = halfplane_preservation_check(
            SeriesId::Sl2rDiscrete, p, Mat::identity(2, Field::Real), 100, 5);
        CHECK(r1.status == SuiteStatus::Pass);
        Mat d = Mat::identity(2, Field::Real);
        d.at(0, 0) = 2.0;
        d.at(1, 1) = 0.5;
        const VerificationReport r2 = halfplane_preservation_check(SeriesId::Sl2rDiscrete, p, d, 100, 6);
        CHECK(r2.status == SuiteStatus::Pass);
    }
    SECTION("seeded real g, all three holomorphic families") {
        for (SeriesId id : {SeriesId::Sl2rDiscrete, SeriesId::Sl2rLimit, SeriesId::Sl3rGG}) {
            const CharacterParams pp = default_params(id);
            for (std::uint64_t s = 0; s < 10; ++s) {
                const Mat g = random_group_element(series_info(id).n, Field::Real, 50 + s, 30.0);
                const VerificationReport rep = halfplane_preservation_check(id, pp, g, 200, s);
                INFO(series_info(id).name << " seed " << s);
                CHECK(rep.status == SuiteStatus::Pass);
            }
        }
    }
}

TEST_CASE("gg unitarity at n1 = 3 under a near-identity element") {
    CharacterParams p = default_params(SeriesId::Sl3rGG);
    p.s_or_n = 3;
    const auto fam = shipped_family(SeriesId::Sl3rGG, p, 1, 0.4);
    QuadratureConfig q;
    q.points_per_axis = 32;
    q.box_radius = 2.0;
    const Mat g = random_near_identity(3, Field::Real, 77, 0.05);
    const VerificationReport rep = unitarity_check(SeriesId::Sl3rGG, p, g, fam, q);
    INFO(rep.suite_name << " err " << rep.measured_max_error);
    CHECK(rep.status == SuiteStatus::Pass);
}

TEST_CASE("discrete series on the lower half-plane") {
    CharacterParams p;
    p.s_or_n = 2;
    p.halfplane_sign = -1;
    const auto fam = shipped_family(SeriesId::Sl2rDiscrete, p, 1, 0.4);
    QuadratureConfig q;
    q.points_per_axis = 48;
    q.box_radius = 2.0;
    const Mat g = random_near_identity(2, Field::Real, 31, 0.05);
    const VerificationReport rep = unitarity_check(SeriesId::Sl2rDiscrete, p, g, fam, q);
    CHECK(rep.status == SuiteStatus::Pass);
    const VerificationReport hp = halfplane_preservation_check(SeriesId::Sl2rDiscrete, p,
                                                               random_group_element(2, Field::Real, 9, 30.0),
                                                               500, 3);
    CHECK(hp.status == SuiteStatus::Pass);
}
