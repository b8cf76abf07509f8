#pragma once

#include <chrono>
#include <future>
#include <json.hpp>

#include "slrep/jacobian.hpp"
#include "slrep/operators.hpp"

namespace slrep {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// group/pattern parsing

struct GroupTag {
    int n;
    Field field;
};

inline GroupTag parse_group(const std::string& s) {
    if (s == "sl2r") return {2, Field::Real};
    if (s == "sl2c") return {2, Field::Complex};
    if (s == "sl3r") return {3, Field::Real};
    if (s == "sl3c") return {3, Field::Complex};
    if (s == "sl4c") return {4, Field::Complex};
    throw ConfigError("unknown group: " + s + " (expected sl2r|sl2c|sl3r|sl3c|sl4c)");
}

inline BlockPattern parse_pattern(const std::string& group, const std::string& comp) {
    const GroupTag g = parse_group(group);
    BlockPattern p;
    p.field = g.field;
    std::size_t pos = 0;
    while (pos < comp.size()) {
        std::size_t next = comp.find(',', pos);
        if (next == std::string::npos) next = comp.size();
        p.blocks.push_back(std::stoi(comp.substr(pos, next - pos)));
        pos = next + 1;
    }
    if (p.n() != g.n) throw ConfigError("pattern " + comp + " does not sum to the rank of " + group);
    if (!p.supported()) throw ConfigError("unsupported pattern " + p.label() + " for " + group);
    return p;
}

// ---------------------------------------------------------------------------
// suite implementations not already provided by the modules

inline VerificationReport decomp_equivalence_suite(const BlockPattern& p, int trials, std::uint64_t seed,
                                                   double tolerance = 1e-10) {
    VerificationReport rep;
    rep.suite_name = "decomp-equivalence/" + std::string(field_name(p.field)) + p.label();
    rep.tolerance = tolerance;
    rep.seed = seed;
    Rng rng(Rng::derive(seed, 0xDE));
    int done = 0;
    long budget = 20L * trials;
    while (done < trials && budget-- > 0) {
        const Mat g = random_group_element(p.n(), p.field, rng.next_u64(), 1e3);
        const UnipotentPoint z = random_unipotent(p, rng);
        try {
            const DecompResult a = decompose_oracle(p, z, g);
            const DecompResult b = decompose_closed_form(p, z, g);
            if (a.genericity_margin < 1e-4) {
                ++rep.resamples;
                continue;
            }
            double err = 0.0;
            auto upd = [&](const cplx& x, const cplx& y) {
                err = std::max(err, std::abs(x - y) / std::max({1.0, std::abs(x), std::abs(y)}));
            };
            for (std::size_t i = 0; i < a.z_out.coords.size(); ++i) upd(a.z_out.coords[i], b.z_out.coords[i]);
            for (std::size_t i = 0; i < a.block_char_data.size(); ++i)
                upd(a.block_char_data[i], b.block_char_data[i]);
            const int rows = b.k_complete ? p.n() : p.blocks[0];
            for (int r = 0; r < rows; ++r)
                for (int c = r; c < p.n(); ++c)
                    if (p.block_of_row(r) <= p.block_of_row(c)) upd(a.k.at(r, c), b.k.at(r, c));
            rep.measured_max_error = std::max(rep.measured_max_error, err);
            ++done;
        } catch (const DecompositionSingular&) {
            ++rep.resamples;
        }
    }
    rep.trials_run = done;
    rep.finish();
    return rep;
}

inline VerificationReport cocycle_suite(const BlockPattern& p, int trials, std::uint64_t seed,
                                        double tolerance = 1e-9) {
    VerificationReport rep;
    rep.suite_name = "cocycle/" + std::string(field_name(p.field)) + p.label();
    rep.tolerance = tolerance;
    rep.seed = seed;
    Rng rng(Rng::derive(seed, 0xC0C));
    int done = 0;
    long budget = 20L * trials;
    while (done < trials && budget-- > 0) {
        const Mat g1 = random_group_element(p.n(), p.field, rng.next_u64(), 30.0);
        const Mat g2 = random_group_element(p.n(), p.field, rng.next_u64(), 30.0);
        const UnipotentPoint z = random_unipotent(p, rng);
        try {
            const DecompResult d12 = decompose_closed_form(p, z, g1 * g2);
            const DecompResult d1 = decompose_closed_form(p, z, g1);
            const DecompResult d2 = decompose_closed_form(p, d1.z_out, g2);
            if (std::min({d12.genericity_margin, d1.genericity_margin, d2.genericity_margin}) < 1e-4) {
                ++rep.resamples;
                continue;
            }
            double err = 0.0;
            auto upd = [&](const cplx& x, const cplx& y) {
                err = std::max(err, std::abs(x - y) / std::max({1.0, std::abs(x), std::abs(y)}));
            };
            // action compatibility on coordinates
            for (std::size_t i = 0; i < d12.z_out.coords.size(); ++i)
                upd(d12.z_out.coords[i], d2.z_out.coords[i]);
            // cocycle on the character data (all any series consumes)
            for (std::size_t i = 0; i < d12.block_char_data.size(); ++i)
                upd(d12.block_char_data[i], d1.block_char_data[i] * d2.block_char_data[i]);
            // and on the full k-factor where both sides produce it
            if (d12.k_complete) {
                const Mat prod = d1.k * d2.k;
                for (int r = 0; r < p.n(); ++r)
                    for (int c = r; c < p.n(); ++c) upd(d12.k.at(r, c), prod.at(r, c));
            }
            rep.measured_max_error = std::max(rep.measured_max_error, err);
            ++done;
        } catch (const DecompositionSingular&) {
            ++rep.resamples;
        }
    }
    rep.trials_run = done;
    rep.finish();
    return rep;
}

inline VerificationReport character_algebra_suite(SeriesId id, int trials, std::uint64_t seed,
                                                  double tolerance = 1e-12) {
    const SeriesInfo& info = series_info(id);
    VerificationReport rep;
    rep.suite_name = "character-algebra/" + info.name;
    rep.tolerance = tolerance;
    rep.seed = seed;
    if (!info.has_character) {
        rep.status = SuiteStatus::Skipped;
        rep.details.push_back("series has no character display");
        return rep;
    }
    const CharacterParams p = default_params(id);
    Rng rng(Rng::derive(seed, 0xCA));
    for (int t = 0; t < trials; ++t) {
        const ParabolicElement k1 = random_parabolic(info.pattern, rng);
        const ParabolicElement k2 = random_parabolic(info.pattern, rng);
        const ParabolicElement k12{info.pattern, k1.entries * k2.entries};
        const cplx lhs = character_eval(id, p, k12);
        const cplx rhs = character_eval(id, p, k1) * character_eval(id, p, k2);
        double err = std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)});
        const double blhs = modular_eval(k12);
        const double brhs = modular_eval(k1) * modular_eval(k2);
        err = std::max(err, std::abs(blhs - brhs) / std::max(1.0, brhs));
        if (info.principal_type)
            err = std::max(err, std::abs(std::abs(character_eval(id, p, k1)) - 1.0));
        rep.measured_max_error = std::max(rep.measured_max_error, err);
    }
    rep.trials_run = trials;
    rep.finish();
    return rep;
}

inline VerificationReport weyl_orbit_suite(bool real_case, int trials, std::uint64_t seed) {
    VerificationReport rep;
    rep.suite_name = std::string("weyl-orbit/") + (real_case ? "sl3r" : "sl3c");
    rep.tolerance = 0.0; // structural checks, counted as violations
    rep.seed = seed;
    Rng rng(Rng::derive(seed, 0x3B));
    long violations = 0;
    for (int t = 0; t < trials; ++t) {
        Sl3Params p{double(int(rng.next_u64() % 11) - 5), double(int(rng.next_u64() % 11) - 5),
                    rng.gaussian(), rng.gaussian()};
        if (real_case) {
            p.m2 = double(int(rng.next_u64() % 2));
            p.m3 = double(int(rng.next_u64() % 2));
        }
        const auto orbit = weyl_orbit_sl3(p, real_case);
        if (6 % orbit.size() != 0) ++violations;
        for (const auto& member : orbit)
            for (const auto& img : weyl_images_sl3(member, real_case)) {
                bool found = false;
                for (const auto& o : orbit) found = found || sl3_params_close(o, img, 1e-9);
                if (!found) ++violations;
            }
    }
    // are_equivalent symmetric and reflexive on every series
    Rng rng2(Rng::derive(seed, 0x3C));
    for (const auto& info : series_table()) {
        const CharacterParams a = default_params(info.id);
        CharacterParams b = a;
        if (!b.rho.empty()) b.rho[0] = -b.rho[0];
        if (!are_equivalent(info.id, a, a)) ++violations;
        if (are_equivalent(info.id, a, b) != are_equivalent(info.id, b, a)) ++violations;
        (void)rng2;
    }
    rep.trials_run = trials;
    rep.measured_max_error = static_cast<double>(violations);
    rep.finish();
    return rep;
}

// ---------------------------------------------------------------------------
// suite configuration

struct SuiteRequest {
    std::string suite;
    std::string series;          // series suites
    std::string group, pattern;  // decomposition suites
    std::string chart;           // measure suites
    std::optional<CharacterParams> params;
    std::optional<int> trials;
    std::optional<std::uint64_t> seed;
    std::optional<double> tolerance;
};

struct SuiteConfig {
    std::vector<SuiteRequest> suites;
    std::uint64_t master_seed = 1;
    std::string output_path;
};

inline CharacterParams params_from_json(const json& j) {
    CharacterParams p;
    if (j.contains("m")) p.m = j.at("m").get<std::vector<int>>();
    if (j.contains("rho")) p.rho = j.at("rho").get<std::vector<double>>();
    if (j.contains("sigma")) p.sigma = j.at("sigma").get<std::vector<double>>();
    if (j.contains("s_or_n")) p.s_or_n = j.at("s_or_n").get<int>();
    if (j.contains("sign")) p.halfplane_sign = j.at("sign").get<int>();
    return p;
}

inline json params_to_json(const CharacterParams& p) {
    return json{{"m", p.m}, {"rho", p.rho}, {"sigma", p.sigma}, {"s_or_n", p.s_or_n}, {"sign", p.halfplane_sign}};
}

inline SuiteConfig parse_config(const json& j) {
    SuiteConfig cfg;
    if (j.contains("seed")) cfg.master_seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("output_path")) cfg.output_path = j.at("output_path").get<std::string>();
    if (!j.contains("suites") || !j.at("suites").is_array())
        throw ConfigError("config: expected a 'suites' array");
    for (const auto& js : j.at("suites")) {
        SuiteRequest r;
        r.suite = js.at("suite").get<std::string>();
        if (js.contains("series")) {
            r.series = js.at("series").get<std::string>();
            if (!series_by_name(r.series)) throw ConfigError("unknown series: " + r.series);
        }
        if (js.contains("group")) r.group = js.at("group").get<std::string>();
        if (js.contains("pattern")) r.pattern = js.at("pattern").get<std::string>();
        if (js.contains("chart")) r.chart = js.at("chart").get<std::string>();
        if (js.contains("params")) r.params = params_from_json(js.at("params"));
        if (js.contains("trials")) r.trials = js.at("trials").get<int>();
        if (js.contains("seed")) r.seed = js.at("seed").get<std::uint64_t>();
        if (js.contains("tolerance")) {
            r.tolerance = js.at("tolerance").get<double>();
            if (!(*r.tolerance >= 0.0)) throw ConfigError("tolerance must be nonnegative");
        }
        cfg.suites.push_back(std::move(r));
    }
    return cfg;
}

// quadrature settings per series for the unitarity suite
inline QuadratureConfig unitarity_quadrature(SeriesId id, std::uint64_t seed) {
    QuadratureConfig q;
    q.seed = seed;
    q.samples = 100000;
    const SeriesInfo& info = series_info(id);
    const int real_dim = static_cast<int>(info.pattern.free_positions().size()) *
                         (info.field == Field::Complex ? 2 : 1);
    switch (info.space) {
    case SpaceKind::Bergman:
    case SpaceKind::Hardy:
        q.points_per_axis = 48;
        q.box_radius = 2.0;
        break;
    case SpaceKind::GGWeight:
        q.points_per_axis = 32;
        q.box_radius = 2.0;
        break;
    default:
        q.box_radius = (real_dim <= 3) ? 4.8 : 4.4;
        q.points_per_axis = (real_dim <= 1)   ? 96
                            : (real_dim <= 2) ? 64
                            : (real_dim <= 3) ? 48
                                              : 36;
        break;
    }
    return q;
}

inline VerificationReport run_one_suite(const SuiteRequest& r, std::uint64_t derived_seed) {
    const std::uint64_t seed = r.seed.value_or(derived_seed);
    const auto t0 = std::chrono::steady_clock::now();
    VerificationReport rep;

    auto series = [&]() {
        const auto id = series_by_name(r.series);
        if (!id) throw ConfigError("suite " + r.suite + " needs a valid 'series'");
        return *id;
    };
    auto params_for = [&](SeriesId id) {
        CharacterParams p = r.params.value_or(default_params(id));
        validate_params(id, p);
        return p;
    };

    if (r.suite == "decomp-equivalence") {
        rep = decomp_equivalence_suite(parse_pattern(r.group, r.pattern), r.trials.value_or(1000), seed,
                                       r.tolerance.value_or(1e-10));
    } else if (r.suite == "cocycle") {
        rep = cocycle_suite(parse_pattern(r.group, r.pattern), r.trials.value_or(500), seed,
                            r.tolerance.value_or(1e-9));
    } else if (r.suite == "compose") {
        const SeriesId id = series();
        const CharacterParams p = params_for(id);
        const SeriesInfo& info = series_info(id);
        const auto fam = shipped_family(id, p, 1, 0.5);
        const int pairs = r.trials.value_or(50);
        Rng rng(Rng::derive(seed, 0x60));
        rep.suite_name = "compose/" + info.name;
        rep.tolerance = r.tolerance.value_or(1e-8);
        rep.seed = seed;
        for (int t = 0; t < pairs; ++t) {
            const Mat g1 = random_group_element(info.n, info.field, rng.next_u64(), 30.0);
            const Mat g2 = random_group_element(info.n, info.field, rng.next_u64(), 30.0);
            const VerificationReport one = compose_check(id, p, g1, g2, fam[0], 20, rng.next_u64(),
                                                         rep.tolerance);
            rep.measured_max_error = std::max(rep.measured_max_error, one.measured_max_error);
            rep.trials_run += one.trials_run;
            rep.resamples += one.resamples;
        }
        rep.finish();
    } else if (r.suite == "unitarity") {
        const SeriesId id = series();
        const CharacterParams p = params_for(id);
        const auto fam = shipped_family(id, p, 2, 0.4);
        const int n_g = r.trials.value_or(10);
        const QuadratureConfig q = unitarity_quadrature(id, seed);
        rep = unitarity_suite(id, p, n_g, fam, q, seed);
        if (r.tolerance) {
            rep.tolerance = *r.tolerance;
            rep.finish();
        }
    } else if (r.suite == "haar-invariance") {
        const CoordinateChart& chart = chart_by_name(r.chart);
        const int trials = r.trials.value_or(200);
        const VerificationReport left =
            verify_invariance(chart, Side::Left, trials, seed, r.tolerance.value_or(1e-5));
        const VerificationReport right =
            verify_invariance(chart, Side::Right, trials, Rng::derive(seed, 1), r.tolerance.value_or(1e-5));
        rep = left;
        rep.suite_name = "haar-invariance/" + chart.name;
        rep.measured_max_error = std::max(left.measured_max_error, right.measured_max_error);
        rep.trials_run = left.trials_run + right.trials_run;
        rep.resamples = left.resamples + right.resamples;
        rep.finish();
    } else if (r.suite == "modular-ratio") {
        rep = verify_modular_ratio(chart_by_name(r.chart), r.trials.value_or(200), seed,
                                   r.tolerance.value_or(1e-12));
    } else if (r.suite == "character-algebra") {
        rep = character_algebra_suite(series(), r.trials.value_or(500), seed, r.tolerance.value_or(1e-12));
    } else if (r.suite == "weyl-orbit") {
        const bool real_case = r.group == "sl3r";
        if (!real_case && r.group != "sl3c") throw ConfigError("weyl-orbit: group must be sl3c or sl3r");
        rep = weyl_orbit_suite(real_case, r.trials.value_or(10000), seed);
    } else if (r.suite == "gram-psd") {
        const SeriesId id = series();
        const CharacterParams p = params_for(id);
        const auto fam = shipped_family(id, p, 5);
        QuadratureConfig q;
        q.scheme = QuadratureConfig::Scheme::MonteCarlo;
        q.samples = r.trials.value_or(100000);
        q.seed = seed;
        rep = gram_psd_check(make_space(id, p), fam, q, r.tolerance.value_or(1e-6));
        if (!p.sigma.empty())
            rep.suite_name += "/sigma=" + std::to_string(p.sigma[0]).substr(0, 4);
    } else if (r.suite == "halfplane") {
        const SeriesId id = series();
        const CharacterParams p = params_for(id);
        const SeriesInfo& info = series_info(id);
        const int n_points = r.trials.value_or(10000);
        Rng rng(Rng::derive(seed, 0x99));
        rep.suite_name = "halfplane/" + info.name;
        rep.tolerance = 0.0;
        rep.seed = seed;
        for (int t = 0; t < 10; ++t) {
            const Mat g = random_group_element(info.n, Field::Real, rng.next_u64(), 30.0);
            const VerificationReport one = halfplane_preservation_check(id, p, g, n_points / 10, rng.next_u64());
            rep.measured_max_error = std::max(rep.measured_max_error, one.measured_max_error);
            rep.trials_run += one.trials_run;
            rep.resamples += one.resamples;
        }
        rep.finish();
    } else {
        throw ConfigError("unknown suite kind: " + r.suite);
    }

    rep.seed = seed;
    rep.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

// Suites run concurrently; report order follows the configuration order.
inline std::vector<VerificationReport> run_suite(const SuiteConfig& cfg) {
    std::vector<std::future<VerificationReport>> futures;
    futures.reserve(cfg.suites.size());
    for (std::size_t i = 0; i < cfg.suites.size(); ++i) {
        const SuiteRequest& r = cfg.suites[i];
        const std::uint64_t derived = Rng::derive(cfg.master_seed, i);
        futures.push_back(std::async(std::launch::async, [r, derived]() { return run_one_suite(r, derived); }));
    }
    std::vector<VerificationReport> out;
    out.reserve(futures.size());
    for (auto& f : futures) out.push_back(f.get());
    return out;
}

inline json report_to_json(const VerificationReport& r) {
    return json{{"suite_name", r.suite_name},
                {"status", status_name(r.status)},
                {"measured_max_error", r.measured_max_error},
                {"tolerance", r.tolerance},
                {"trials_run", r.trials_run},
                {"resamples", r.resamples},
                {"seed", r.seed},
                {"details", r.details},
                {"wall_time_s", r.wall_time_s}};
}

inline json reports_document(const json& config_echo, const std::vector<VerificationReport>& reports) {
    json out;
    out["version"] = "1";
    out["config_echo"] = config_echo;
    out["reports"] = json::array();
    for (const auto& r : reports) out["reports"].push_back(report_to_json(r));
    bool all = true;
    for (const auto& r : reports) all = all && r.status != SuiteStatus::Fail;
    out["all_pass"] = all;
    return out;
}

// catalogue dump: 21 entries with id, group, pattern, parameter arity, space
// kind, and a self-describing anchor.
inline json list_catalogue() {
    json out = json::array();
    for (const auto& s : series_table()) {
        std::string group = "sl" + std::to_string(s.n) + (s.field == Field::Real ? "r" : "c");
        out.push_back(json{{"series_id", s.name},
                           {"group", group},
                           {"pattern", s.pattern.label()},
                           {"parameters", s.param_desc},
                           {"space", s.space_desc},
                           {"description", s.description}});
    }
    return out;
}

} // namespace slrep
