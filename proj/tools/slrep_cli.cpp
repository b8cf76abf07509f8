#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "slrep/harness.hpp"

namespace {

using slrep::cplx;
using slrep::json;

cplx parse_entry(const json& e) {
    if (e.is_number()) return cplx(e.get<double>(), 0.0);
    if (e.is_array() && e.size() == 2) return cplx(e[0].get<double>(), e[1].get<double>());
    throw slrep::ConfigError("matrix/point entries must be numbers or [re, im] pairs");
}

json complex_out(const cplx& v) {
    if (v.imag() == 0.0) return json(v.real());
    return json::array({v.real(), v.imag()});
}

json load_json_arg(const std::string& arg) {
    std::ifstream in(arg);
    if (in.good()) return json::parse(in);
    return json::parse(arg); // inline literal
}

int cmd_catalogue() {
    std::cout << slrep::list_catalogue().dump(2) << "\n";
    return 0;
}

int cmd_verify(const std::string& config_path, std::optional<std::uint64_t> seed,
               const std::string& out_path) {
    std::ifstream in(config_path);
    if (!in.good()) throw slrep::ConfigError("cannot read config: " + config_path);
    const json jcfg = json::parse(in);
    slrep::SuiteConfig cfg = slrep::parse_config(jcfg);
    if (seed) cfg.master_seed = *seed;
    const auto reports = slrep::run_suite(cfg);
    json echo = jcfg;
    echo["seed"] = cfg.master_seed;
    const json doc = slrep::reports_document(echo, reports);
    const std::string dest = !out_path.empty() ? out_path : cfg.output_path;
    if (!dest.empty()) {
        std::ofstream out(dest);
        out << doc.dump(2) << "\n";
    }
    for (const auto& r : reports)
        std::cout << status_name(r.status) << "  " << r.suite_name << "  max_error=" << r.measured_max_error
                  << " tol=" << r.tolerance << " trials=" << r.trials_run << " resamples=" << r.resamples
                  << "\n";
    return doc["all_pass"].get<bool>() ? 0 : 1;
}

int cmd_decompose(const std::string& group, const std::string& pattern, const std::string& matrix_arg,
                  const std::string& point_arg) {
    const slrep::BlockPattern p = slrep::parse_pattern(group, pattern);
    const json jm = load_json_arg(matrix_arg);
    slrep::Mat g(p.n(), p.field);
    if (!jm.is_array() || static_cast<int>(jm.size()) != p.n())
        throw slrep::ConfigError("matrix must be an n x n array of rows");
    for (int r = 0; r < p.n(); ++r)
        for (int c = 0; c < p.n(); ++c) g.at(r, c) = parse_entry(jm.at(r).at(c));
    const double dscale = std::pow(std::max(1.0, g.max_abs()), p.n());
    if (std::abs(det(g) - cplx(1.0)) > 1e-8 * dscale)
        throw slrep::ConfigError("matrix determinant is not 1");

    const json jp = load_json_arg(point_arg);
    slrep::UnipotentPoint z = slrep::UnipotentPoint::zero(p);
    if (!jp.is_array() || jp.size() != z.coords.size())
        throw slrep::ConfigError("point must list the cell coordinates in row-major order (" +
                                 std::to_string(z.coords.size()) + " values)");
    for (std::size_t i = 0; i < z.coords.size(); ++i) z.coords[i] = parse_entry(jp.at(i));

    const slrep::DecompResult d = slrep::decompose_closed_form(p, z, g);
    json out;
    out["pattern"] = p.label();
    out["genericity_margin"] = d.genericity_margin;
    out["k_complete"] = d.k_complete;
    json kj = json::array();
    for (int r = 0; r < p.n(); ++r) {
        json row = json::array();
        for (int c = 0; c < p.n(); ++c) row.push_back(complex_out(d.k.at(r, c)));
        kj.push_back(row);
    }
    out["k"] = kj;
    json zj = json::array();
    for (const auto& c : d.z_out.coords) zj.push_back(complex_out(c));
    out["z_out"] = zj;
    json bd = json::array();
    for (const auto& c : d.block_char_data) bd.push_back(complex_out(c));
    out["block_data"] = bd;
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_orbit(const std::string& params, bool real_case) {
    std::vector<double> v;
    std::size_t pos = 0;
    while (pos < params.size()) {
        std::size_t next = params.find(',', pos);
        if (next == std::string::npos) next = params.size();
        v.push_back(std::stod(params.substr(pos, next - pos)));
        pos = next + 1;
    }
    if (v.size() != 4) throw slrep::ConfigError("orbit expects --params m2,m3,rho2,rho3");
    const auto orbit = slrep::weyl_orbit_sl3({v[0], v[1], v[2], v[3]}, real_case);
    json out = json::array();
    for (const auto& o : orbit) out.push_back(json::array({o.m2, o.m3, o.rho2, o.rho3}));
    std::cout << out.dump(2) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical models of the induced series of low-rank special linear groups"};
    app.require_subcommand(1);

    auto* catalogue = app.add_subcommand("catalogue", "list the 21 catalogued series");

    auto* verify = app.add_subcommand("verify", "run verification suites from a JSON config");
    std::string config_path, out_path;
    std::uint64_t seed_val = 0;
    bool seed_set = false;
    verify->add_option("--config", config_path, "config file")->required();
    auto* seed_opt = verify->add_option("--seed", seed_val, "master seed override");
    verify->add_option("--out", out_path, "report output path");

    auto* decompose = app.add_subcommand("decompose", "factor z*g = k*(z g-bar) for a pattern");
    std::string group, pattern = "", matrix_arg, point_arg;
    decompose->add_option("--group", group, "sl2r|sl2c|sl3r|sl3c|sl4c")->required();
    decompose->add_option("--pattern", pattern, "composition, e.g. 2,1")->required();
    decompose->add_option("--matrix", matrix_arg, "JSON rows, inline or a file path")->required();
    decompose->add_option("--point", point_arg, "JSON list of cell coordinates")->required();

    auto* orbit = app.add_subcommand("orbit", "parameter-equivalence orbit of the rank-2 principal series");
    std::string orbit_params;
    bool orbit_real = false;
    orbit->add_option("--params", orbit_params, "m2,m3,rho2,rho3")->required();
    orbit->add_flag("--real", orbit_real, "reduce integer parts mod 2 (real group)");

    CLI11_PARSE(app, argc, argv);
    seed_set = seed_opt->count() > 0;

    try {
        if (app.got_subcommand(catalogue)) return cmd_catalogue();
        if (app.got_subcommand(verify))
            return cmd_verify(config_path, seed_set ? std::optional<std::uint64_t>(seed_val) : std::nullopt,
                              out_path);
        if (app.got_subcommand(decompose)) return cmd_decompose(group, pattern, matrix_arg, point_arg);
        if (app.got_subcommand(orbit)) return cmd_orbit(orbit_params, orbit_real);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
