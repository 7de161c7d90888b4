#include "mfspin/checks.hpp"
#include "mfspin/classical.hpp"
#include "mfspin/equilibrium.hpp"
#include "mfspin/errors.hpp"
#include "mfspin/sweep.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>

namespace {

int cmd_run(const std::string& config_path, const std::string& preset_name,
            const std::string& output_override) {
    mfspin::sweep::RunConfig cfg;
    if (!preset_name.empty()) {
        cfg = mfspin::sweep::preset(preset_name);
    } else {
        std::ifstream in(config_path);
        if (!in) throw mfspin::ValidationError("cannot open config file '" + config_path + "'");
        nlohmann::json doc;
        try {
            in >> doc;
        } catch (const nlohmann::json::exception& err) {
            throw mfspin::ValidationError(std::string("config parse error: ") + err.what());
        }
        cfg = mfspin::sweep::parse_run_config(doc);
    }
    if (!output_override.empty()) cfg.output = output_override;
    return mfspin::sweep::run_and_write(cfg, mfspin::sweep::resolve_threads());
}

int cmd_entropy(const std::string& topology, double alpha, double omega0, double gamma,
                double t, double tol, int n_start, int n_cap) {
    mfspin::ModelConfig cfg;
    if (topology == "three_bath")
        cfg.topology = mfspin::Topology::ThreeBath;
    else if (topology == "single_bath")
        cfg.topology = mfspin::Topology::SingleBath;
    else
        throw mfspin::ValidationError("entropy: unknown topology '" + topology + "'");
    cfg.bath.alpha = alpha;
    cfg.bath.omega0 = omega0;
    cfg.bath.gamma = gamma;

    mfspin::FockPolicy policy = mfspin::FockPolicy::defaults(cfg.topology);
    if (tol > 0.0) policy.tol = tol;
    if (n_start > 0) policy.n_start = n_start;
    if (n_cap > 0) policy.n_cap = n_cap;
    cfg.n_max = policy.n_start;

    auto [state, report] = mfspin::converge_fock(cfg, t, policy);
    const mfspin::SpinExpectations e = mfspin::spin_expectations(state);
    nlohmann::json doc;
    // the entanglement reading of the entropy holds at global T = 0 only
    const char* key = t == 0.0 ? "entropy_over_ln2" : "vn_entropy_over_ln2";
    doc[key] = e.entropy / std::log(2.0);
    doc["s_mag"] = e.magnitude;
    doc["sz"] = e.sz;
    doc["t"] = t;
    doc["topology"] = topology;
    doc["n_max_used"] = report.n_max_used;
    doc["converged"] = report.converged;
    std::cout << doc.dump() << std::endl;
    return 0;
}

int cmd_check(const std::string& suite, double pv_delta, std::uint64_t seed) {
    std::vector<mfspin::checks::CheckResult> results;
    if (suite == "invariants") {
        results = mfspin::checks::invariant_suite(mfspin::sweep::resolve_threads(), seed);
    } else if (suite == "oracles") {
        mfspin::PvQuadratureSettings pv;
        if (pv_delta > 0.0) pv.pole_halfwidth = pv_delta;
        results = mfspin::checks::oracle_suite(pv, seed);
    } else {
        throw mfspin::ValidationError("check: suite must be 'invariants' or 'oracles'");
    }
    std::cout << mfspin::checks::format_table(results);
    const bool ok = mfspin::checks::all_pass(results);
    std::cout << (ok ? "all checks passed" : "CHECK FAILURES PRESENT") << std::endl;
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"mfspin: equilibrium states of a spin coupled to one or three bosonic baths"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "execute a sweep from a config file or preset");
    std::string config_path, preset_name, output_override;
    run->add_option("--config", config_path, "JSON run configuration");
    run->add_option("--preset", preset_name, "one of fig2a, fig2b, fig3, fig4");
    run->add_option("--output", output_override, "override the output path prefix");

    auto* entropy = app.add_subcommand("entropy", "single-point entropy of the mean-force state");
    std::string topology = "three_bath";
    double alpha = 10.0, omega0 = 2.0, gamma = 0.6, t = 0.0, tol = 0.0;
    int n_start = 0, n_cap = 0;
    entropy->add_option("--topology", topology, "three_bath or single_bath");
    entropy->add_option("--alpha", alpha, "coupling amplitude in omega_L units");
    entropy->add_option("--omega0", omega0, "Lorentzian peak frequency");
    entropy->add_option("--gamma", gamma, "Lorentzian peak width (recorded only)");
    entropy->add_option("--t", t, "temperature k_B T / (hbar omega_L)");
    entropy->add_option("--tol", tol, "Fock convergence tolerance");
    entropy->add_option("--n-start", n_start, "initial Fock levels per mode");
    entropy->add_option("--n-cap", n_cap, "Fock level cap");

    auto* check = app.add_subcommand("check", "run a property suite");
    std::string suite = "invariants";
    double pv_delta = 0.0;
    std::uint64_t seed = 20240811;
    check->add_option("--suite", suite, "invariants or oracles");
    check->add_option("--pv-delta", pv_delta, "override the PV excision half-width");
    check->add_option("--seed", seed, "randomized-check seed");

    try {
        app.parse(argc, argv);
        if (run->parsed()) {
            if (config_path.empty() == preset_name.empty())
                throw mfspin::ValidationError("run: give exactly one of --config or --preset");
            return cmd_run(config_path, preset_name, output_override);
        }
        if (entropy->parsed())
            return cmd_entropy(topology, alpha, omega0, gamma, t, tol, n_start, n_cap);
        if (check->parsed()) return cmd_check(suite, pv_delta, seed);
        return 2;
    } catch (const CLI::ParseError& err) {
        std::cerr << err.what() << std::endl;
        return 2;
    } catch (const mfspin::ValidationError& err) {
        std::cerr << "validation error: " << err.what() << std::endl;
        return 2;
    } catch (const mfspin::SizingError& err) {
        std::cerr << "sizing error: " << err.what() << std::endl;
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << std::endl;
        return 3;
    }
}
