#include "mfspin/sweep.hpp"
#include "mfspin/classical.hpp"
#include "mfspin/errors.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

namespace mfspin::sweep {

namespace {

constexpr const char* kCsvHeader =
    "engine,topology,t,sx,sy,sz,s_mag,purity,vn_entropy,n_max_used,converged,alpha,omega0,gamma";

constexpr const char* kVersion = "1.0.0";

double nan_value() {
    return std::numeric_limits<double>::quiet_NaN();
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (v == 0.0) return "0";
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string topology_name(Topology t) {
    return t == Topology::ThreeBath ? "three_bath" : "single_bath";
}

Topology topology_from_name(const std::string& name) {
    if (name == "three_bath") return Topology::ThreeBath;
    if (name == "single_bath") return Topology::SingleBath;
    throw ValidationError("config: unknown topology '" + name + "'");
}

} // namespace

std::string engine_name(Engine e) {
    switch (e) {
        case Engine::Cg: return "cg";
        case Engine::Cmf: return "cmf";
        case Engine::Qg: return "qg";
        case Engine::Qmf: return "qmf";
        case Engine::Weak: return "weak";
    }
    throw ValidationError("engine_name: unknown engine");
}

Engine engine_from_name(const std::string& name) {
    if (name == "cg") return Engine::Cg;
    if (name == "cmf") return Engine::Cmf;
    if (name == "qg") return Engine::Qg;
    if (name == "qmf") return Engine::Qmf;
    if (name == "weak") return Engine::Weak;
    throw ValidationError("config: unknown engine '" + name + "'");
}

void RunConfig::validate() const {
    bath.validate();
    if (temperatures.empty()) throw ValidationError("config: temperature grid empty");
    for (std::size_t i = 0; i < temperatures.size(); ++i) {
        if (std::isnan(temperatures[i]) || temperatures[i] < 0.0)
            throw ValidationError("config: temperatures must be >= 0");
        if (i > 0 && !(temperatures[i] > temperatures[i - 1]))
            throw ValidationError("config: temperature grid must be strictly increasing");
    }
    if (engines.empty()) throw ValidationError("config: engines empty");
    const bool has_weak = std::find(engines.begin(), engines.end(), Engine::Weak) != engines.end();
    const bool has_cmf = std::find(engines.begin(), engines.end(), Engine::Cmf) != engines.end();
    if (topology == Topology::SingleBath && has_weak)
        throw ValidationError("config: the weak engine covers the three-bath model only");
    if (topology == Topology::SingleBath && has_cmf)
        throw ValidationError("config: the cmf engine covers the three-bath model only");
    fock.validate(topology);
    if (has_weak) quadrature.validate(bath, units::omega_larmor);
    if (output.empty()) throw ValidationError("config: output path empty");
}

ModelConfig RunConfig::model(int n_max) const {
    ModelConfig m;
    m.topology = topology;
    m.bath = bath;
    m.n_max = n_max;
    return m;
}

namespace {

std::vector<double> parse_grid(const nlohmann::json& spec) {
    std::vector<double> out;
    if (spec.is_array()) {
        for (const auto& v : spec) {
            if (!v.is_number()) throw ValidationError("config: temperatures must be numbers");
            out.push_back(v.get<double>());
        }
        return out;
    }
    if (!spec.is_object())
        throw ValidationError("config: temperatures must be an array or a grid object");
    for (const char* key : {"start", "stop", "count", "spacing"})
        if (!spec.contains(key))
            throw ValidationError(std::string("config: temperature grid missing '") + key + "'");
    const double start = spec.at("start").get<double>();
    const double stop = spec.at("stop").get<double>();
    const int count = spec.at("count").get<int>();
    const std::string spacing = spec.at("spacing").get<std::string>();
    if (count < 1) throw ValidationError("config: grid count must be >= 1");
    if (count > 1 && !(stop > start))
        throw ValidationError("config: grid stop must exceed start");
    if (spacing == "linear") {
        for (int i = 0; i < count; ++i)
            out.push_back(i + 1 == count ? stop
                                         : start + (stop - start) * (static_cast<double>(i) /
                                                                     (count - 1)));
        if (count == 1) out = {start};
    } else if (spacing == "log") {
        if (!(start > 0.0)) throw ValidationError("config: log grid requires start > 0");
        const double ls = std::log(start), le = std::log(stop);
        for (int i = 0; i < count; ++i) {
            if (i == 0)
                out.push_back(start);
            else if (i + 1 == count)
                out.push_back(stop);
            else
                out.push_back(std::exp(ls + (le - ls) * (static_cast<double>(i) / (count - 1))));
        }
        if (count == 1) out = {start};
    } else {
        throw ValidationError("config: spacing must be 'linear' or 'log'");
    }
    return out;
}

} // namespace

RunConfig parse_run_config(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ValidationError("config: document must be a JSON object");
    RunConfig cfg;
    cfg.topology = topology_from_name(doc.value("topology", std::string("three_bath")));
    cfg.bath.alpha = doc.value("alpha", cfg.bath.alpha);
    cfg.bath.omega0 = doc.value("omega0", cfg.bath.omega0);
    cfg.bath.gamma = doc.value("gamma", cfg.bath.gamma);
    cfg.bath.lambda_cut = doc.value("lambda_cut", cfg.bath.lambda_cut);
    if (!doc.contains("temperatures")) throw ValidationError("config: temperatures missing");
    cfg.temperatures = parse_grid(doc.at("temperatures"));
    if (!doc.contains("engines")) throw ValidationError("config: engines missing");
    std::vector<Engine> engines;
    for (const auto& e : doc.at("engines")) engines.push_back(engine_from_name(e.get<std::string>()));
    std::sort(engines.begin(), engines.end());
    engines.erase(std::unique(engines.begin(), engines.end()), engines.end());
    cfg.engines = engines;
    cfg.fock = FockPolicy::defaults(cfg.topology);
    if (doc.contains("fock")) {
        const auto& f = doc.at("fock");
        cfg.fock.n_start = f.value("n_start", cfg.fock.n_start);
        cfg.fock.n_cap = f.value("n_cap", cfg.fock.n_cap);
        cfg.fock.tol = f.value("tol", cfg.fock.tol);
    }
    if (doc.contains("quadrature")) {
        const auto& q = doc.at("quadrature");
        cfg.quadrature.pole_halfwidth = q.value("pole_halfwidth", cfg.quadrature.pole_halfwidth);
        cfg.quadrature.omega_cut = q.value("omega_cut", cfg.quadrature.omega_cut);
        cfg.quadrature.rel_tol = q.value("rel_tol", cfg.quadrature.rel_tol);
        cfg.quadrature.deriv_step = q.value("deriv_step", cfg.quadrature.deriv_step);
        cfg.quadrature.excision_nodes = q.value("excision_nodes", cfg.quadrature.excision_nodes);
    }
    cfg.output = doc.value("output", cfg.output);
    const std::string fmt = doc.value("format", std::string("csv"));
    if (fmt == "csv")
        cfg.format = OutputFormat::Csv;
    else if (fmt == "json")
        cfg.format = OutputFormat::Json;
    else
        throw ValidationError("config: format must be 'csv' or 'json'");
    cfg.validate();
    return cfg;
}

nlohmann::json run_config_to_json(const RunConfig& cfg) {
    nlohmann::json doc;
    doc["topology"] = topology_name(cfg.topology);
    doc["alpha"] = cfg.bath.alpha;
    doc["omega0"] = cfg.bath.omega0;
    doc["gamma"] = cfg.bath.gamma;
    doc["lambda_cut"] = cfg.bath.lambda_cut;
    doc["temperatures"] = cfg.temperatures;
    nlohmann::json engines = nlohmann::json::array();
    for (Engine e : cfg.engines) engines.push_back(engine_name(e));
    doc["engines"] = engines;
    doc["fock"] = {{"n_start", cfg.fock.n_start},
                   {"n_cap", cfg.fock.n_cap},
                   {"tol", cfg.fock.tol}};
    doc["quadrature"] = {{"pole_halfwidth", cfg.quadrature.pole_halfwidth},
                         {"omega_cut", cfg.quadrature.omega_cut},
                         {"rel_tol", cfg.quadrature.rel_tol},
                         {"deriv_step", cfg.quadrature.deriv_step},
                         {"excision_nodes", cfg.quadrature.excision_nodes}};
    doc["output"] = cfg.output;
    doc["format"] = cfg.format == OutputFormat::Csv ? "csv" : "json";
    return doc;
}

RunConfig preset(const std::string& name) {
    RunConfig cfg;
    cfg.bath.omega0 = 2.0;
    cfg.bath.gamma = 0.6;
    cfg.bath.lambda_cut = 1e10;
    // shared default grid: t in [0, 3], 61 points, linear
    cfg.temperatures.clear();
    for (int i = 0; i < 61; ++i) cfg.temperatures.push_back(i == 60 ? 3.0 : 3.0 * i / 60.0);
    if (name == "fig2a") {
        cfg.topology = Topology::ThreeBath;
        cfg.bath.alpha = 10.0;
        cfg.engines = {Engine::Qg, Engine::Qmf};
    } else if (name == "fig2b") {
        cfg.topology = Topology::SingleBath;
        cfg.bath.alpha = 10.0;
        cfg.engines = {Engine::Qg, Engine::Qmf};
    } else if (name == "fig3") {
        cfg.topology = Topology::ThreeBath;
        cfg.bath.alpha = 10.0;
        cfg.engines = {Engine::Cg, Engine::Cmf, Engine::Qg, Engine::Qmf};
    } else if (name == "fig4") {
        cfg.topology = Topology::ThreeBath;
        cfg.bath.alpha = 0.1;
        cfg.engines = {Engine::Qg, Engine::Qmf, Engine::Weak};
    } else {
        throw ValidationError("unknown preset '" + name + "'");
    }
    cfg.fock = FockPolicy::defaults(cfg.topology);
    cfg.output = name;
    cfg.validate();
    return cfg;
}

std::vector<std::string> preset_names() {
    return {"fig2a", "fig2b", "fig3", "fig4"};
}

int resolve_threads() {
    if (const char* env = std::getenv("MFSPIN_THREADS")) {
        int n = 0;
        const std::string s(env);
        auto res = std::from_chars(s.data(), s.data() + s.size(), n);
        if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || n < 1)
            throw ValidationError("MFSPIN_THREADS must be a positive integer");
        return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {

struct Task {
    Engine engine;
    double t;
};

struct PointResult {
    ResultRow row;
    nlohmann::json meta;
    bool failed = false;
};

ResultRow base_row(const RunConfig& cfg, Engine e, double t) {
    ResultRow row;
    row.engine = engine_name(e);
    row.topology = topology_name(cfg.topology);
    row.t = t;
    row.alpha = cfg.bath.alpha;
    row.omega0 = cfg.bath.omega0;
    row.gamma = cfg.bath.gamma;
    return row;
}

void fill_from_expectations(ResultRow& row, const SpinExpectations& e) {
    row.sx = e.sx;
    row.sy = e.sy;
    row.sz = e.sz;
    row.s_mag = e.magnitude;
    row.purity = e.purity;
    row.vn_entropy = e.entropy;
}

void fill_scalar_sz(ResultRow& row, double sz) {
    row.sx = 0.0;
    row.sy = 0.0;
    row.sz = sz;
    row.s_mag = std::abs(sz);
    row.purity = nan_value();
    row.vn_entropy = nan_value();
}

PointResult compute_point(const RunConfig& cfg, const Task& task) {
    PointResult out;
    out.row = base_row(cfg, task.engine, task.t);
    out.meta["engine"] = out.row.engine;
    out.meta["t"] = task.t;
    try {
        switch (task.engine) {
            case Engine::Qg: {
                fill_from_expectations(out.row, spin_expectations(gibbs_spin_state(task.t)));
                out.row.converged = true;
                break;
            }
            case Engine::Qmf: {
                auto [state, report] = converge_fock(cfg.model(cfg.fock.n_start), task.t, cfg.fock);
                fill_from_expectations(out.row, spin_expectations(state));
                out.row.n_max_used = report.n_max_used;
                out.row.converged = report.converged;
                out.meta["convergence"] = {{"n_max_used", report.n_max_used},
                                           {"converged", report.converged},
                                           {"deltas", report.deltas},
                                           {"step_seconds", report.step_seconds}};
                break;
            }
            case Engine::Cg: {
                fill_scalar_sz(out.row, classical_gibbs_sz(task.t));
                out.row.converged = true;
                break;
            }
            case Engine::Cmf: {
                fill_scalar_sz(out.row, cmf_sz(task.t, cfg.bath));
                out.row.converged = true;
                break;
            }
            case Engine::Weak: {
                if (task.t == 0.0) {
                    out.row.engine = "weak_t0";
                    out.meta["engine"] = out.row.engine;
                    fill_scalar_sz(out.row, sz_weak_t0(cfg.bath, cfg.quadrature));
                } else {
                    fill_scalar_sz(out.row, sz_weak(cfg.bath, task.t, cfg.quadrature));
                }
                out.row.converged = true;
                break;
            }
        }
        out.meta["ok"] = true;
    } catch (const FockConvergenceError& err) {
        out.failed = true;
        out.row.sx = out.row.sy = out.row.sz = nan_value();
        out.row.s_mag = out.row.purity = out.row.vn_entropy = nan_value();
        out.row.converged = false;
        out.row.n_max_used = err.report.n_max_used;
        out.meta["ok"] = false;
        out.meta["error"] = err.what();
        out.meta["convergence"] = {{"n_max_used", err.report.n_max_used},
                                   {"converged", false},
                                   {"deltas", err.report.deltas},
                                   {"step_seconds", err.report.step_seconds}};
    } catch (const std::exception& err) {
        out.failed = true;
        out.row.sx = out.row.sy = out.row.sz = nan_value();
        out.row.s_mag = out.row.purity = out.row.vn_entropy = nan_value();
        out.row.converged = false;
        out.meta["ok"] = false;
        out.meta["error"] = err.what();
    }
    return out;
}

} // namespace

RunOutcome execute(const RunConfig& cfg, int threads) {
    cfg.validate();
    if (threads < 1) throw ValidationError("execute: thread count must be >= 1");
    std::vector<Task> tasks;
    for (Engine e : cfg.engines)
        for (double t : cfg.temperatures) tasks.push_back({e, t});

    std::vector<PointResult> results(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            results[i] = compute_point(cfg, tasks[i]);
        }
    };
    const int n_workers = std::min<int>(threads, static_cast<int>(tasks.size()));
    if (n_workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    RunOutcome outcome;
    std::vector<std::size_t> order(results.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&results](std::size_t a, std::size_t b) {
        const ResultRow& ra = results[a].row;
        const ResultRow& rb = results[b].row;
        if (ra.engine != rb.engine) return ra.engine < rb.engine;
        return ra.t < rb.t;
    });
    nlohmann::json points = nlohmann::json::array();
    for (std::size_t i : order) {
        outcome.rows.push_back(results[i].row);
        points.push_back(results[i].meta);
        if (results[i].failed) ++outcome.n_failures;
    }
    outcome.meta["config"] = run_config_to_json(cfg);
    outcome.meta["versions"] = {{"mfspin", kVersion},
                                {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                                              std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                              std::to_string(EIGEN_MINOR_VERSION)},
                                {"compiler", __VERSION__}};
    outcome.meta["points"] = points;
    outcome.meta["n_failures"] = outcome.n_failures;
    return outcome;
}

std::string format_csv(const std::vector<ResultRow>& rows) {
    std::string out(kCsvHeader);
    out.push_back('\n');
    for (const ResultRow& r : rows) {
        out += r.engine;
        out.push_back(',');
        out += r.topology;
        out.push_back(',');
        out += format_double(r.t);
        out.push_back(',');
        out += format_double(r.sx);
        out.push_back(',');
        out += format_double(r.sy);
        out.push_back(',');
        out += format_double(r.sz);
        out.push_back(',');
        out += format_double(r.s_mag);
        out.push_back(',');
        out += format_double(r.purity);
        out.push_back(',');
        out += format_double(r.vn_entropy);
        out.push_back(',');
        out += std::to_string(r.n_max_used);
        out.push_back(',');
        out += r.converged ? "true" : "false";
        out.push_back(',');
        out += format_double(r.alpha);
        out.push_back(',');
        out += format_double(r.omega0);
        out.push_back(',');
        out += format_double(r.gamma);
        out.push_back('\n');
    }
    return out;
}

nlohmann::json rows_to_json(const std::vector<ResultRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const ResultRow& r : rows) {
        nlohmann::json row;
        row["engine"] = r.engine;
        row["topology"] = r.topology;
        row["t"] = r.t;
        row["sx"] = r.sx;
        row["sy"] = r.sy;
        row["sz"] = r.sz;
        row["s_mag"] = r.s_mag;
        row["purity"] = r.purity;
        row["vn_entropy"] = r.vn_entropy;
        row["n_max_used"] = r.n_max_used;
        row["converged"] = r.converged;
        row["alpha"] = r.alpha;
        row["omega0"] = r.omega0;
        row["gamma"] = r.gamma;
        arr.push_back(row);
    }
    return arr;
}

int run_and_write(const RunConfig& cfg, int threads) {
    cfg.validate();
    const std::string data_path =
        cfg.output + (cfg.format == OutputFormat::Csv ? ".csv" : ".json");
    const std::string meta_path = cfg.output + ".meta.json";
    std::ofstream data_file(data_path, std::ios::binary | std::ios::trunc);
    std::ofstream meta_file(meta_path, std::ios::binary | std::ios::trunc);
    if (!data_file || !meta_file) return 4;

    RunOutcome outcome = execute(cfg, threads);
    if (cfg.format == OutputFormat::Csv)
        data_file << format_csv(outcome.rows);
    else
        data_file << rows_to_json(outcome.rows).dump(2) << '\n';
    meta_file << outcome.meta.dump(2) << '\n';
    data_file.flush();
    meta_file.flush();
    if (!data_file || !meta_file) return 4;
    return outcome.n_failures > 0 ? 3 : 0;
}

} // namespace mfspin::sweep
