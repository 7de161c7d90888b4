#pragma once

#include "mfspin/equilibrium.hpp"
#include "mfspin/model.hpp"
#include "mfspin/weakcoupling.hpp"

#include <json.hpp> // vendored nlohmann/json

#include <string>
#include <vector>

namespace mfspin::sweep {

enum class Engine { Cg, Cmf, Qg, Qmf, Weak };

std::string engine_name(Engine e);
Engine engine_from_name(const std::string& name);

enum class OutputFormat { Csv, Json };

struct RunConfig {
    Topology topology = Topology::ThreeBath;
    LorentzianBath bath;
    std::vector<double> temperatures;
    std::vector<Engine> engines;
    FockPolicy fock = FockPolicy::defaults(Topology::ThreeBath);
    PvQuadratureSettings quadrature;
    std::string output = "mfspin_out";
    OutputFormat format = OutputFormat::Csv;

    void validate() const;
    ModelConfig model(int n_max) const;
};

/// Parse a config document; missing optional blocks take defaults.
/// The temperature grid is either an explicit array or
/// {start, stop, count, spacing: "linear"|"log"}.
RunConfig parse_run_config(const nlohmann::json& doc);

/// Echo of the resolved config; re-parsing it reproduces the run.
nlohmann::json run_config_to_json(const RunConfig& cfg);

/// Named figure-reproduction configurations: fig2a, fig2b, fig3, fig4.
RunConfig preset(const std::string& name);
std::vector<std::string> preset_names();

struct ResultRow {
    std::string engine; // includes the weak_t0 routing label
    std::string topology;
    double t = 0.0;
    double sx = 0.0, sy = 0.0, sz = 0.0;
    double s_mag = 0.0;
    double purity = 0.0;
    double vn_entropy = 0.0;
    int n_max_used = 0;
    bool converged = false;
    double alpha = 0.0, omega0 = 0.0, gamma = 0.0;
};

struct RunOutcome {
    std::vector<ResultRow> rows; // sorted by (engine, t)
    nlohmann::json meta;
    int n_failures = 0;
};

/// Worker count: MFSPIN_THREADS when set (must parse as a positive
/// integer), otherwise the hardware concurrency.
int resolve_threads();

/// Compute all (engine, t) points with the given worker count. Failed
/// points yield NaN observables with converged = false.
RunOutcome execute(const RunConfig& cfg, int threads);

/// Header plus one line per row, shortest round-trip number formatting,
/// NaN spelled "nan".
std::string format_csv(const std::vector<ResultRow>& rows);
nlohmann::json rows_to_json(const std::vector<ResultRow>& rows);

/// Full run: validate, compute, write <output>.csv or .json plus
/// <output>.meta.json. Returns the process exit code: 0 success,
/// 3 when any point failed numerically, 4 when outputs are unwritable.
/// Validation failures throw ValidationError (callers map them to 2).
int run_and_write(const RunConfig& cfg, int threads);

} // namespace mfspin::sweep
