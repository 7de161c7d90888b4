#pragma once

#include "mfspin/errors.hpp"
#include "mfspin/linalg.hpp"
#include "mfspin/model.hpp"

#include <utility>
#include <vector>

namespace mfspin {

/// Normalized spin observables s_i = tr(rho S_i)/S0 of a qubit state,
/// together with purity and von Neumann entropy (nats).
struct SpinExpectations {
    double sx = 0.0;
    double sy = 0.0;
    double sz = 0.0;
    double magnitude = 0.0;
    double purity = 0.0;
    double entropy = 0.0;
};

struct ConvergenceReport {
    int n_max_used = 0;
    std::vector<double> deltas; // max observable change per ladder step
    bool converged = false;
    std::vector<double> step_seconds;
};

/// Fock-cutoff escalation failed to meet the tolerance before the cap.
class FockConvergenceError : public NumericError {
public:
    FockConvergenceError(const std::string& msg, ConvergenceReport rep)
        : NumericError(msg), report(std::move(rep)) {}
    ConvergenceReport report;
};

struct FockPolicy {
    int n_start = 6;
    int n_cap = 24;
    double tol = 1e-4;

    static FockPolicy defaults(Topology topology);
    void validate(Topology topology) const;
};

/// Reduced spin state of the augmented-system Gibbs state at temperature
/// t (k_B T / hbar omega_L; t = 0 selects the ground eigenspace).
/// Three-bath states are computed with the conserved-M sector solver,
/// single-bath ones with the dense pipeline.
DensityMatrix qmf_spin_state(const ModelConfig& cfg, double t);

/// Same state through the dense pipeline (build, eigh, gibbs, partial
/// trace) for any topology. Used for cross-validation; the three-bath
/// truncation differs from the sector solver at finite n_max (Cartesian
/// versus circular modes), so agreement is only after Fock convergence.
DensityMatrix qmf_spin_state_dense(const ModelConfig& cfg, double t);

/// Observables of a 2x2 density matrix.
SpinExpectations spin_expectations(const DensityMatrix& rho);

/// -sum p ln p over eigenvalues; eigenvalues in [-1e-10, 0) clamp to 0,
/// below -1e-10 the state is rejected.
double entanglement_entropy(const DensityMatrix& rho);

/// Bare spin Gibbs value s_z = tanh(1/(2t)); t = 0 gives 1.
double gibbs_spin_sz(double t);

/// Bare spin Gibbs state (2x2) through the generic kernel.
DensityMatrix gibbs_spin_state(double t);

/// Escalates n_max by 2 from policy.n_start until the spin observables
/// and entropy change by at most policy.tol between steps. Throws
/// FockConvergenceError (carrying the report) if the cap is reached.
std::pair<DensityMatrix, ConvergenceReport> converge_fock(const ModelConfig& cfg, double t,
                                                          const FockPolicy& policy);

} // namespace mfspin
