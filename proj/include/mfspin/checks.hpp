#pragma once

#include "mfspin/model.hpp"
#include "mfspin/weakcoupling.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mfspin::checks {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Model-independent route to the classical mean-force expectation:
/// Gauss-Legendre quadrature of the completed-square effective
/// Hamiltonian exp(-beta (H_S - Q S0^2)) over the spin sphere. The
/// azimuthal integral is analytic for a z-aligned field.
double classical_sphere_oracle_sz(double t, const LorentzianBath& bath, int nodes = 64);

/// Property checks over the linear-algebra kernel, model structure and
/// equilibrium observables. Deterministic for a fixed seed.
std::vector<CheckResult> invariant_suite(int threads, std::uint64_t seed = 20240811);

/// Independent-route checks: frozen-oracle comparisons, quadrature
/// robustness, dual-formula agreements. pv controls the principal-value
/// settings under test (the negative control tampers with them).
std::vector<CheckResult> oracle_suite(const PvQuadratureSettings& pv = {},
                                      std::uint64_t seed = 20240811);

bool all_pass(const std::vector<CheckResult>& results);
std::string format_table(const std::vector<CheckResult>& results);

} // namespace mfspin::checks
