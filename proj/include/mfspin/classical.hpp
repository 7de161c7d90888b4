#pragma once

#include "mfspin/model.hpp"

namespace mfspin {

/// Langevin function coth(x) - 1/x, with the series x/3 - x^3/45 below
/// |x| = 1e-4.
double langevin(double x);

/// Classical Gibbs expectation s_z = L(beta omega_L S0) for a fixed-length
/// spin in a z-aligned field; t = 0 saturates to 1.
double classical_gibbs_sz(double t);

/// Reorganisation energy Q = int_0^inf J(omega)/omega domega by adaptive
/// quadrature. Closed form lambda^2/(2 omega0^2) is available as
/// bath.reorganisation_closed() for cross-checks.
double reorganisation_energy(const LorentzianBath& bath);

/// Classical mean-force s_z. The completed-square effective Hamiltonian
/// shifts the energy by the constant Q S0^2, which cancels against the
/// partition function, so the mean-force state is the Gibbs state for
/// every bath: the bath argument is validated and otherwise ignored.
double cmf_sz(double t, const LorentzianBath& bath);

} // namespace mfspin
