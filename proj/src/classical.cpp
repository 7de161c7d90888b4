#include "mfspin/classical.hpp"
#include "mfspin/errors.hpp"
#include "mfspin/quadrature.hpp"

#include <cmath>

namespace mfspin {

double langevin(double x) {
    if (std::abs(x) < 1e-4) return x / 3.0 - x * x * x / 45.0;
    return 1.0 / std::tanh(x) - 1.0 / x;
}

double classical_gibbs_sz(double t) {
    if (std::isnan(t) || t < 0.0) throw ValidationError("classical_gibbs_sz: t must be >= 0");
    if (t == 0.0) return 1.0;
    const double x = units::omega_larmor * units::spin_length / t; // beta omega_L S0
    return langevin(x);
}

double reorganisation_energy(const LorentzianBath& bath) {
    bath.validate();
    if (bath.alpha == 0.0) return 0.0;
    auto integrand = [&bath](double omega) { return lorentzian_j_over_omega(omega, bath); };
    const double split = std::max({4.0 * bath.omega0, bath.omega0 + 10.0 * bath.gamma, 10.0});
    return quad::integrate_to_infinity(integrand, 0.0, split);
}

double cmf_sz(double t, const LorentzianBath& bath) {
    bath.validate();
    return classical_gibbs_sz(t);
}

} // namespace mfspin
