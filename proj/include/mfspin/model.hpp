#pragma once

#include "mfspin/linalg.hpp"

namespace mfspin {

// Internal units: hbar = k_B = 1, frequencies in multiples of the Larmor
// frequency omega_L = 1, spin length S0 = 1/2. Temperatures are
// t = k_B T / (hbar omega_L), beta = 1/t.
namespace units {
inline constexpr double hbar = 1.0;
inline constexpr double omega_larmor = 1.0;
inline constexpr double spin_length = 0.5;
} // namespace units

/// Lorentzian spectral density parameters: peak frequency omega0, width
/// gamma, coupling amplitude alpha (lambda = sqrt(2 alpha)), and the
/// residual-bath cutoff lambda_cut (recorded only; it never enters the
/// augmented Hamiltonian).
struct LorentzianBath {
    double omega0 = 2.0;
    double gamma = 0.6;
    double alpha = 10.0;
    double lambda_cut = 1e10;

    double lambda() const;              // spin-RC coupling strength
    double reorganisation_closed() const; // lambda^2 / (2 omega0^2)
    void validate() const;
};

enum class Topology { ThreeBath, SingleBath };

struct ModelConfig {
    Topology topology = Topology::ThreeBath;
    LorentzianBath bath;
    int n_max = 6; // Fock levels per reaction coordinate

    Eigen::Index hilbert_dim() const;
    void validate() const;
};

/// Spin-1/2 operators S_i = sigma_i / 2.
struct SpinOperators {
    ComplexMatrix sx, sy, sz;
};
SpinOperators spin_half_operators();

/// Truncated oscillator quadratures and Hamiltonian for one reaction
/// coordinate: x = (a + a^dag)/sqrt(2 omega0), p = i sqrt(omega0/2)(a^dag - a),
/// h_rc = (p^2 + omega0^2 x^2)/2. The top Fock level of h_rc is corrupted
/// by the truncation; its diagonal equals omega0 (k + 1/2) for k <= n_max-2.
struct RcOperators {
    ComplexMatrix x, p, h_rc;
};
RcOperators rc_operators(int n_max, double omega0);

/// lambda = omega_L sqrt(2 alpha / hbar) = sqrt(2 alpha) in internal units.
double lambda_from_alpha(double alpha);

/// Lorentzian spectral density J(omega) = lambda^2 Gamma omega / pi
/// / ((omega0^2 - omega^2)^2 + Gamma^2 omega^2).
double lorentzian_j(double omega, const LorentzianBath& bath);

/// J(omega)/omega in the form that stays finite at omega = 0.
double lorentzian_j_over_omega(double omega, const LorentzianBath& bath);

/// Ohmic residual-bath spectral density with algebraic cutoff:
/// J_RC(omega) = Gamma omega Lambda^2 / (pi (omega^2 + Lambda^2)).
double ohmic_rc_j(double omega, double gamma, double lambda_cut);

/// Augmented spin + reaction-coordinate Hamiltonian, dense form.
/// Three-bath: factor order spin (x) RCx (x) RCy (x) RCz,
///   H = -omega_L Sz + sum_i h_rc,i + lambda (Sx x1 + Sy x2 + Sz x3).
/// Single-bath: H = -omega_L Sz + h_rc + sqrt(3) lambda S_R x with
///   S_R = (Sx + Sy + Sz)/sqrt(3).
ComplexMatrix build_hamiltonian(const ModelConfig& cfg);

/// Three-bath Hamiltonian in the circular-mode basis spin (x) plus (x)
/// minus (x) z, where a_pm = (a_x -/+ i a_y)/sqrt(2). The x and y
/// oscillators are replaced by circularly polarized modes and the
/// oscillator energy takes the exact number form omega0 (N + 3/2), so
/// M = Sz + N_plus - N_minus commutes with the result. Used to
/// cross-check the sector solver against the dense pipeline on an
/// identical truncated space.
ComplexMatrix build_hamiltonian_circular(const ModelConfig& cfg);

} // namespace mfspin
