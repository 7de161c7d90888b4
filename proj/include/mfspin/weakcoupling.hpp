#pragma once

#include "mfspin/model.hpp"

namespace mfspin {

/// Controls for the principal-value integrals. The integrands have a
/// simple real-axis pole at omega = wl; it is handled by a symmetric
/// excision window of half-width pole_halfwidth with the singular part
/// subtracted (its principal value over the symmetric window is zero).
/// omega_cut = 0 requests the automatic cutoff omega0 + 40 max(gamma, wl);
/// beyond the cutoff the integral is carried out exactly under u = 1/omega.
struct PvQuadratureSettings {
    double pole_halfwidth = 0.02;
    double omega_cut = 0.0;
    double rel_tol = 1e-6;   // accuracy target used for error flags
    double deriv_step = 1e-3;
    int excision_nodes = 32; // Gauss-Legendre order on the excision window

    double resolved_cut(const LorentzianBath& bath, double wl) const;
    void validate(const LorentzianBath& bath, double wl) const;
};

/// I1 = PV int J(w) w / (w^2 - wl^2) dw.
double integral_i1(const LorentzianBath& bath, double wl,
                   const PvQuadratureSettings& settings = {});

/// I2 = PV int J(w) (1/w - w/(w^2 - wl^2)) dw, evaluated from its own
/// integrand -wl^2 J(w)/(w (w^2 - wl^2)); the identity I1 + I2 = Q is a
/// cross-check, not the implementation.
double integral_i2(const LorentzianBath& bath, double wl,
                   const PvQuadratureSettings& settings = {});

/// I3 = PV int J(w) coth(beta w / 2) wl / (w^2 - wl^2) dw. beta may be
/// +infinity, which reduces to integral_i3_inf.
double integral_i3(const LorentzianBath& bath, double beta, double wl,
                   const PvQuadratureSettings& settings = {});

/// Zero-temperature limit of I3 (coth -> 1).
double integral_i3_inf(const LorentzianBath& bath, double wl,
                       const PvQuadratureSettings& settings = {});

enum class WeakIntegral { I1, I2, I3, I3Inf };

struct DerivativeResult {
    double value = 0.0;
    double error_estimate = 0.0;
};

/// d/dwl of the selected integral: central differences at steps h and
/// h/2 with one Richardson extrapolation. The error estimate is the
/// difference of the two central-difference values; estimates above
/// 100x the target tolerance raise NumericError.
DerivativeResult d_dwl(WeakIntegral which, const LorentzianBath& bath, double beta, double wl,
                       const PvQuadratureSettings& settings = {});

/// First-order-in-alpha equilibrium s_z at temperature t > 0. The
/// zero-temperature value is served by sz_weak_t0; the beta-prefactor
/// terms here are individually singular as beta -> infinity.
double sz_weak(const LorentzianBath& bath, double t,
               const PvQuadratureSettings& settings = {});

/// Zero-temperature weak-coupling s_z = 1 - int J(w)/(w + wl)^2 dw.
/// Also evaluates the derivative form 1 + (I1' - I3inf') + S0 (I1' + I2')
/// and raises ConsistencyError if the two disagree beyond 1e-3.
double sz_weak_t0(const LorentzianBath& bath, const PvQuadratureSettings& settings = {});

} // namespace mfspin
