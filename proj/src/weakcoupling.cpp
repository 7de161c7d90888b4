#include "mfspin/weakcoupling.hpp"
#include "mfspin/errors.hpp"
#include "mfspin/quadrature.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

namespace mfspin {

namespace {

double coth_series(double y) {
    return 1.0 / y + y / 3.0 - y * y * y / 45.0;
}

double coth_safe(double y) {
    if (y >= 19.0) return 1.0;
    if (y < 1e-4) return coth_series(y);
    return 1.0 / std::tanh(y);
}

/// omega * coth(beta omega / 2) without the 0/0 at omega = 0.
double omega_coth(double beta, double omega) {
    const double y = 0.5 * beta * omega;
    if (y < 1e-4) return 2.0 / beta + beta * omega * omega / 6.0 -
                         beta * beta * beta * omega * omega * omega * omega / 360.0;
    return omega * coth_safe(y);
}

/// PV int_0^inf g(w) / (w^2 - wl^2) dw with g smooth on [0, inf).
double pv_over_pole(const std::function<double(double)>& g, const LorentzianBath& bath,
                    double wl, const PvQuadratureSettings& s) {
    s.validate(bath, wl);
    const double delta = s.pole_halfwidth;
    const double cut = s.resolved_cut(bath, wl);
    auto full = [&g, wl](double w) { return g(w) / ((w - wl) * (w + wl)); };
    auto phi = [&g, wl](double w) { return g(w) / (w + wl); };

    double total = quad::integrate(full, 0.0, wl - delta);
    const double phi0 = phi(wl);
    auto excised = [&phi, phi0, wl](double u) { return (phi(wl + u) - phi0) / u; };
    total += quad::gauss_fixed(excised, -delta, delta, s.excision_nodes);
    total += quad::integrate(full, wl + delta, cut);
    auto transformed = [&full](double u) { return full(1.0 / u) / (u * u); };
    total += quad::integrate(transformed, 0.0, 1.0 / cut);
    return total;
}

} // namespace

double PvQuadratureSettings::resolved_cut(const LorentzianBath& bath, double wl) const {
    const double auto_cut = bath.omega0 + 40.0 * std::max(bath.gamma, wl);
    return omega_cut == 0.0 ? auto_cut : omega_cut;
}

void PvQuadratureSettings::validate(const LorentzianBath& bath, double wl) const {
    bath.validate();
    if (!(wl > 0.0)) throw ValidationError("pv settings: wl must be > 0");
    if (!(pole_halfwidth > 0.0) || pole_halfwidth > wl / 10.0) {
        std::ostringstream msg;
        msg << "pv settings: pole half-width " << pole_halfwidth << " outside (0, " << wl / 10.0
            << "]";
        throw ValidationError(msg.str());
    }
    const double min_cut = bath.omega0 + 40.0 * std::max(bath.gamma, wl);
    if (resolved_cut(bath, wl) < min_cut) {
        std::ostringstream msg;
        msg << "pv settings: omega_cut " << resolved_cut(bath, wl) << " below required "
            << min_cut;
        throw ValidationError(msg.str());
    }
    if (!(rel_tol > 0.0)) throw ValidationError("pv settings: rel_tol must be > 0");
    if (deriv_step < 1e-5 || deriv_step > 1e-2)
        throw ValidationError("pv settings: deriv_step outside [1e-5, 1e-2]");
    if (excision_nodes < 8) throw ValidationError("pv settings: excision_nodes must be >= 8");
}

double integral_i1(const LorentzianBath& bath, double wl, const PvQuadratureSettings& settings) {
    if (bath.alpha == 0.0) return 0.0;
    auto g = [&bath](double w) { return lorentzian_j(w, bath) * w; };
    return pv_over_pole(g, bath, wl, settings);
}

double integral_i2(const LorentzianBath& bath, double wl, const PvQuadratureSettings& settings) {
    if (bath.alpha == 0.0) return 0.0;
    auto g = [&bath, wl](double w) { return -wl * wl * lorentzian_j_over_omega(w, bath); };
    return pv_over_pole(g, bath, wl, settings);
}

double integral_i3(const LorentzianBath& bath, double beta, double wl,
                   const PvQuadratureSettings& settings) {
    if (std::isnan(beta) || beta <= 0.0)
        throw ValidationError("integral_i3: beta must be > 0 or +infinity");
    if (std::isinf(beta)) return integral_i3_inf(bath, wl, settings);
    if (bath.alpha == 0.0) return 0.0;
    auto g = [&bath, beta, wl](double w) {
        return wl * lorentzian_j_over_omega(w, bath) * omega_coth(beta, w);
    };
    return pv_over_pole(g, bath, wl, settings);
}

double integral_i3_inf(const LorentzianBath& bath, double wl,
                       const PvQuadratureSettings& settings) {
    if (bath.alpha == 0.0) return 0.0;
    auto g = [&bath, wl](double w) { return wl * lorentzian_j(w, bath); };
    return pv_over_pole(g, bath, wl, settings);
}

namespace {

double eval_weak_integral(WeakIntegral which, const LorentzianBath& bath, double beta, double wl,
                          const PvQuadratureSettings& s) {
    switch (which) {
        case WeakIntegral::I1: return integral_i1(bath, wl, s);
        case WeakIntegral::I2: return integral_i2(bath, wl, s);
        case WeakIntegral::I3: return integral_i3(bath, beta, wl, s);
        case WeakIntegral::I3Inf: return integral_i3_inf(bath, wl, s);
    }
    throw ValidationError("d_dwl: unknown integral");
}

} // namespace

DerivativeResult d_dwl(WeakIntegral which, const LorentzianBath& bath, double beta, double wl,
                       const PvQuadratureSettings& settings) {
    settings.validate(bath, wl - settings.deriv_step);
    const double h = settings.deriv_step;
    auto f = [&](double w) { return eval_weak_integral(which, bath, beta, w, settings); };
    const double d1 = (f(wl + h) - f(wl - h)) / (2.0 * h);
    const double d2 = (f(wl + 0.5 * h) - f(wl - 0.5 * h)) / h;
    DerivativeResult out;
    out.value = (4.0 * d2 - d1) / 3.0;
    out.error_estimate = std::abs(d1 - d2);
    if (out.error_estimate > 100.0 * settings.rel_tol * std::max(1.0, std::abs(out.value))) {
        std::ostringstream msg;
        msg << "d_dwl: error estimate " << out.error_estimate << " exceeds 100x target "
            << settings.rel_tol;
        throw NumericError(msg.str());
    }
    return out;
}

double sz_weak(const LorentzianBath& bath, double t, const PvQuadratureSettings& settings) {
    if (std::isnan(t) || t <= 0.0) throw ValidationError("sz_weak: t must be > 0");
    const double wl = units::omega_larmor;
    const double s0 = units::spin_length;
    const double beta = 1.0 / t;
    const double th = std::tanh(beta * wl * s0);
    const double i1p = d_dwl(WeakIntegral::I1, bath, beta, wl, settings).value;
    const double i2p = d_dwl(WeakIntegral::I2, bath, beta, wl, settings).value;
    const double i3p = d_dwl(WeakIntegral::I3, bath, beta, wl, settings).value;
    const double i3 = integral_i3(bath, beta, wl, settings);
    const double x = beta * wl * s0;
    const double sech2 = x > 350.0 ? 0.0 : 1.0 / (std::cosh(x) * std::cosh(x));
    return th + (s0 + units::hbar) * i1p + s0 * i2p - th * i3p - beta * s0 * sech2 * i3;
}

double sz_weak_t0(const LorentzianBath& bath, const PvQuadratureSettings& settings) {
    const double wl = units::omega_larmor;
    const double s0 = units::spin_length;
    settings.validate(bath, wl);
    double deficit = 0.0;
    if (bath.alpha > 0.0) {
        auto integrand = [&bath, wl](double w) {
            return lorentzian_j(w, bath) / ((w + wl) * (w + wl));
        };
        deficit = quad::integrate_to_infinity(integrand, 0.0, settings.resolved_cut(bath, wl));
    }
    const double primary = 1.0 - units::hbar * deficit;

    const double inf = std::numeric_limits<double>::infinity();
    const double i1p = d_dwl(WeakIntegral::I1, bath, inf, wl, settings).value;
    const double i2p = d_dwl(WeakIntegral::I2, bath, inf, wl, settings).value;
    const double i3infp = d_dwl(WeakIntegral::I3Inf, bath, inf, wl, settings).value;
    const double secondary = 1.0 + (units::hbar * i1p - i3infp) + s0 * (i1p + i2p);
    if (std::abs(primary - secondary) > 1e-3) {
        std::ostringstream msg;
        msg << "sz_weak_t0: regular-integral form " << primary << " and derivative form "
            << secondary << " disagree beyond 1e-3";
        throw ConsistencyError(msg.str());
    }
    return primary;
}

} // namespace mfspin
