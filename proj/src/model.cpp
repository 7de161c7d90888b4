#include "mfspin/model.hpp"
#include "mfspin/errors.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace mfspin {

double LorentzianBath::lambda() const {
    return lambda_from_alpha(alpha);
}

double LorentzianBath::reorganisation_closed() const {
    const double l = lambda();
    return l * l / (2.0 * omega0 * omega0);
}

void LorentzianBath::validate() const {
    if (!(omega0 > 0.0)) throw ValidationError("bath: omega0 must be > 0");
    if (!(gamma > 0.0)) throw ValidationError("bath: gamma must be > 0");
    if (!(alpha >= 0.0)) throw ValidationError("bath: alpha must be >= 0");
    if (!(lambda_cut > 0.0)) throw ValidationError("bath: lambda_cut must be > 0");
}

Eigen::Index ModelConfig::hilbert_dim() const {
    const Eigen::Index n = n_max;
    return topology == Topology::ThreeBath ? 2 * n * n * n : 2 * n;
}

void ModelConfig::validate() const {
    bath.validate();
    if (n_max < 2) throw ValidationError("model: n_max must be >= 2");
    if (hilbert_dim() > kDefaultMaxHilbertDim) {
        std::ostringstream msg;
        msg << "model: Hilbert dimension " << hilbert_dim() << " exceeds cap "
            << kDefaultMaxHilbertDim;
        throw SizingError(msg.str());
    }
}

SpinOperators spin_half_operators() {
    SpinOperators ops;
    ops.sx = ComplexMatrix::Zero(2, 2);
    ops.sy = ComplexMatrix::Zero(2, 2);
    ops.sz = ComplexMatrix::Zero(2, 2);
    ops.sx(0, 1) = 0.5;
    ops.sx(1, 0) = 0.5;
    ops.sy(0, 1) = Complex(0.0, -0.5);
    ops.sy(1, 0) = Complex(0.0, 0.5);
    ops.sz(0, 0) = 0.5;
    ops.sz(1, 1) = -0.5;
    return ops;
}

RcOperators rc_operators(int n_max, double omega0) {
    if (n_max < 2) throw ValidationError("rc_operators: n_max must be >= 2");
    if (!(omega0 > 0.0)) throw ValidationError("rc_operators: omega0 must be > 0");
    ComplexMatrix a = ComplexMatrix::Zero(n_max, n_max);
    for (int k = 1; k < n_max; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
    RcOperators ops;
    ops.x = (a + a.adjoint().eval()) / std::sqrt(2.0 * omega0);
    ops.p = Complex(0.0, 1.0) * std::sqrt(omega0 / 2.0) * (a.adjoint() - a).eval();
    ops.h_rc = 0.5 * (ops.p * ops.p + omega0 * omega0 * ops.x * ops.x);
    return ops;
}

double lambda_from_alpha(double alpha) {
    if (alpha < 0.0) throw ValidationError("lambda_from_alpha: alpha must be >= 0");
    return units::omega_larmor * std::sqrt(2.0 * alpha / units::hbar);
}

double lorentzian_j(double omega, const LorentzianBath& bath) {
    const double l2 = 2.0 * bath.alpha;
    const double d = bath.omega0 * bath.omega0 - omega * omega;
    return l2 * bath.gamma * omega /
           (std::numbers::pi * (d * d + bath.gamma * bath.gamma * omega * omega));
}

double lorentzian_j_over_omega(double omega, const LorentzianBath& bath) {
    const double l2 = 2.0 * bath.alpha;
    const double d = bath.omega0 * bath.omega0 - omega * omega;
    return l2 * bath.gamma /
           (std::numbers::pi * (d * d + bath.gamma * bath.gamma * omega * omega));
}

double ohmic_rc_j(double omega, double gamma, double lambda_cut) {
    const double c2 = lambda_cut * lambda_cut;
    return gamma * omega * c2 / (std::numbers::pi * (omega * omega + c2));
}

namespace {

ComplexMatrix identity(Eigen::Index n) {
    return ComplexMatrix::Identity(n, n);
}

ComplexMatrix three_bath_dense(const ModelConfig& cfg) {
    const int n = cfg.n_max;
    const SpinOperators s = spin_half_operators();
    const RcOperators rc = rc_operators(n, cfg.bath.omega0);
    const double lam = cfg.bath.lambda();
    const ComplexMatrix in = identity(n);

    ComplexMatrix h = kron(kron(kron(-units::omega_larmor * s.sz, in), in), in);
    h += kron(kron(kron(identity(2), rc.h_rc), in), in);
    h += kron(kron(kron(identity(2), in), rc.h_rc), in);
    h += kron(kron(kron(identity(2), in), in), rc.h_rc);
    h += lam * kron(kron(kron(s.sx, rc.x), in), in);
    h += lam * kron(kron(kron(s.sy, in), rc.x), in);
    h += lam * kron(kron(kron(s.sz, in), in), rc.x);
    return h;
}

ComplexMatrix single_bath_dense(const ModelConfig& cfg) {
    const int n = cfg.n_max;
    const SpinOperators s = spin_half_operators();
    const RcOperators rc = rc_operators(n, cfg.bath.omega0);
    const double lam = cfg.bath.lambda();
    const ComplexMatrix s_r = (s.sx + s.sy + s.sz) / std::sqrt(3.0);

    ComplexMatrix h = kron(-units::omega_larmor * s.sz, identity(n));
    h += kron(identity(2), rc.h_rc);
    h += std::sqrt(3.0) * lam * kron(s_r, rc.x);
    return h;
}

} // namespace

ComplexMatrix build_hamiltonian(const ModelConfig& cfg) {
    cfg.validate();
    return cfg.topology == Topology::ThreeBath ? three_bath_dense(cfg) : single_bath_dense(cfg);
}

ComplexMatrix build_hamiltonian_circular(const ModelConfig& cfg) {
    cfg.validate();
    if (cfg.topology != Topology::ThreeBath)
        throw ValidationError("build_hamiltonian_circular: three-bath only");
    const int n = cfg.n_max;
    const double omega0 = cfg.bath.omega0;
    const double lam = cfg.bath.lambda();

    ComplexMatrix a = ComplexMatrix::Zero(n, n);
    for (int k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
    ComplexMatrix num = ComplexMatrix::Zero(n, n);
    for (int k = 0; k < n; ++k) num(k, k) = static_cast<double>(k);
    const ComplexMatrix in = identity(n);
    const ComplexMatrix xz = (a + a.adjoint().eval()) / std::sqrt(2.0 * omega0);

    ComplexMatrix sp = ComplexMatrix::Zero(2, 2); // S_+ = |up><down|
    sp(0, 1) = 1.0;
    ComplexMatrix sm = sp.adjoint();
    const SpinOperators s = spin_half_operators();

    ComplexMatrix h = kron(kron(kron(-units::omega_larmor * s.sz, in), in), in);
    // oscillator energy in exact number form: omega0 (N_+ + N_- + N_z + 3/2)
    h += omega0 * kron(kron(kron(identity(2), num), in), in);
    h += omega0 * kron(kron(kron(identity(2), in), num), in);
    h += omega0 * kron(kron(kron(identity(2), in), in), num);
    h += 1.5 * omega0 * kron(kron(kron(identity(2), in), in), in);
    // lambda (Sx x_x + Sy x_y) = lambda/(2 sqrt(omega0)) (S+ a+ + S+ a-^dag + h.c.)
    const double c = lam / (2.0 * std::sqrt(omega0));
    h += c * kron(kron(kron(sp, a), in), in);
    h += c * kron(kron(kron(sm, a.adjoint().eval()), in), in);
    h += c * kron(kron(kron(sp, in), a.adjoint().eval()), in);
    h += c * kron(kron(kron(sm, in), a), in);
    h += lam * kron(kron(kron(s.sz, in), in), xz);
    return h;
}

} // namespace mfspin
