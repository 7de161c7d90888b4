#include "mfspin/equilibrium.hpp"
#include "mfspin/sectors.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

namespace mfspin {

namespace {

double beta_from_temperature(double t) {
    if (std::isnan(t) || t < 0.0) throw ValidationError("temperature must be >= 0");
    if (t == 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / t;
}

} // namespace

FockPolicy FockPolicy::defaults(Topology topology) {
    FockPolicy p;
    if (topology == Topology::ThreeBath) {
        p.n_start = 6;
        p.n_cap = 24;
    } else {
        p.n_start = 16;
        p.n_cap = 256;
    }
    p.tol = 1e-4;
    return p;
}

void FockPolicy::validate(Topology topology) const {
    if (!(tol > 0.0)) throw ValidationError("fock policy: tol must be > 0");
    if (n_start < 2) throw ValidationError("fock policy: n_start must be >= 2");
    const int cap_limit = topology == Topology::ThreeBath ? 24 : 4096;
    if (n_cap > cap_limit) {
        std::ostringstream msg;
        msg << "fock policy: n_cap " << n_cap << " exceeds limit " << cap_limit;
        throw ValidationError(msg.str());
    }
    if (n_cap < n_start) throw ValidationError("fock policy: n_cap must be >= n_start");
}

DensityMatrix qmf_spin_state(const ModelConfig& cfg, double t) {
    cfg.validate();
    const double beta = beta_from_temperature(t);
    if (cfg.topology == Topology::ThreeBath) {
        sectors::ThreeBathSectors solver(cfg.n_max, cfg.bath.omega0, cfg.bath.lambda());
        return solver.spin_state(beta);
    }
    return qmf_spin_state_dense(cfg, t);
}

DensityMatrix qmf_spin_state_dense(const ModelConfig& cfg, double t) {
    cfg.validate();
    const double beta = beta_from_temperature(t);
    const ComplexMatrix h = build_hamiltonian(cfg);
    const Spectrum spec = eigh(h);
    const DensityMatrix full = gibbs_density(spec, beta);
    std::vector<Eigen::Index> dims{2, cfg.n_max};
    if (cfg.topology == Topology::ThreeBath) dims = {2, cfg.n_max, cfg.n_max, cfg.n_max};
    return partial_trace_keep_first(full, dims);
}

SpinExpectations spin_expectations(const DensityMatrix& rho) {
    if (rho.dim() != 2) throw ValidationError("spin_expectations: state must be 2x2");
    const ComplexMatrix& m = rho.matrix();
    SpinExpectations e;
    // s_i = tr(rho sigma_i) since S_i = sigma_i/2 and S0 = 1/2
    e.sx = 2.0 * m(0, 1).real();
    e.sy = -2.0 * m(0, 1).imag();
    e.sz = (m(0, 0) - m(1, 1)).real();
    e.magnitude = std::sqrt(e.sx * e.sx + e.sy * e.sy + e.sz * e.sz);
    e.purity = rho.purity();
    e.entropy = entanglement_entropy(rho);
    return e;
}

double entanglement_entropy(const DensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho.matrix(), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw NumericError("entanglement_entropy: eigensolver failure");
    double s = 0.0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        double p = solver.eigenvalues()[i];
        if (p < -1e-10) {
            std::ostringstream msg;
            msg << "entanglement_entropy: eigenvalue " << p << " violates positivity";
            throw ValidationError(msg.str());
        }
        if (p <= 0.0) continue;
        s -= p * std::log(p);
    }
    return s;
}

double gibbs_spin_sz(double t) {
    if (std::isnan(t) || t < 0.0) throw ValidationError("gibbs_spin_sz: t must be >= 0");
    if (t == 0.0) return 1.0;
    return std::tanh(1.0 / (2.0 * t));
}

DensityMatrix gibbs_spin_state(double t) {
    const double beta = beta_from_temperature(t);
    const SpinOperators s = spin_half_operators();
    const Spectrum spec = eigh((-units::omega_larmor * s.sz).eval());
    return gibbs_density(spec, beta);
}

std::pair<DensityMatrix, ConvergenceReport> converge_fock(const ModelConfig& cfg, double t,
                                                          const FockPolicy& policy) {
    policy.validate(cfg.topology);
    ConvergenceReport report;
    ModelConfig work = cfg;
    bool have_prev = false;
    SpinExpectations prev;
    DensityMatrix state(ComplexMatrix::Identity(2, 2) * 0.5);
    for (int n = policy.n_start; n <= policy.n_cap; n += 2) {
        work.n_max = n;
        const auto start = std::chrono::steady_clock::now();
        state = qmf_spin_state(work, t);
        const std::chrono::duration<double> elapsed =
            std::chrono::steady_clock::now() - start;
        report.step_seconds.push_back(elapsed.count());
        report.n_max_used = n;
        const SpinExpectations cur = spin_expectations(state);
        if (have_prev) {
            const double ds = std::max({std::abs(cur.sx - prev.sx), std::abs(cur.sy - prev.sy),
                                        std::abs(cur.sz - prev.sz)});
            const double de = std::abs(cur.entropy - prev.entropy);
            report.deltas.push_back(std::max(ds, de));
            if (ds <= policy.tol && de <= policy.tol) {
                report.converged = true;
                return {state, report};
            }
        }
        prev = cur;
        have_prev = true;
    }
    std::ostringstream msg;
    msg << "converge_fock: observables not converged to " << policy.tol << " at n_cap "
        << policy.n_cap;
    throw FockConvergenceError(msg.str(), report);
}

} // namespace mfspin
