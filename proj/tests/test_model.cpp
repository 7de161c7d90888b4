#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mfspin/errors.hpp"
#include "mfspin/model.hpp"
#include "mfspin/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

using namespace mfspin;

TEST_CASE("spin operators satisfy the su(2) algebra") {
    const SpinOperators s = spin_half_operators();
    CHECK(s.sz(0, 0).real() == doctest::Approx(0.5));
    CHECK(s.sz(1, 1).real() == doctest::Approx(-0.5));

    const ComplexMatrix comm = s.sx * s.sy - s.sy * s.sx - Complex(0.0, 1.0) * s.sz;
    CHECK(comm.cwiseAbs().maxCoeff() <= 1e-15);

    const ComplexMatrix casimir = s.sx * s.sx + s.sy * s.sy + s.sz * s.sz;
    CHECK((casimir - 0.75 * ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("rc operators reproduce ladder matrix elements") {
    const RcOperators rc = rc_operators(2, 1.0);
    CHECK(rc.x(0, 1).real() == doctest::Approx(std::sqrt(0.5)));
    CHECK(rc.x(1, 0).real() == doctest::Approx(std::sqrt(0.5)));
    CHECK(std::abs(rc.x(0, 0)) == 0.0);

    CHECK_THROWS_AS((void)rc_operators(1, 1.0), ValidationError);
}

TEST_CASE("canonical commutator holds away from the truncation edge") {
    const int n = 8;
    const RcOperators rc = rc_operators(n, 2.0);
    const ComplexMatrix comm = rc.x * rc.p - rc.p * rc.x;
    for (int k = 0; k <= n - 2; ++k) CHECK(std::abs(comm(k, k) - Complex(0.0, 1.0)) <= 1e-12);
}

TEST_CASE("truncated oscillator hamiltonian is diagonal with the known top-level defect") {
    const int n = 8;
    const double omega0 = 2.0;
    const RcOperators rc = rc_operators(n, omega0);
    double offdiag = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) offdiag = std::max(offdiag, std::abs(rc.h_rc(i, j)));
    CHECK(offdiag <= 1e-13);
    // first six diagonal entries are the analytic spectrum omega0 (k + 1/2)
    for (int k = 0; k < 6; ++k)
        CHECK(rc.h_rc(k, k).real() == doctest::Approx(omega0 * (k + 0.5)));
    CHECK(rc.h_rc(n - 2, n - 2).real() == doctest::Approx(omega0 * (n - 2 + 0.5)));
    // truncation corrupts only the top level, down to omega0 (n-1)/2
    CHECK(rc.h_rc(n - 1, n - 1).real() == doctest::Approx(omega0 * (n - 1) / 2.0));
}

TEST_CASE("lambda from alpha") {
    CHECK(lambda_from_alpha(0.0) == 0.0);
    CHECK(lambda_from_alpha(10.0) == doctest::Approx(4.47213595499958).epsilon(1e-12));
    CHECK(lambda_from_alpha(0.1) == doctest::Approx(0.4472135954999579).epsilon(1e-12));
    CHECK_THROWS_AS((void)lambda_from_alpha(-1.0), ValidationError);
}

TEST_CASE("lorentzian spectral density values") {
    LorentzianBath bath;
    bath.omega0 = 2.0;
    bath.gamma = 0.6;
    bath.alpha = 10.0;
    CHECK(lorentzian_j(0.0, bath) == 0.0);
    const double lam2 = 20.0;
    const double pi = 3.14159265358979323846;
    CHECK(lorentzian_j(bath.omega0, bath) ==
          doctest::Approx(lam2 / (pi * bath.gamma * bath.omega0)).epsilon(1e-12));

    // int J/omega equals lambda^2/(2 omega0^2)
    auto integrand = [&bath](double w) { return lorentzian_j_over_omega(w, bath); };
    const double q = quad::integrate_to_infinity(integrand, 0.0, 20.0);
    CHECK(q == doctest::Approx(lam2 / (2.0 * bath.omega0 * bath.omega0)).epsilon(1e-6));
}

TEST_CASE("ohmic residual-bath density") {
    const double pi = 3.14159265358979323846;
    CHECK(ohmic_rc_j(0.0, 0.6, 1e10) == 0.0);
    CHECK(ohmic_rc_j(1.0, 0.6, 1e10) == doctest::Approx(0.6 / pi).epsilon(1e-15));
    CHECK(ohmic_rc_j(1e10, 0.6, 1e10) == doctest::Approx(0.6 * 1e10 / (2.0 * pi)));
}

TEST_CASE("decoupled hamiltonian spectrum is the free sum") {
    ModelConfig cfg;
    cfg.topology = Topology::ThreeBath;
    cfg.bath.alpha = 0.0;
    cfg.bath.omega0 = 2.0;
    cfg.n_max = 3;
    const ComplexMatrix h = build_hamiltonian(cfg);
    const Spectrum s = eigh(h);

    const RcOperators rc = rc_operators(cfg.n_max, cfg.bath.omega0);
    std::vector<double> expected;
    for (double spin : {-0.5, 0.5})
        for (int k1 = 0; k1 < 3; ++k1)
            for (int k2 = 0; k2 < 3; ++k2)
                for (int k3 = 0; k3 < 3; ++k3)
                    expected.push_back(-spin + rc.h_rc(k1, k1).real() +
                                       rc.h_rc(k2, k2).real() + rc.h_rc(k3, k3).real());
    std::sort(expected.begin(), expected.end());
    for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i)
        CHECK(s.eigenvalues[i] == doctest::Approx(expected[i]).epsilon(1e-12));
}

TEST_CASE("three-bath hamiltonian is hermitian to rounding") {
    ModelConfig cfg;
    cfg.topology = Topology::ThreeBath;
    cfg.bath.alpha = 0.1;
    cfg.bath.omega0 = 2.0;
    cfg.n_max = 2;
    CHECK(hermiticity_error(build_hamiltonian(cfg)) <= 1e-14);
}

TEST_CASE("model validation rejects oversized and undersized configs") {
    ModelConfig cfg;
    cfg.n_max = 1;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    cfg.n_max = 28; // 2 * 28^3 = 43904 > 40000
    CHECK_THROWS_AS(cfg.validate(), SizingError);
    cfg.topology = Topology::SingleBath;
    cfg.n_max = 28;
    CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("circular-basis hamiltonian commutes with the conserved M") {
    ModelConfig cfg;
    cfg.topology = Topology::ThreeBath;
    cfg.bath.alpha = 3.0;
    cfg.bath.omega0 = 2.0;
    cfg.n_max = 3;
    const int n = cfg.n_max;
    const ComplexMatrix h = build_hamiltonian_circular(cfg);

    const SpinOperators s = spin_half_operators();
    ComplexMatrix num = ComplexMatrix::Zero(n, n);
    for (int k = 0; k < n; ++k) num(k, k) = k;
    const ComplexMatrix in = ComplexMatrix::Identity(n, n);
    const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
    const ComplexMatrix m_op = kron(kron(kron(s.sz, in), in), in) +
                               kron(kron(kron(i2, num), in), in) -
                               kron(kron(kron(i2, in), num), in);
    CHECK((h * m_op - m_op * h).cwiseAbs().maxCoeff() <= 1e-12);
}
