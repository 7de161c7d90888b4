#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mfspin/equilibrium.hpp"
#include "mfspin/errors.hpp"
#include "mfspin/sectors.hpp"

#include <cmath>

using namespace mfspin;

namespace {

ModelConfig reference_config(Topology topo, double alpha) {
    ModelConfig cfg;
    cfg.topology = topo;
    cfg.bath.omega0 = 2.0;
    cfg.bath.gamma = 0.6;
    cfg.bath.alpha = alpha;
    cfg.n_max = 6;
    return cfg;
}

} // namespace

TEST_CASE("spin expectations of reference states") {
    ComplexMatrix up = ComplexMatrix::Zero(2, 2);
    up(0, 0) = 1.0;
    SpinExpectations e = spin_expectations(DensityMatrix(up));
    CHECK(e.sx == doctest::Approx(0.0));
    CHECK(e.sy == doctest::Approx(0.0));
    CHECK(e.sz == doctest::Approx(1.0));
    CHECK(e.purity == doctest::Approx(1.0));
    CHECK(e.entropy == doctest::Approx(0.0));

    e = spin_expectations(DensityMatrix(0.5 * ComplexMatrix::Identity(2, 2)));
    CHECK(e.magnitude == doctest::Approx(0.0));
    CHECK(e.purity == doctest::Approx(0.5));
    CHECK(e.entropy == doctest::Approx(std::log(2.0)));

    ComplexMatrix mixed = ComplexMatrix::Zero(2, 2);
    mixed(0, 0) = 0.75;
    mixed(1, 1) = 0.25;
    e = spin_expectations(DensityMatrix(mixed));
    CHECK(e.sz == doctest::Approx(0.5));
    CHECK(e.purity == doctest::Approx(0.625));
    CHECK(e.entropy == doctest::Approx(0.5623351446188083).epsilon(1e-10));
}

TEST_CASE("entanglement entropy basics and positivity guard") {
    ComplexMatrix skewed = ComplexMatrix::Zero(2, 2);
    skewed(0, 0) = 0.9;
    skewed(1, 1) = 0.1;
    CHECK(entanglement_entropy(DensityMatrix(skewed)) ==
          doctest::Approx(0.32508297339144826).epsilon(1e-12));

    ComplexMatrix negative = ComplexMatrix::Zero(2, 2);
    negative(0, 0) = 1.0 + 5e-7;
    negative(1, 1) = -5e-7;
    CHECK_THROWS_AS((void)entanglement_entropy(DensityMatrix(negative)), ValidationError);
}

TEST_CASE("bare gibbs spin values") {
    CHECK(gibbs_spin_sz(0.0) == 1.0);
    CHECK(gibbs_spin_sz(1e9) <= 1e-9);
    CHECK(gibbs_spin_sz(0.5) == doctest::Approx(std::tanh(1.0)).epsilon(1e-14));
    CHECK_THROWS_AS((void)gibbs_spin_sz(-0.1), ValidationError);

    const SpinExpectations e = spin_expectations(gibbs_spin_state(0.5));
    CHECK(e.sz == doctest::Approx(std::tanh(1.0)).epsilon(1e-12));
    CHECK(e.sx == doctest::Approx(0.0));
}

TEST_CASE("decoupling limit reproduces the bare spin state") {
    for (Topology topo : {Topology::ThreeBath, Topology::SingleBath}) {
        ModelConfig cfg = reference_config(topo, 1e-8);
        cfg.n_max = topo == Topology::ThreeBath ? 6 : 16;
        for (double t : {0.3, 1.0}) {
            const SpinExpectations e = spin_expectations(qmf_spin_state(cfg, t));
            CHECK(std::abs(e.sz - std::tanh(0.5 / t)) <= 1e-6);
            CHECK(std::abs(e.sx) <= 1e-6);
            CHECK(std::abs(e.sy) <= 1e-6);
        }
    }
}

TEST_CASE("infinite temperature limit is maximally mixed") {
    ModelConfig cfg = reference_config(Topology::ThreeBath, 10.0);
    const SpinExpectations e = spin_expectations(qmf_spin_state(cfg, 1e4));
    CHECK(e.magnitude <= 1e-3);
}

TEST_CASE("converge_fock settles immediately when decoupled") {
    ModelConfig cfg = reference_config(Topology::ThreeBath, 1e-8);
    const FockPolicy policy = FockPolicy::defaults(Topology::ThreeBath);
    auto [state, report] = converge_fock(cfg, 0.7, policy);
    CHECK(report.converged);
    CHECK(report.n_max_used == policy.n_start + 2);
    REQUIRE(report.deltas.size() == 1);
    CHECK(report.deltas[0] <= 1e-9);
    state.validate();
}

TEST_CASE("three-bath strong coupling converges at the recorded cutoff") {
    ModelConfig cfg = reference_config(Topology::ThreeBath, 10.0);
    const FockPolicy policy = FockPolicy::defaults(Topology::ThreeBath);
    auto [state, report] = converge_fock(cfg, 0.0, policy);
    CHECK(report.converged);
    CHECK(report.n_max_used <= 14);
    // regression baseline for the strong-coupling reference parameters
    CHECK(report.n_max_used == 8);

    // self-convergence oracle two levels above the recorded cutoff
    const SpinExpectations at_n = spin_expectations(state);
    ModelConfig refined = cfg;
    refined.n_max = report.n_max_used + 2;
    const SpinExpectations at_np2 = spin_expectations(qmf_spin_state(refined, 0.0));
    CHECK(std::abs(at_n.sz - at_np2.sz) <= 2.0 * policy.tol);
    CHECK(std::abs(at_n.entropy - at_np2.entropy) <= 2.0 * policy.tol);
}

TEST_CASE("single-bath needs a larger per-mode cutoff and stays nearly pure") {
    ModelConfig three = reference_config(Topology::ThreeBath, 10.0);
    auto [s3, r3] = converge_fock(three, 0.0, FockPolicy::defaults(Topology::ThreeBath));

    ModelConfig single = reference_config(Topology::SingleBath, 10.0);
    FockPolicy policy = FockPolicy::defaults(Topology::SingleBath);
    policy.tol = 1e-6;
    auto [s1, r1] = converge_fock(single, 0.0, policy);
    CHECK(r1.converged);
    CHECK(r1.n_max_used > r3.n_max_used);
    const SpinExpectations e = spin_expectations(s1);
    CHECK(e.magnitude * e.magnitude >= 0.9);
    CHECK(std::abs(e.sx - e.sy) <= 1e-8);

    // the x <-> y exchange symmetry of the coupling direction holds at any t
    single.n_max = r1.n_max_used;
    for (double t : {0.3, 1.2}) {
        const SpinExpectations warm = spin_expectations(qmf_spin_state(single, t));
        CHECK(std::abs(warm.sx - warm.sy) <= 1e-8);
    }
}

TEST_CASE("converge_fock raises a report-carrying error at the cap") {
    ModelConfig cfg = reference_config(Topology::ThreeBath, 10.0);
    FockPolicy policy;
    policy.n_start = 2;
    policy.n_cap = 4;
    policy.tol = 1e-12;
    try {
        (void)converge_fock(cfg, 0.0, policy);
        FAIL("expected FockConvergenceError");
    } catch (const FockConvergenceError& err) {
        CHECK_FALSE(err.report.converged);
        CHECK(err.report.n_max_used == 4);
        CHECK(err.report.deltas.size() == 1);
    }
}

TEST_CASE("sector and dense pipelines agree after fock convergence") {
    // moderate coupling: the Cartesian and circular truncations must meet
    // at the same limit even though they differ level by level
    ModelConfig cfg = reference_config(Topology::ThreeBath, 0.5);
    FockPolicy policy = FockPolicy::defaults(Topology::ThreeBath);
    policy.tol = 1e-7;
    auto [state, report] = converge_fock(cfg, 0.4, policy);
    const SpinExpectations fast = spin_expectations(state);

    ModelConfig dense = cfg;
    dense.n_max = 10;
    const SpinExpectations slow = spin_expectations(qmf_spin_state_dense(dense, 0.4));
    CHECK(std::abs(fast.sz - slow.sz) <= 1e-5);
    CHECK(std::abs(fast.entropy - slow.entropy) <= 1e-5);
}

TEST_CASE("three-bath transverse components vanish identically") {
    ModelConfig cfg = reference_config(Topology::ThreeBath, 10.0);
    for (double t : {0.0, 0.5, 2.0}) {
        const SpinExpectations e = spin_expectations(qmf_spin_state(cfg, t));
        CHECK(std::abs(e.sx) <= 1e-6);
        CHECK(std::abs(e.sy) <= 1e-6);
        CHECK(std::abs(e.purity - 0.5 * (1.0 + e.magnitude * e.magnitude)) <= 1e-9);
    }
}

TEST_CASE("sector solver matches the dense circular route exactly") {
    ModelConfig cfg = reference_config(Topology::ThreeBath, 10.0);
    cfg.n_max = 4;
    const Spectrum spec = eigh(build_hamiltonian_circular(cfg));
    sectors::ThreeBathSectors solver(cfg.n_max, cfg.bath.omega0, cfg.bath.lambda());
    const RealVector merged = solver.merged_eigenvalues();
    REQUIRE(merged.size() == spec.eigenvalues.size());
    const double range = spec.eigenvalues.maxCoeff() - spec.eigenvalues.minCoeff();
    CHECK((merged - spec.eigenvalues).cwiseAbs().maxCoeff() <= 1e-10 * range);

    for (double t : {0.0, 0.7}) {
        const double beta = t == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / t;
        const DensityMatrix dense = partial_trace_keep_first(
            gibbs_density(spec, beta), {2, cfg.n_max, cfg.n_max, cfg.n_max});
        const DensityMatrix fast = solver.spin_state(beta);
        CHECK((dense.matrix() - fast.matrix()).cwiseAbs().maxCoeff() <= 1e-12);
    }
}
