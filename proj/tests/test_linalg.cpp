#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mfspin/errors.hpp"
#include "mfspin/linalg.hpp"
#include "mfspin/model.hpp"

#include <cmath>
#include <random>

using namespace mfspin;

namespace {

ComplexMatrix random_complex(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    ComplexMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = Complex(dist(rng), dist(rng));
    return m;
}

} // namespace

TEST_CASE("kron identity and pauli expansion") {
    const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
    CHECK((kron(i2, i2) - ComplexMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);

    const SpinOperators s = spin_half_operators();
    const ComplexMatrix k = kron(s.sz, i2);
    const double expected[] = {0.5, 0.5, -0.5, -0.5};
    for (int i = 0; i < 4; ++i) CHECK(k(i, i).real() == doctest::Approx(expected[i]));
    CHECK(k.cwiseAbs().sum() == doctest::Approx(2.0));
}

TEST_CASE("kron matches the index formula on random input") {
    std::mt19937_64 rng(7);
    const ComplexMatrix a = random_complex(rng, 3, 3);
    const ComplexMatrix b = random_complex(rng, 4, 4);
    const ComplexMatrix k = kron(a, b);
    REQUIRE(k.rows() == 12);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int p = 0; p < 4; ++p)
                for (int q = 0; q < 4; ++q)
                    CHECK(std::abs(k(i * 4 + p, j * 4 + q) - a(i, j) * b(p, q)) <= 1e-15);
}

TEST_CASE("kron rejects results beyond the dimension cap") {
    const ComplexMatrix a = ComplexMatrix::Identity(200, 200);
    const ComplexMatrix b = ComplexMatrix::Identity(201, 201);
    CHECK_THROWS_AS((void)kron(a, b), SizingError);
}

TEST_CASE("eigh on diagonal and pauli input") {
    ComplexMatrix d = ComplexMatrix::Zero(3, 3);
    d(0, 0) = 3.0;
    d(1, 1) = 1.0;
    d(2, 2) = 2.0;
    const Spectrum s = eigh(d);
    CHECK(s.eigenvalues[0] == doctest::Approx(1.0));
    CHECK(s.eigenvalues[1] == doctest::Approx(2.0));
    CHECK(s.eigenvalues[2] == doctest::Approx(3.0));

    const SpinOperators ops = spin_half_operators();
    const Spectrum sx = eigh((2.0 * ops.sx).eval());
    CHECK(sx.eigenvalues[0] == doctest::Approx(-1.0));
    CHECK(sx.eigenvalues[1] == doctest::Approx(1.0));
}

TEST_CASE("eigh enforces hermiticity and unitarity") {
    std::mt19937_64 rng(11);
    ComplexMatrix g = random_complex(rng, 5, 5);
    CHECK_THROWS_AS((void)eigh(g), ValidationError);

    const ComplexMatrix h = 0.5 * (g + g.adjoint()).eval();
    const Spectrum s = eigh(h);
    const ComplexMatrix gram = s.eigenvectors.adjoint() * s.eigenvectors;
    CHECK((gram - ComplexMatrix::Identity(5, 5)).cwiseAbs().maxCoeff() <= 1e-10);
    const ComplexMatrix rebuilt = s.eigenvectors *
                                  s.eigenvalues.asDiagonal().toDenseMatrix().cast<Complex>() *
                                  s.eigenvectors.adjoint();
    const double range = s.eigenvalues.maxCoeff() - s.eigenvalues.minCoeff();
    CHECK((rebuilt - h).cwiseAbs().maxCoeff() <= 1e-9 * range);
}

TEST_CASE("gibbs_density limits") {
    ComplexMatrix d = ComplexMatrix::Zero(4, 4);
    for (int i = 0; i < 4; ++i) d(i, i) = i;
    const Spectrum s = eigh(d);

    const DensityMatrix hot = gibbs_density(s, 0.0);
    CHECK((hot.matrix() - 0.25 * ComplexMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() <= 1e-14);

    const DensityMatrix cold = gibbs_density(s, std::numeric_limits<double>::infinity());
    CHECK(cold.matrix()(0, 0).real() == doctest::Approx(1.0));
    CHECK(cold.purity() == doctest::Approx(1.0));

    ComplexMatrix two = ComplexMatrix::Zero(2, 2);
    two(1, 1) = 1.0;
    const DensityMatrix boltz = gibbs_density(eigh(two), 1.0);
    const double z = 1.0 + std::exp(-1.0);
    CHECK(boltz.matrix()(0, 0).real() == doctest::Approx(1.0 / z));
    CHECK(boltz.matrix()(1, 1).real() == doctest::Approx(std::exp(-1.0) / z));

    CHECK_THROWS_AS((void)gibbs_density(s, -0.5), ValidationError);
}

TEST_CASE("gibbs_density at infinite beta spreads over a degenerate ground space") {
    ComplexMatrix d = ComplexMatrix::Zero(3, 3);
    d(2, 2) = 5.0;
    const DensityMatrix rho = gibbs_density(eigh(d), std::numeric_limits<double>::infinity());
    CHECK(rho.matrix()(0, 0).real() == doctest::Approx(0.5));
    CHECK(rho.matrix()(1, 1).real() == doctest::Approx(0.5));
    CHECK(rho.matrix()(2, 2).real() == doctest::Approx(0.0));
}

TEST_CASE("partial trace recovers product factors and reduces Bell pairs") {
    std::mt19937_64 rng(13);
    ComplexMatrix ga = random_complex(rng, 2, 2);
    ComplexMatrix gb = random_complex(rng, 3, 3);
    ComplexMatrix a = ga * ga.adjoint();
    a /= a.trace().real();
    ComplexMatrix b = gb * gb.adjoint();
    b /= b.trace().real();
    const DensityMatrix prod{kron(a, b)};
    const DensityMatrix red = partial_trace_keep_first(prod, {2, 3});
    CHECK((red.matrix() - a).cwiseAbs().maxCoeff() <= 1e-12);

    ComplexMatrix bell = ComplexMatrix::Zero(4, 4);
    for (int i : {0, 3})
        for (int j : {0, 3}) bell(i, j) = 0.5;
    const DensityMatrix reduced = partial_trace_keep_first(DensityMatrix(bell), {2, 2});
    CHECK((reduced.matrix() - 0.5 * ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() <=
          1e-14);
}

TEST_CASE("partial trace preserves trace and positivity on random states") {
    std::mt19937_64 rng(17);
    for (int rep = 0; rep < 5; ++rep) {
        ComplexMatrix g = random_complex(rng, 18, 18);
        ComplexMatrix rho = g * g.adjoint();
        rho /= rho.trace().real();
        const DensityMatrix full{rho};
        const DensityMatrix red = partial_trace_keep_first(full, {2, 3, 3});
        CHECK(std::abs(red.matrix().trace().real() - 1.0) <= 1e-12);
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(red.matrix(), Eigen::EigenvaluesOnly);
        CHECK(es.eigenvalues().minCoeff() >= -1e-10);
        red.validate();
    }
    const DensityMatrix some{0.5 * ComplexMatrix::Identity(2, 2)};
    CHECK_THROWS_AS((void)partial_trace_keep_first(some, {2, 2}), ValidationError);
}

TEST_CASE("density matrix construction rejects bad input") {
    CHECK_THROWS_AS(DensityMatrix{ComplexMatrix::Identity(2, 2)}, ValidationError); // trace 2
    ComplexMatrix skew = ComplexMatrix::Zero(2, 2);
    skew(0, 0) = 0.5;
    skew(1, 1) = 0.5;
    skew(0, 1) = Complex(0.0, 0.3);
    skew(1, 0) = Complex(0.0, 0.3); // not Hermitian: conj should flip sign
    CHECK_THROWS_AS(DensityMatrix{skew}, ValidationError);
}
