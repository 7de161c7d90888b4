#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace mfspin {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Tensor factors flatten left to right, leftmost slowest: the composite
/// row index of kron(a, b) is i*b.rows() + k. Every routine in this
/// library (kron, partial traces, Hamiltonian assembly) uses this order.
inline constexpr Eigen::Index kDefaultMaxHilbertDim = 40000;

/// Relative tolerance below which a matrix counts as Hermitian.
inline constexpr double kHermitianTol = 1e-12;

/// max |M - M^dagger| over entries.
double hermiticity_error(const ComplexMatrix& m);

/// Kronecker product, composite index (i*b.rows + k, j*b.cols + l).
/// Throws SizingError if the result would exceed max_dim rows or columns.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b,
                   Eigen::Index max_dim = kDefaultMaxHilbertDim);

/// Eigendecomposition of a Hermitian matrix.
struct Spectrum {
    RealVector eigenvalues;     // ascending
    ComplexMatrix eigenvectors; // columns, orthonormal
};

/// Hermitian eigendecomposition. Input asymmetry below tolerance is
/// symmetrized away ((H + H^dagger)/2); beyond it the call is rejected.
Spectrum eigh(const ComplexMatrix& h);

/// Positive, unit-trace state. Construction checks Hermiticity and trace;
/// validate() additionally checks positivity and the purity window.
class DensityMatrix {
public:
    explicit DensityMatrix(ComplexMatrix m);

    const ComplexMatrix& matrix() const { return mat_; }
    Eigen::Index dim() const { return mat_.rows(); }

    double purity() const; // tr(rho^2)

    /// Full invariant suite: Hermitian, trace 1 (1e-10), min eigenvalue
    /// >= -1e-10, purity within [1/dim - 1e-9, 1 + 1e-9].
    void validate() const;

private:
    ComplexMatrix mat_;
};

/// Boltzmann state exp(-beta H)/Z from a spectrum. beta may be
/// +infinity, which selects the uniform mixture over the ground
/// eigenspace (degeneracy window 1e-10 * spectral range).
DensityMatrix gibbs_density(const Spectrum& spec, double beta);

/// Trace out every factor except the first. dims lists the tensor factor
/// dimensions whose product must equal rho.dim; dims[0] is kept.
DensityMatrix partial_trace_keep_first(const DensityMatrix& rho,
                                       const std::vector<Eigen::Index>& dims);

} // namespace mfspin
