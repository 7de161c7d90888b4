#include "mfspin/linalg.hpp"
#include "mfspin/errors.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace mfspin {

double hermiticity_error(const ComplexMatrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b, Eigen::Index max_dim) {
    const Eigen::Index rows = a.rows() * b.rows();
    const Eigen::Index cols = a.cols() * b.cols();
    if (rows > max_dim || cols > max_dim) {
        std::ostringstream msg;
        msg << "kron: result dimension " << rows << "x" << cols << " exceeds cap " << max_dim;
        throw SizingError(msg.str());
    }
    ComplexMatrix out(rows, cols);
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Spectrum eigh(const ComplexMatrix& h) {
    if (h.rows() != h.cols()) throw ValidationError("eigh: matrix must be square");
    const double scale = h.cwiseAbs().maxCoeff();
    const double asym = hermiticity_error(h);
    if (scale > 0.0 && asym > kHermitianTol * scale) {
        std::ostringstream msg;
        msg << "eigh: input not Hermitian, asymmetry " << asym << " vs tolerance "
            << kHermitianTol * scale;
        throw ValidationError(msg.str());
    }
    ComplexMatrix sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
    if (solver.info() != Eigen::Success)
        throw NumericError("eigh: eigensolver failed to converge after internal iteration cap");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : mat_(std::move(m)) {
    if (mat_.rows() != mat_.cols() || mat_.rows() < 1)
        throw ValidationError("DensityMatrix: matrix must be square and non-empty");
    const double scale = std::max(mat_.cwiseAbs().maxCoeff(), 1.0);
    if (hermiticity_error(mat_) > kHermitianTol * scale)
        throw ValidationError("DensityMatrix: matrix not Hermitian");
    const double tr = mat_.trace().real();
    if (std::abs(tr - 1.0) > 1e-10) {
        std::ostringstream msg;
        msg << "DensityMatrix: trace " << tr << " differs from 1 beyond 1e-10";
        throw ValidationError(msg.str());
    }
}

double DensityMatrix::purity() const {
    return (mat_ * mat_).trace().real();
}

void DensityMatrix::validate() const {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(mat_, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw NumericError("DensityMatrix::validate: eigensolver failure");
    const double min_eig = solver.eigenvalues().minCoeff();
    if (min_eig < -1e-10) {
        std::ostringstream msg;
        msg << "DensityMatrix: negative eigenvalue " << min_eig;
        throw ValidationError(msg.str());
    }
    const double p = purity();
    const double lower = 1.0 / static_cast<double>(dim()) - 1e-9;
    if (p < lower || p > 1.0 + 1e-9) {
        std::ostringstream msg;
        msg << "DensityMatrix: purity " << p << " outside [" << lower << ", 1]";
        throw ValidationError(msg.str());
    }
}

DensityMatrix gibbs_density(const Spectrum& spec, double beta) {
    if (std::isnan(beta) || beta < 0.0)
        throw ValidationError("gibbs_density: beta must be >= 0 or +infinity");
    const Eigen::Index n = spec.eigenvalues.size();
    const double e_min = spec.eigenvalues.minCoeff();
    const double e_max = spec.eigenvalues.maxCoeff();
    RealVector weights(n);
    if (std::isinf(beta)) {
        // uniform mixture over the ground eigenspace
        const double window = 1e-10 * (e_max - e_min);
        for (Eigen::Index k = 0; k < n; ++k)
            weights[k] = (spec.eigenvalues[k] - e_min <= window) ? 1.0 : 0.0;
    } else {
        for (Eigen::Index k = 0; k < n; ++k)
            weights[k] = std::exp(-beta * (spec.eigenvalues[k] - e_min));
    }
    weights /= weights.sum();
    ComplexMatrix rho = spec.eigenvectors * weights.asDiagonal() *
                        spec.eigenvectors.adjoint();
    return DensityMatrix(std::move(rho));
}

DensityMatrix partial_trace_keep_first(const DensityMatrix& rho,
                                       const std::vector<Eigen::Index>& dims) {
    if (dims.empty()) throw ValidationError("partial_trace_keep_first: dims empty");
    Eigen::Index prod = 1;
    for (Eigen::Index d : dims) {
        if (d < 1) throw ValidationError("partial_trace_keep_first: factor dims must be >= 1");
        prod *= d;
    }
    if (prod != rho.dim()) {
        std::ostringstream msg;
        msg << "partial_trace_keep_first: factor dims product " << prod
            << " does not match state dim " << rho.dim();
        throw ValidationError(msg.str());
    }
    const Eigen::Index keep = dims[0];
    const Eigen::Index rest = prod / keep;
    ComplexMatrix out = ComplexMatrix::Zero(keep, keep);
    const ComplexMatrix& m = rho.matrix();
    for (Eigen::Index s = 0; s < keep; ++s)
        for (Eigen::Index sp = 0; sp < keep; ++sp) {
            Complex sum = 0.0;
            for (Eigen::Index r = 0; r < rest; ++r) sum += m(s * rest + r, sp * rest + r);
            out(s, sp) = sum;
        }
    return DensityMatrix(std::move(out));
}

} // namespace mfspin
