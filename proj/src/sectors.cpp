#include "mfspin/sectors.hpp"
#include "mfspin/errors.hpp"
#include "mfspin/model.hpp"

#include <algorithm>
#include <cmath>

namespace mfspin::sectors {

namespace {

inline int state_key(int n, int spin_up, int np, int nm, int nz) {
    return ((spin_up * n + np) * n + nm) * n + nz;
}

} // namespace

ThreeBathSectors::ThreeBathSectors(int n_max, double omega0, double lambda) {
    if (n_max < 2) throw ValidationError("ThreeBathSectors: n_max must be >= 2");
    if (!(omega0 > 0.0)) throw ValidationError("ThreeBathSectors: omega0 must be > 0");
    const int n = n_max;

    // 2M = (+-1) + 2 (n_plus - n_minus) runs over odd integers.
    const int m2_min = -1 - 2 * (n - 1);
    const int m2_count = 2 * n;
    sectors_.assign(m2_count, Sector{});
    for (int i = 0; i < m2_count; ++i) sectors_[i].twice_m = m2_min + 2 * i;

    std::vector<int> local_index(2 * n * n * n, -1);
    for (int spin_up = 1; spin_up >= 0; --spin_up)
        for (int np = 0; np < n; ++np)
            for (int nm = 0; nm < n; ++nm)
                for (int nz = 0; nz < n; ++nz) {
                    const int m2 = (spin_up ? 1 : -1) + 2 * (np - nm);
                    Sector& sec = sectors_[(m2 - m2_min) / 2];
                    local_index[state_key(n, spin_up, np, nm, nz)] =
                        static_cast<int>(sec.states.size());
                    sec.states.push_back({static_cast<std::uint8_t>(spin_up),
                                          static_cast<std::uint8_t>(np),
                                          static_cast<std::uint8_t>(nm),
                                          static_cast<std::uint8_t>(nz)});
                }

    const double flip = lambda / (2.0 * std::sqrt(omega0));
    const double xz_scale = lambda / std::sqrt(2.0 * omega0);
    bool first = true;
    for (Sector& sec : sectors_) {
        const int m = static_cast<int>(sec.states.size());
        RealMatrix h = RealMatrix::Zero(m, m);
        for (int i = 0; i < m; ++i) {
            const BasisState& st = sec.states[i];
            const double sz = st.spin_up ? 0.5 : -0.5;
            h(i, i) = -units::omega_larmor * sz +
                      omega0 * (st.n_plus + st.n_minus + st.n_z + 1.5);
            if (st.n_z + 1 < n) {
                const int j = local_index[state_key(n, st.spin_up, st.n_plus, st.n_minus,
                                                    st.n_z + 1)];
                const double v = xz_scale * sz * std::sqrt(st.n_z + 1.0);
                h(i, j) += v;
                h(j, i) += v;
            }
            if (!st.spin_up) {
                // S+ a+ : |down, np, nm, nz> -> |up, np-1, nm, nz>
                if (st.n_plus >= 1) {
                    const int j = local_index[state_key(n, 1, st.n_plus - 1, st.n_minus,
                                                        st.n_z)];
                    const double v = flip * std::sqrt(static_cast<double>(st.n_plus));
                    h(i, j) += v;
                    h(j, i) += v;
                }
                // S+ a-^dag : |down, np, nm, nz> -> |up, np, nm+1, nz>
                if (st.n_minus + 1 < n) {
                    const int j = local_index[state_key(n, 1, st.n_plus, st.n_minus + 1,
                                                        st.n_z)];
                    const double v = flip * std::sqrt(st.n_minus + 1.0);
                    h(i, j) += v;
                    h(j, i) += v;
                }
            }
        }
        Eigen::SelfAdjointEigenSolver<RealMatrix> solver(h);
        if (solver.info() != Eigen::Success)
            throw NumericError("ThreeBathSectors: sector eigensolver failed");
        sec.eigenvalues = solver.eigenvalues();
        sec.eigenvectors = solver.eigenvectors();
        const double lo = sec.eigenvalues.minCoeff();
        const double hi = sec.eigenvalues.maxCoeff();
        if (first || lo < e_min_) e_min_ = lo;
        if (first || hi > e_max_) e_max_ = hi;
        first = false;
    }
}

RealVector ThreeBathSectors::merged_eigenvalues() const {
    std::vector<double> all;
    for (const Sector& sec : sectors_)
        all.insert(all.end(), sec.eigenvalues.data(),
                   sec.eigenvalues.data() + sec.eigenvalues.size());
    std::sort(all.begin(), all.end());
    return Eigen::Map<const RealVector>(all.data(), static_cast<Eigen::Index>(all.size()));
}

DensityMatrix ThreeBathSectors::spin_state(double beta) const {
    if (std::isnan(beta) || beta < 0.0)
        throw ValidationError("ThreeBathSectors: beta must be >= 0 or +infinity");
    const bool ground_only = std::isinf(beta);
    const double window = 1e-10 * (e_max_ - e_min_);
    double z = 0.0;
    double pop_up = 0.0;
    for (const Sector& sec : sectors_) {
        const int m = static_cast<int>(sec.states.size());
        for (int k = 0; k < m; ++k) {
            double w;
            if (ground_only) {
                if (sec.eigenvalues[k] - e_min_ > window) continue;
                w = 1.0;
            } else {
                w = std::exp(-beta * (sec.eigenvalues[k] - e_min_));
                if (w == 0.0) continue;
            }
            double up = 0.0;
            for (int i = 0; i < m; ++i)
                if (sec.states[i].spin_up) {
                    const double c = sec.eigenvectors(i, k);
                    up += c * c;
                }
            z += w;
            pop_up += w * up;
        }
    }
    const double p_up = pop_up / z;
    ComplexMatrix rho = ComplexMatrix::Zero(2, 2);
    rho(0, 0) = p_up;
    rho(1, 1) = 1.0 - p_up;
    return DensityMatrix(std::move(rho));
}

} // namespace mfspin::sectors
