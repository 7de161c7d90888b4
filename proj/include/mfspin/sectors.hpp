#pragma once

#include "mfspin/linalg.hpp"

#include <cstdint>
#include <vector>

namespace mfspin::sectors {

/// Block solver for the three-bath augmented Hamiltonian in the
/// circular-mode basis |spin, n_plus, n_minus, n_z>. The Hamiltonian
/// commutes with M = Sz + N_plus - N_minus, so it splits into real
/// symmetric blocks labelled by 2M; each block is diagonalized densely.
/// The reduced spin state assembled from any eigenvector is diagonal:
/// up and down amplitudes live on disjoint oscillator states within a
/// sector, so the spin coherences vanish identically.
struct BasisState {
    std::uint8_t spin_up; // 1 = up (Sz = +1/2), 0 = down
    std::uint8_t n_plus;
    std::uint8_t n_minus;
    std::uint8_t n_z;
};

struct Sector {
    int twice_m = 0;
    std::vector<BasisState> states;
    RealVector eigenvalues;
    RealMatrix eigenvectors;
};

class ThreeBathSectors {
public:
    /// Builds and diagonalizes every sector of the n_max-truncated model.
    ThreeBathSectors(int n_max, double omega0, double lambda);

    const std::vector<Sector>& blocks() const { return sectors_; }
    double ground_energy() const { return e_min_; }

    /// All eigenvalues across sectors, ascending.
    RealVector merged_eigenvalues() const;

    /// Reduced 2x2 spin state of the Gibbs ensemble at inverse
    /// temperature beta (+infinity selects the ground eigenspace with a
    /// 1e-10 * spectral-range degeneracy window).
    DensityMatrix spin_state(double beta) const;

private:
    std::vector<Sector> sectors_;
    double e_min_ = 0.0;
    double e_max_ = 0.0;
};

} // namespace mfspin::sectors
