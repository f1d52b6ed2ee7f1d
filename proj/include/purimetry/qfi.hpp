#ifndef PURIMETRY_QFI_HPP
#define PURIMETRY_QFI_HPP

#include "purimetry/spin_space.hpp"
#include "purimetry/state_space.hpp"
#include "purimetry/types.hpp"

namespace purimetry {

/// F_AB split by the coherence order of rho_A that feeds each term:
/// f0 from the diagonal, f1 from first, f2 from second off-diagonals.
struct QfiBreakdown {
    double f0 = 0;
    double f1 = 0;  // <= 0 by construction
    double f2 = 0;
    double total = 0;
};

struct CoherenceSpectrum {
    std::vector<int> orders;
    std::vector<Complex> values;
};

/// QFI of a mixed state for generator G:
///   F = 2 sum_{i,j} (l_i - l_j)^2 / (l_i + l_j) |<e_i|G|e_j>|^2,
/// terms with l_i + l_j <= 1e-12 omitted (their mass is bounded by the
/// threshold itself).
double qfi_mixed(const DensityMatrix& rho, const OperatorMatrix& generator);

/// QFI of any purification: 4 (Tr[G^2 rho] - Tr[G rho]^2). Eigen-free.
double qfi_purification(const DensityMatrix& rho, const OperatorMatrix& generator);

/// Purification QFI for the Mach-Zehnder generator Jy, resolved as
///   f0 = N(N+2)/2 - 2<Jz^2>, f1 = -<i(J+ - J-)>^2, f2 = -<J+^2 + J-^2>.
QfiBreakdown qfi_breakdown(const DensityMatrix& rho);

/// C_k = exp[-|beta|^2 (1 - e^(-i k gt))], the coherence left at offset k
/// after dephasing against a coherent auxiliary mode.
Complex coherence_dephasing(int order, double beta_sq, double gt);

/// Convenience table of C_k for k = 0..max_order.
CoherenceSpectrum coherence_spectrum(double beta_sq, double gt, int max_order);

/// Closed-form F_AB for a spin coherent probe |alpha(theta, azimuth)> dephased
/// for a time gt against a coherent mode of mean number beta_sq:
///   f0 = N (1 + (N-1)/2 sin^2 theta)
///   f1 = -N^2 sin^2 theta sin^2(beta_sq sin gt + azimuth) e^(-4 beta_sq sin^2(gt/2))
///   f2 = N(1-N)/2 sin^2 theta cos(beta_sq sin 2gt + 2 azimuth) e^(-2 beta_sq sin^2 gt)
QfiBreakdown analytic_qfi_dephasing(const SpinSpace& space, double theta, double azimuth,
                                    double beta_sq, double gt);

/// QFI of a bare spin coherent state for Jy: 2j (1 - sin^2 theta sin^2 azimuth),
/// never above N.
double qfi_spin_coherent(const SpinSpace& space, double theta, double azimuth);

}  // namespace purimetry

#endif
