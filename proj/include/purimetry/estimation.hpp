#ifndef PURIMETRY_ESTIMATION_HPP
#define PURIMETRY_ESTIMATION_HPP

#include "purimetry/dynamics.hpp"
#include "purimetry/joint_state.hpp"
#include "purimetry/state_space.hpp"
#include "purimetry/types.hpp"

#include <span>
#include <variant>
#include <vector>

namespace purimetry {

/// Moments of a measurement signal at one interferometer phase, plus the
/// propagated sensitivity Delta-phi = sqrt(Var) / |d<S>/dphi|. At operating
/// points where both the variance and the slope vanish identically (exact
/// signals at phi = 0) the removable-singularity limit 1/sqrt(4<Jy^2>) is
/// reported; a vanishing slope with genuine variance yields +inf.
struct SignalStats {
    double phase = 0;
    double mean = 0;
    double second_moment = 0;
    double variance = 0;
    double dmean_dphase = 0;
    double delta_phi = 0;
};

/// Matrix moments of rho_A that enter the Dicke-mixture signal statistics.
struct SignalMoments {
    double jz2 = 0;       // <Jz^2>
    double jx2 = 0;       // <Jx^2>
    double jy2 = 0;       // <Jy^2>
    double jz4 = 0;       // <Jz^4>
    double jx4 = 0;       // <Jx^4>
    double zx_sym = 0;    // <Jz^2 Jx^2 + Jx^2 Jz^2 + 4 Jz Jx Jx Jz>
    double zxy_comm = 0;  // <i (Jz Jx Jy - Jy Jx Jz)>
};

SignalMoments signal_moments(const DensityMatrix& rho);

/// Statistics of S = (cos(phi) Jz - sin(phi) Jx - S_B)^2 for a purification
/// whose auxiliary readout satisfies S_B|Psi> = Jz|Psi>, in the closed form
/// valid for Dicke-diagonal rho_A. The slope is the analytic derivative.
SignalStats exact_dicke_stats(const DensityMatrix& rho, double phase);
SignalStats exact_dicke_stats(const SignalMoments& m, double phase);

/// Statistics of the parity readout S = U_phi^dag (Pi_A Pi_B) U_phi on a
/// two-branch (pseudo-spin-cat) purification. Pi_B is the branch-sign
/// observable with Pi_B|B_m> = (-1)^m |B_m>, evaluated exactly through the
/// branch overlap algebra; <S^2> = 1 identically.
SignalStats exact_parity_stats(const JointState& joint, double phase);

/// Statistics of S = (cos(phi) Jz - sin(phi) Jx - Y_B / (2 beta gt))^2 with
/// Y_B = i(b - b^dag), evaluated exactly on the windowed Fock grid.
SignalStats approx_homodyne_stats(const JointState& joint, double phase, double beta, double gt);

/// Linearized sensitivity of the homodyne signal: the Dicke-mixture variance
/// and slope plus the leading correction terms in 1/beta and 1/(2 beta gt).
/// Returns Delta-phi (the square root), +inf where the slope vanishes.
double analytic_homodyne_sensitivity(const SpinSpace& space, double phase, double beta, double gt,
                                     const SignalMoments& case_moments);

/// Statistics of S = U_phi^dag (Pi_A X_B / (2 beta)) U_phi with X_B = b + b^dag
/// on the gt = pi two-branch purification, exact on the windowed grid.
SignalStats approx_quadrature_parity_stats(const JointState& joint, double phase, double beta);

/// Statistics of the Dicke-mixture signal with S_B realized by counting the
/// auxiliary occupation after exchange evolution; in-sector S_B|Psi> = Jz|Psi>
/// holds exactly.
SignalStats fock_counting_stats(const JointState& joint, double phase, int n_b_initial,
                                ExchangeSign sign);

struct SignalKind {
    enum class Tag { ExactDicke, ExactParity, ApproxHomodyne, ApproxQuadratureParity, FockCounting };
    Tag tag = Tag::ExactDicke;
    double beta = 0;               // homodyne, quadrature parity
    double gt = 0;                 // homodyne
    int n_b_initial = 0;           // Fock counting
    ExchangeSign sign = ExchangeSign::Minus;
};

using SignalInput = std::variant<DensityMatrix, JointState>;

/// Per-phase statistics over a grid. Windowed states are prepared once and
/// shared; points are evaluated independently (and in parallel), so the
/// output does not depend on scheduling.
std::vector<SignalStats> sensitivity_curve(const SignalKind& kind, const SignalInput& state,
                                           std::span<const double> phase_grid);

/// Min over a curve of Delta-phi, skipping points where the slope is below
/// 1e-12 of the signal scale.
double min_delta_phi(std::span<const SignalStats> curve);

}  // namespace purimetry

#endif
