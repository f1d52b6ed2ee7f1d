#ifndef PURIMETRY_STATE_SPACE_HPP
#define PURIMETRY_STATE_SPACE_HPP

#include "purimetry/joint_state.hpp"
#include "purimetry/spin_algebra.hpp"
#include "purimetry/spin_space.hpp"
#include "purimetry/types.hpp"

namespace purimetry {

/// Hermitian, unit-trace, positive-semidefinite probe state. Hermiticity and
/// trace are checked on construction; positivity is checked where spectra are
/// computed anyway (see validate_spectrum).
struct DensityMatrix {
    SpinSpace space;
    Matrix entries;

    static DensityMatrix checked(SpinSpace space, Matrix entries);

    /// Eigen-based check of the PSD invariant (smallest eigenvalue >= -1e-10).
    void validate_spectrum() const;
};

enum class CaseState { I = 1, II = 2, III = 3 };

/// rho = |psi><psi|. Rejects unnormalized input (norm deviation > 1e-8).
DensityMatrix density_from_pure(const SpinState& state);

/// The three benchmark input states:
///   I   pure |alpha(pi/2, 0)>
///   II  uniform azimuthal average, the binomial Dicke mixture
///   III equal mixture of maximal and minimal Jy eigenstates
DensityMatrix case_state(CaseState which, const SpinSpace& space);

/// gamma = Tr(rho^2).
double purity(const DensityMatrix& rho);

struct HusimiField {
    RealVector theta_grid;  // [0, pi] inclusive
    RealVector phi_grid;    // [0, 2pi) endpoint excluded
    RealMatrix values;      // values(i, k) = Q(theta_i, phi_k)
};

/// Q(theta, phi) = (2j+1)/(4pi) <alpha|rho|alpha> on a uniform grid.
HusimiField husimi_q(const DensityMatrix& rho, int theta_nodes, int phi_nodes);

/// Integral of the field over the sphere with sin(theta) weights; 1 for any
/// valid state once the grid resolves the state's harmonic content.
double sphere_integral(const HusimiField& field);

struct JyDistribution {
    SpinSpace space;
    RealVector probabilities;  // P(Jy = m), m = -j..j ascending

    double mean() const;
    double variance() const;
};

/// P(m) = <v_m|rho|v_m> over the Jy eigenbasis; eigenvalues are rounded to
/// half-integer labels and the rounding residual doubles as a solver check.
JyDistribution jy_distribution(const DensityMatrix& rho);

/// Reduced probe state Tr_B |Psi><Psi|. The analytic branch uses exact
/// coherent-state overlaps; the windowed branch sums over the Fock index and
/// rejects inputs with norm deficit > 1e-8.
DensityMatrix partial_trace_to_probe(const JointState& joint);

}  // namespace purimetry

#endif
