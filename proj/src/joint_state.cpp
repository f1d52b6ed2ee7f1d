#include "purimetry/joint_state.hpp"

#include <cmath>

namespace purimetry {

Complex CoherentBranchRep::branch_amplitude(int index) const {
    const double a = -probe.space.m(index) * gt;
    return beta * Complex(std::cos(a), std::sin(a));
}

double WindowedFockRep::boundary_mass_fraction() const {
    // Windows of one or two shells hold their state exactly; there is no
    // truncation boundary to monitor.
    if (amplitudes.cols() < 3) return 0.0;
    const double total = total_mass();
    if (total == 0.0) return 0.0;
    const double edges =
        amplitudes.col(0).squaredNorm() + amplitudes.col(amplitudes.cols() - 1).squaredNorm();
    return edges / total;
}

const SpinSpace& JointState::probe_space() const {
    if (is_coherent_branch()) return coherent_branch().probe.space;
    return windowed_fock().space;
}

double JointState::total_norm() const {
    // Branch kets are unit coherent states and the spin basis is orthonormal,
    // so the norm reduces to the probe amplitude norm.
    if (is_coherent_branch()) return coherent_branch().probe.norm();
    return std::sqrt(windowed_fock().total_mass());
}

}  // namespace purimetry
