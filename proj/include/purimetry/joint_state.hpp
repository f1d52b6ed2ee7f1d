#ifndef PURIMETRY_JOINT_STATE_HPP
#define PURIMETRY_JOINT_STATE_HPP

#include "purimetry/spin_algebra.hpp"
#include "purimetry/spin_space.hpp"
#include "purimetry/types.hpp"

#include <variant>

namespace purimetry {

/// |Psi> = sum_m c_m |j,m> (x) |beta e^(-i m gt)>: the exact state produced by
/// the dephasing coupling, stored through its branch parameters. Valid for
/// any |beta|^2 since overlaps are evaluated in closed form.
struct CoherentBranchRep {
    SpinState probe;  // amplitudes c_m
    Complex beta;
    double gt;

    Complex branch_amplitude(int index) const;  // beta e^(-i m gt) at basis index
};

/// Amplitudes psi[m, n - offset] on a truncated Fock interval of system B.
struct WindowedFockRep {
    SpinSpace space;
    long fock_offset = 0;
    Matrix amplitudes;  // rows: spin index, cols: Fock index within window

    long fock_dim() const { return amplitudes.cols(); }
    double total_mass() const { return amplitudes.squaredNorm(); }
    /// Mass on the two outermost Fock shells, relative to the total.
    double boundary_mass_fraction() const;
};

/// Purification of the probe in one of two representations.
class JointState {
public:
    explicit JointState(CoherentBranchRep rep) : rep_(std::move(rep)) {}
    explicit JointState(WindowedFockRep rep) : rep_(std::move(rep)) {}

    bool is_coherent_branch() const { return std::holds_alternative<CoherentBranchRep>(rep_); }
    bool is_windowed_fock() const { return std::holds_alternative<WindowedFockRep>(rep_); }

    const CoherentBranchRep& coherent_branch() const { return std::get<CoherentBranchRep>(rep_); }
    const WindowedFockRep& windowed_fock() const { return std::get<WindowedFockRep>(rep_); }

    const SpinSpace& probe_space() const;
    /// <Psi|Psi>, exact overlaps on the analytic branch, amplitude sum on the window.
    double total_norm() const;

private:
    std::variant<CoherentBranchRep, WindowedFockRep> rep_;
};

}  // namespace purimetry

#endif
