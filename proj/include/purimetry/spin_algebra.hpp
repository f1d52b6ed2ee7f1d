#ifndef PURIMETRY_SPIN_ALGEBRA_HPP
#define PURIMETRY_SPIN_ALGEBRA_HPP

#include "purimetry/spin_space.hpp"
#include "purimetry/types.hpp"

namespace purimetry {

/// Pure state of the spin sector, amplitudes c_m with m = -j..j ascending.
struct SpinState {
    SpinSpace space;
    Vector amplitudes;

    double norm() const { return amplitudes.norm(); }
};

struct SpinOperators {
    OperatorMatrix jx, jy, jz, jplus, jminus;
};

/// Angular-momentum matrices on the (N+1)-dimensional Dicke basis.
/// Jz is diagonal with entries m; <m+1|J+|m> = sqrt(j(j+1) - m(m+1)).
SpinOperators angular_momentum_operators(const SpinSpace& space);

/// |alpha(theta, azimuth)> = exp(-i azimuth Jz) exp(-i theta Jy) |j, j>,
/// built from the closed-form amplitudes
///   c_m = sqrt(C(N, j+m)) cos(theta/2)^(j+m) sin(theta/2)^(j-m) e^(-i m azimuth).
SpinState spin_coherent_state(const SpinSpace& space, double theta, double azimuth);

/// R(theta, azimuth) = exp(-i azimuth Jz) exp(-i theta Jy), unitary.
OperatorMatrix rotation_operator(const SpinSpace& space, double theta, double azimuth);

/// Diagonal parity (-1)^m. For half-integer m the convention (-1)^(m+j) is
/// used, which differs by a global sign only and keeps the matrix real.
OperatorMatrix parity_operator(const SpinSpace& space);

/// Interferometer unitary U_phi = exp(-i phi Jy); conjugation sends
/// Jz -> cos(phi) Jz - sin(phi) Jx.
OperatorMatrix mz_unitary(const SpinSpace& space, double phase);

}  // namespace purimetry

#endif
