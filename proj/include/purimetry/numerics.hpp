#ifndef PURIMETRY_NUMERICS_HPP
#define PURIMETRY_NUMERICS_HPP

#include "purimetry/types.hpp"

#include <functional>
#include <vector>

namespace purimetry {

/// Spectral decomposition A = V diag(lambda) V^dag with ascending eigenvalues
/// and orthonormal columns.
struct EigenDecomposition {
    RealVector eigenvalues;
    Matrix eigenvectors;
};

/// Diagonalize a Hermitian operator. The flag is verified before solving;
/// output is deterministic for identical input.
EigenDecomposition hermitian_eig(const OperatorMatrix& matrix);

/// Contiguous Fock interval [offset, offset + dim).
struct FockWindow {
    long offset = 0;
    long dim = 0;

    long last() const { return offset + dim - 1; }
    bool contains(long n) const { return n >= offset && n < offset + dim; }
};

/// Smallest window around the Poisson bulk such that every coherent amplitude
/// in `mean_photon_numbers` keeps tail mass outside the window <= tolerance.
/// Probabilities are accumulated in log space, so |beta|^2 up to 1e6 and
/// beyond is safe.
FockWindow fock_window(const std::vector<double>& mean_photon_numbers, double tolerance);

/// Richardson-extrapolated central difference, O(h^4) for smooth f.
double central_derivative(const std::function<double(double)>& f, double x, double h);

/// Trapezoid weights for `nodes` uniform points spanning [a, b] inclusive.
RealVector trapezoid_weights(int nodes, double a, double b);

/// Quadrature weights for `nodes` uniform points covering one full period,
/// endpoint excluded.
RealVector periodic_weights(int nodes, double period);

}  // namespace purimetry

#endif
