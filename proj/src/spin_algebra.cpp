#include "purimetry/spin_algebra.hpp"

#include "purimetry/numerics.hpp"

#include <cmath>

namespace purimetry {

namespace {

// sqrt(j(j+1) - m(m+1)) from doubled integers, exact rational inside the root.
double raising_element(int twice_j, int twice_m) {
    const double jj = 0.25 * twice_j * (twice_j + 2);
    const double mm = 0.25 * twice_m * (twice_m + 2);
    return std::sqrt(jj - mm);
}

}  // namespace

SpinOperators angular_momentum_operators(const SpinSpace& space) {
    const int dim = space.dim();
    Matrix jz = Matrix::Zero(dim, dim);
    Matrix jplus = Matrix::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) {
        jz(k, k) = space.m(k);
        if (k + 1 < dim) jplus(k + 1, k) = raising_element(space.twice_j(), space.twice_m(k));
    }
    Matrix jminus = jplus.adjoint();
    Matrix jx = 0.5 * (jplus + jminus);
    Matrix jy = Complex(0, -0.5) * (jplus - jminus);
    return SpinOperators{
        OperatorMatrix{std::move(jx), true},    OperatorMatrix{std::move(jy), true},
        OperatorMatrix{std::move(jz), true},    OperatorMatrix{std::move(jplus), false},
        OperatorMatrix{std::move(jminus), false},
    };
}

SpinState spin_coherent_state(const SpinSpace& space, double theta, double azimuth) {
    const int n = space.particles();
    const double c_half = std::cos(0.5 * theta);
    const double s_half = std::sin(0.5 * theta);
    Vector c(space.dim());
    for (int k = 0; k <= n; ++k) {
        // k = j + m; binomial and trig powers combined in log space so that
        // N of a few hundred stays clear of under/overflow.
        const double log_binom =
            0.5 * (std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
        double log_pow = 0.0;
        double sign = 1.0;
        bool zero = false;
        if (k > 0) {
            if (c_half == 0.0) zero = true;
            log_pow += zero ? 0.0 : k * std::log(std::abs(c_half));
            if (c_half < 0.0 && k % 2 != 0) sign = -sign;
        }
        if (n - k > 0 && !zero) {
            if (s_half == 0.0) zero = true;
            log_pow += zero ? 0.0 : (n - k) * std::log(std::abs(s_half));
            if (s_half < 0.0 && (n - k) % 2 != 0) sign = -sign;
        }
        const double magnitude = zero ? 0.0 : sign * std::exp(log_binom + log_pow);
        const double phase = -space.m(k) * azimuth;
        c(k) = magnitude * Complex(std::cos(phase), std::sin(phase));
    }
    return SpinState{space, std::move(c)};
}

OperatorMatrix rotation_operator(const SpinSpace& space, double theta, double azimuth) {
    if (theta == 0.0 && azimuth == 0.0)
        return OperatorMatrix{Matrix::Identity(space.dim(), space.dim()), false};
    const SpinOperators ops = angular_momentum_operators(space);
    const EigenDecomposition jy = hermitian_eig(ops.jy);
    Vector phases(space.dim());
    for (int k = 0; k < space.dim(); ++k) {
        const double a = -theta * jy.eigenvalues(k);
        phases(k) = Complex(std::cos(a), std::sin(a));
    }
    Matrix exp_jy = jy.eigenvectors * phases.asDiagonal() * jy.eigenvectors.adjoint();
    for (int k = 0; k < space.dim(); ++k) {
        const double a = -azimuth * space.m(k);
        exp_jy.row(k) *= Complex(std::cos(a), std::sin(a));
    }
    return OperatorMatrix{std::move(exp_jy), false};
}

OperatorMatrix parity_operator(const SpinSpace& space) {
    Matrix pi = Matrix::Zero(space.dim(), space.dim());
    const bool half_integer = space.particles() % 2 != 0;
    for (int k = 0; k < space.dim(); ++k) {
        // integer m: (-1)^m; half-integer m: (-1)^(m+j) = (-1)^k (global-phase
        // shifted so the matrix stays real and involutive).
        const long exponent = half_integer ? k : std::labs(space.twice_m(k) / 2);
        pi(k, k) = (exponent % 2 == 0) ? 1.0 : -1.0;
    }
    return OperatorMatrix{std::move(pi), true};
}

OperatorMatrix mz_unitary(const SpinSpace& space, double phase) {
    // exact identity at the group unit, so null-point detections stay exact
    if (phase == 0.0) return OperatorMatrix{Matrix::Identity(space.dim(), space.dim()), false};
    const SpinOperators ops = angular_momentum_operators(space);
    const EigenDecomposition jy = hermitian_eig(ops.jy);
    Vector phases(space.dim());
    for (int k = 0; k < space.dim(); ++k) {
        const double a = -phase * jy.eigenvalues(k);
        phases(k) = Complex(std::cos(a), std::sin(a));
    }
    Matrix u = jy.eigenvectors * phases.asDiagonal() * jy.eigenvectors.adjoint();
    return OperatorMatrix{std::move(u), false};
}

}  // namespace purimetry
