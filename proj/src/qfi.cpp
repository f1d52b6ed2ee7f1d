#include "purimetry/qfi.hpp"

#include "purimetry/numerics.hpp"
#include "purimetry/spin_algebra.hpp"

#include <cmath>

namespace purimetry {

namespace {

// Degenerate-pair threshold for Eq.-style mixed QFI sums: the omitted mass is
// bounded by the threshold times the squared generator norm.
constexpr double kEigenPairFloor = 1e-12;

double real_expectation(const DensityMatrix& rho, const Matrix& op) {
    return (rho.entries * op).trace().real();
}

}  // namespace

double qfi_mixed(const DensityMatrix& rho, const OperatorMatrix& generator) {
    require_hermitian(generator, "qfi_mixed");
    if (generator.dim() != rho.space.dim())
        throw std::invalid_argument("qfi_mixed: generator does not match the state space");
    EigenDecomposition eig = hermitian_eig(OperatorMatrix{rho.entries, true});
    if (eig.eigenvalues.minCoeff() < -1e-10)
        throw NumericError("qfi_mixed: state has a negative eigenvalue beyond tolerance");
    RealVector lambda = eig.eigenvalues.cwiseMax(0.0);
    const Matrix g = eig.eigenvectors.adjoint() * generator.entries * eig.eigenvectors;
    const int dim = rho.space.dim();
    double total = 0.0;
    for (int i = 0; i < dim; ++i) {
        for (int k = 0; k < dim; ++k) {
            if (i == k) continue;
            const double sum = lambda(i) + lambda(k);
            if (sum <= kEigenPairFloor) continue;
            const double diff = lambda(i) - lambda(k);
            total += diff * diff / sum * std::norm(g(i, k));
        }
    }
    return 2.0 * total;
}

double qfi_purification(const DensityMatrix& rho, const OperatorMatrix& generator) {
    require_hermitian(generator, "qfi_purification");
    if (generator.dim() != rho.space.dim())
        throw std::invalid_argument("qfi_purification: generator does not match the state space");
    const double mean = real_expectation(rho, generator.entries);
    const double second = real_expectation(rho, generator.entries * generator.entries);
    return 4.0 * (second - mean * mean);
}

QfiBreakdown qfi_breakdown(const DensityMatrix& rho) {
    const SpinOperators ops = angular_momentum_operators(rho.space);
    const double n = rho.space.particles();

    double jz2 = 0.0;
    for (int k = 0; k < rho.space.dim(); ++k) {
        const double m = rho.space.m(k);
        jz2 += m * m * rho.entries(k, k).real();
    }

    const Matrix first_order = Complex(0, 1) * (ops.jplus.entries - ops.jminus.entries);
    const double f1_mean = real_expectation(rho, first_order);

    const Matrix second_order =
        ops.jplus.entries * ops.jplus.entries + ops.jminus.entries * ops.jminus.entries;
    const double f2_mean = real_expectation(rho, second_order);

    QfiBreakdown out;
    out.f0 = 0.5 * n * (n + 2.0) - 2.0 * jz2;
    out.f1 = -f1_mean * f1_mean;
    out.f2 = -f2_mean;
    out.total = out.f0 + out.f1 + out.f2;
    return out;
}

Complex coherence_dephasing(int order, double beta_sq, double gt) {
    if (beta_sq < 0.0) throw std::invalid_argument("coherence_dephasing: negative |beta|^2");
    const double angle = order * gt;
    const double half = std::sin(0.5 * angle);
    const double magnitude = std::exp(-2.0 * beta_sq * half * half);
    const double phase = -beta_sq * std::sin(angle);
    return magnitude * Complex(std::cos(phase), std::sin(phase));
}

CoherenceSpectrum coherence_spectrum(double beta_sq, double gt, int max_order) {
    CoherenceSpectrum spectrum;
    for (int k = 0; k <= max_order; ++k) {
        spectrum.orders.push_back(k);
        spectrum.values.push_back(coherence_dephasing(k, beta_sq, gt));
    }
    return spectrum;
}

QfiBreakdown analytic_qfi_dephasing(const SpinSpace& space, double theta, double azimuth,
                                    double beta_sq, double gt) {
    if (beta_sq < 0.0) throw std::invalid_argument("analytic_qfi_dephasing: negative |beta|^2");
    const double n = space.particles();
    const double st = std::sin(theta);
    const double st2 = st * st;
    const double sin_half = std::sin(0.5 * gt);
    const double sin_full = std::sin(gt);
    const double decay1 = std::exp(-4.0 * beta_sq * sin_half * sin_half);
    const double decay2 = std::exp(-2.0 * beta_sq * sin_full * sin_full);
    const double arg1 = beta_sq * std::sin(gt) + azimuth;
    const double arg2 = beta_sq * std::sin(2.0 * gt) + 2.0 * azimuth;

    QfiBreakdown out;
    out.f0 = n * (1.0 + 0.5 * (n - 1.0) * st2);
    out.f1 = -n * n * st2 * std::sin(arg1) * std::sin(arg1) * decay1;
    out.f2 = 0.5 * n * (1.0 - n) * st2 * std::cos(arg2) * decay2;
    out.total = out.f0 + out.f1 + out.f2;
    return out;
}

double qfi_spin_coherent(const SpinSpace& space, double theta, double azimuth) {
    const double st = std::sin(theta);
    const double sp = std::sin(azimuth);
    return space.twice_j() * (1.0 - st * st * sp * sp);
}

}  // namespace purimetry
