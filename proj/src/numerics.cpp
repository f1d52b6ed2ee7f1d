#include "purimetry/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace purimetry {

EigenDecomposition hermitian_eig(const OperatorMatrix& matrix) {
    require_hermitian(matrix, "hermitian_eig");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(matrix.entries);
    if (solver.info() != Eigen::Success)
        throw NumericError("hermitian_eig: solver did not converge");
    return EigenDecomposition{solver.eigenvalues(), solver.eigenvectors()};
}

namespace {

// log of the Poisson pmf at n for mean lambda.
double log_poisson(double lambda, long n) {
    return -lambda + static_cast<double>(n) * std::log(lambda) - std::lgamma(n + 1.0);
}

// Smallest interval around the mode whose outside tails are certified below
// tolerance/2 each. The tails are bounded analytically through the geometric
// domination of the pmf ratios (sum_{n >= n0} p_n <= p_{n0} / (1 - lambda/(n0+1))
// above the mode, and mirrored below), so the certificate does not suffer the
// cancellation of a long cumulative sum.
FockWindow single_window(double lambda, double tolerance) {
    if (lambda <= 0.0) return FockWindow{0, 1};
    const long mode = static_cast<long>(std::floor(lambda));

    const auto upper_tail_bound = [&](long n0) {
        const double ratio = lambda / (n0 + 1.0);
        if (ratio >= 1.0) return 1.0;
        return std::exp(log_poisson(lambda, n0)) / (1.0 - ratio);
    };
    const auto lower_tail_bound = [&](long n0) {
        if (n0 < 0) return 0.0;
        const double ratio = n0 / lambda;
        if (ratio >= 1.0) return 1.0;
        return std::exp(log_poisson(lambda, n0)) / (1.0 - ratio);
    };

    long lo = mode, hi = mode;
    while (lo > 0 && lower_tail_bound(lo - 1) > 0.5 * tolerance) --lo;
    while (upper_tail_bound(hi + 1) > 0.5 * tolerance) ++hi;
    return FockWindow{lo, hi - lo + 1};
}

}  // namespace

FockWindow fock_window(const std::vector<double>& mean_photon_numbers, double tolerance) {
    if (tolerance <= 0.0 || tolerance >= 1.0)
        throw std::invalid_argument("fock_window: tolerance must lie in (0, 1)");
    if (mean_photon_numbers.empty())
        throw std::invalid_argument("fock_window: no amplitudes given");
    long lo = -1, hi = -1;
    for (double lambda : mean_photon_numbers) {
        if (lambda < 0.0) throw std::invalid_argument("fock_window: negative mean photon number");
        const FockWindow w = single_window(lambda, tolerance);
        lo = lo < 0 ? w.offset : std::min(lo, w.offset);
        hi = std::max(hi, w.last());
    }
    return FockWindow{lo, hi - lo + 1};
}

double central_derivative(const std::function<double(double)>& f, double x, double h) {
    if (h <= 0.0) throw std::invalid_argument("central_derivative: step must be positive");
    const double d1 = (f(x + h) - f(x - h)) / (2.0 * h);
    const double d2 = (f(x + 0.5 * h) - f(x - 0.5 * h)) / h;
    return (4.0 * d2 - d1) / 3.0;
}

RealVector trapezoid_weights(int nodes, double a, double b) {
    if (nodes < 2) throw std::invalid_argument("trapezoid_weights: need at least 2 nodes");
    const double h = (b - a) / (nodes - 1);
    RealVector w = RealVector::Constant(nodes, h);
    w(0) = 0.5 * h;
    w(nodes - 1) = 0.5 * h;
    return w;
}

RealVector periodic_weights(int nodes, double period) {
    if (nodes < 1) throw std::invalid_argument("periodic_weights: need at least 1 node");
    return RealVector::Constant(nodes, period / nodes);
}

}  // namespace purimetry
