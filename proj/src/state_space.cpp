#include "purimetry/state_space.hpp"

#include "purimetry/numerics.hpp"

#include <cmath>
#include <numbers>

namespace purimetry {

namespace {

constexpr double kPi = std::numbers::pi;

// <B_m|B_n> = exp[-|beta|^2 (1 - e^(-i d gt))] for branch index offset
// d = n - m; magnitude and phase assembled separately so huge |beta|^2
// underflows gracefully instead of overflowing intermediates.
Complex branch_overlap(double beta_sq, double gt, long d) {
    const double angle = static_cast<double>(d) * gt;
    const double half = std::sin(0.5 * angle);
    const double magnitude = std::exp(-2.0 * beta_sq * half * half);
    const double phase = -beta_sq * std::sin(angle);
    return magnitude * Complex(std::cos(phase), std::sin(phase));
}

}  // namespace

DensityMatrix DensityMatrix::checked(SpinSpace space, Matrix entries) {
    if (entries.rows() != space.dim() || entries.cols() != space.dim())
        throw std::invalid_argument("DensityMatrix: entries do not match the space dimension");
    const double scale = std::max(entries.cwiseAbs().maxCoeff(), 1e-300);
    if (hermitian_defect(entries) > 1e-12 * std::max(scale, 1.0))
        throw NumericError("DensityMatrix: not Hermitian");
    if (std::abs(entries.trace() - Complex(1.0, 0.0)) > 1e-12)
        throw NumericError("DensityMatrix: trace deviates from one");
    return DensityMatrix{space, std::move(entries)};
}

void DensityMatrix::validate_spectrum() const {
    const EigenDecomposition eig = hermitian_eig(OperatorMatrix{entries, true});
    if (eig.eigenvalues.minCoeff() < -1e-10)
        throw NumericError("DensityMatrix: negative eigenvalue beyond tolerance");
}

DensityMatrix density_from_pure(const SpinState& state) {
    if (std::abs(state.norm() - 1.0) > 1e-8)
        throw std::invalid_argument("density_from_pure: state is not normalized");
    const Vector& c = state.amplitudes;
    Matrix rho = c * c.adjoint();
    rho /= rho.trace().real();  // remove the residual norm deviation
    return DensityMatrix::checked(state.space, std::move(rho));
}

DensityMatrix case_state(CaseState which, const SpinSpace& space) {
    if (space.particles() < 1) throw std::invalid_argument("case_state: need N >= 1");
    switch (which) {
        case CaseState::I:
            return density_from_pure(spin_coherent_state(space, 0.5 * kPi, 0.0));
        case CaseState::II: {
            // Uniform azimuthal average of Case I; every off-diagonal carries a
            // factor integral of e^(i(n-m)phi) and vanishes identically.
            const SpinState equator = spin_coherent_state(space, 0.5 * kPi, 0.0);
            Matrix rho = Matrix::Zero(space.dim(), space.dim());
            for (int k = 0; k < space.dim(); ++k) rho(k, k) = std::norm(equator.amplitudes(k));
            rho /= rho.trace().real();
            return DensityMatrix::checked(space, std::move(rho));
        }
        case CaseState::III: {
            const SpinState up = spin_coherent_state(space, 0.5 * kPi, 0.5 * kPi);
            const SpinState down = spin_coherent_state(space, 0.5 * kPi, -0.5 * kPi);
            Matrix rho = 0.5 * (up.amplitudes * up.amplitudes.adjoint() +
                                down.amplitudes * down.amplitudes.adjoint());
            rho /= rho.trace().real();
            return DensityMatrix::checked(space, std::move(rho));
        }
    }
    throw std::invalid_argument("case_state: unknown case");
}

double purity(const DensityMatrix& rho) {
    // Tr(rho^2) = ||rho||_F^2 for Hermitian rho.
    return rho.entries.squaredNorm();
}

HusimiField husimi_q(const DensityMatrix& rho, int theta_nodes, int phi_nodes) {
    if (theta_nodes < 2 || phi_nodes < 2)
        throw std::invalid_argument("husimi_q: need at least 2 nodes per axis");
    const SpinSpace& space = rho.space;
    const int dim = space.dim();
    HusimiField field;
    field.theta_grid = RealVector::LinSpaced(theta_nodes, 0.0, kPi);
    field.phi_grid = RealVector(phi_nodes);
    for (int k = 0; k < phi_nodes; ++k) field.phi_grid(k) = 2.0 * kPi * k / phi_nodes;
    field.values.resize(theta_nodes, phi_nodes);

    const double prefactor = (space.twice_j() + 1) / (4.0 * kPi);
    for (int it = 0; it < theta_nodes; ++it) {
        // <alpha|rho|alpha> = sum_d e^(i phi d) s_d with s_d the d-th diagonal
        // sum of rho weighted by the azimuth-free amplitudes; O(dim) per phi.
        const SpinState base = spin_coherent_state(space, field.theta_grid(it), 0.0);
        Vector diag_sums = Vector::Zero(2 * dim - 1);
        for (int n = 0; n < dim; ++n)
            for (int m = 0; m < dim; ++m)
                diag_sums(n - m + dim - 1) +=
                    std::conj(base.amplitudes(n)) * rho.entries(n, m) * base.amplitudes(m);
        for (int k = 0; k < phi_nodes; ++k) {
            Complex q = 0.0;
            for (int d = -(dim - 1); d <= dim - 1; ++d) {
                const double a = field.phi_grid(k) * d;
                q += diag_sums(d + dim - 1) * Complex(std::cos(a), std::sin(a));
            }
            field.values(it, k) = prefactor * q.real();
        }
    }
    return field;
}

double sphere_integral(const HusimiField& field) {
    const RealVector w_theta =
        trapezoid_weights(static_cast<int>(field.theta_grid.size()), 0.0, kPi);
    const RealVector w_phi =
        periodic_weights(static_cast<int>(field.phi_grid.size()), 2.0 * kPi);
    double total = 0.0;
    for (Eigen::Index it = 0; it < field.theta_grid.size(); ++it) {
        const double row = field.values.row(it).dot(w_phi);
        total += w_theta(it) * std::sin(field.theta_grid(it)) * row;
    }
    return total;
}

double JyDistribution::mean() const {
    double mu = 0.0;
    for (int k = 0; k < space.dim(); ++k) mu += probabilities(k) * space.m(k);
    return mu;
}

double JyDistribution::variance() const {
    const double mu = mean();
    double var = 0.0;
    for (int k = 0; k < space.dim(); ++k) {
        const double d = space.m(k) - mu;
        var += probabilities(k) * d * d;
    }
    return var;
}

JyDistribution jy_distribution(const DensityMatrix& rho) {
    const SpinOperators ops = angular_momentum_operators(rho.space);
    const EigenDecomposition eig = hermitian_eig(ops.jy);
    RealVector p = RealVector::Zero(rho.space.dim());
    for (int k = 0; k < rho.space.dim(); ++k) {
        const double lambda = eig.eigenvalues(k);
        const long twice_m = std::lround(2.0 * lambda);
        if (std::abs(lambda - 0.5 * twice_m) > 1e-6)
            throw NumericError("jy_distribution: eigenvalue is not near a half-integer label");
        const Vector v = eig.eigenvectors.col(k);
        p(rho.space.index_of(static_cast<int>(twice_m))) += (v.adjoint() * rho.entries * v)(0).real();
    }
    return JyDistribution{rho.space, std::move(p)};
}

DensityMatrix partial_trace_to_probe(const JointState& joint) {
    if (joint.is_coherent_branch()) {
        const CoherentBranchRep& rep = joint.coherent_branch();
        const int dim = rep.probe.space.dim();
        const double beta_sq = std::norm(rep.beta);
        Matrix rho(dim, dim);
        for (int n = 0; n < dim; ++n)
            for (int m = 0; m < dim; ++m)
                rho(n, m) = rep.probe.amplitudes(n) * std::conj(rep.probe.amplitudes(m)) *
                            branch_overlap(beta_sq, rep.gt, n - m);
        rho /= rho.trace().real();
        return DensityMatrix::checked(rep.probe.space, std::move(rho));
    }
    const WindowedFockRep& rep = joint.windowed_fock();
    const double mass = rep.total_mass();
    if (std::abs(1.0 - mass) > 1e-8)
        throw NumericError("partial_trace_to_probe: window norm deficit exceeds 1e-8");
    Matrix rho = rep.amplitudes * rep.amplitudes.adjoint();
    rho /= mass;  // renormalize the captured mass onto the probe
    return DensityMatrix::checked(rep.space, std::move(rho));
}

}  // namespace purimetry
