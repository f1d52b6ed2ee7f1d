#include "purimetry/dynamics.hpp"

#include "purimetry/numerics.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace purimetry {

namespace {

// ln <n|gamma> magnitude and phase of a coherent-state Fock amplitude.
Complex coherent_fock_amplitude(Complex gamma, long n) {
    const double mod_sq = std::norm(gamma);
    if (mod_sq == 0.0) return n == 0 ? 1.0 : 0.0;
    const double log_mag =
        -0.5 * mod_sq + 0.5 * n * std::log(mod_sq) - 0.5 * std::lgamma(n + 1.0);
    const double phase = n * std::arg(gamma);
    return std::exp(log_mag) * Complex(std::cos(phase), std::sin(phase));
}

double raising_element(const SpinSpace& space, int twice_m) {
    const double jj = 0.25 * space.twice_j() * (space.twice_j() + 2);
    const double mm = 0.25 * twice_m * (twice_m + 2);
    return std::sqrt(jj - mm);
}

}  // namespace

JointState dephasing_purification(const SpinState& initial, Complex beta, double gt) {
    if (std::abs(initial.norm() - 1.0) > 1e-8)
        throw std::invalid_argument("dephasing_purification: initial state is not normalized");
    return JointState(CoherentBranchRep{initial, beta, gt});
}

JointState to_windowed_fock(const JointState& joint, double norm_tolerance,
                            std::uint64_t budget_bytes) {
    if (!joint.is_coherent_branch())
        throw std::invalid_argument("to_windowed_fock: input is already windowed");
    const CoherentBranchRep& rep = joint.coherent_branch();
    const SpinSpace& space = rep.probe.space;

    // Every branch shares |beta|^2, so one Poisson window covers them all.
    const FockWindow window = fock_window({std::norm(rep.beta)}, norm_tolerance);
    const std::uint64_t bytes =
        static_cast<std::uint64_t>(space.dim()) * window.dim * sizeof(Complex);
    if (bytes > budget_bytes)
        throw BudgetError("to_windowed_fock: window of " + std::to_string(window.dim) +
                          " Fock levels x " + std::to_string(space.dim()) +
                          " spin levels needs " + std::to_string(bytes) +
                          " bytes, over the budget of " + std::to_string(budget_bytes));

    Matrix psi(space.dim(), window.dim);
    for (int k = 0; k < space.dim(); ++k) {
        const Complex gamma = rep.branch_amplitude(k);
        for (long col = 0; col < window.dim; ++col)
            psi(k, col) = rep.probe.amplitudes(k) * coherent_fock_amplitude(gamma, window.offset + col);
    }
    WindowedFockRep out{space, window.offset, std::move(psi)};
    // The log-space amplitudes carry roundoff proportional to the exponent
    // scale (|beta|^2 and n log n near 1e6 give ~1e-8 in the summed mass), so
    // the capture check allows that much on top of the requested tolerance.
    const double roundoff =
        64.0 * std::numeric_limits<double>::epsilon() * (std::norm(rep.beta) + 16.0);
    const double mass = out.total_mass();
    if (1.0 - mass > norm_tolerance + roundoff)
        throw NumericError("to_windowed_fock: captured mass fell short of tolerance");
    out.amplitudes /= std::sqrt(mass);
    return JointState(std::move(out));
}

std::vector<ExchangeSector> exchange_sectors(const SpinSpace& space, const ExchangeSpec& spec) {
    if (spec.n_b_initial < 0)
        throw std::invalid_argument("exchange_sectors: negative initial Fock number");
    const bool minus = spec.sign == ExchangeSign::Minus;
    std::vector<ExchangeSector> sectors;
    for (int k0 = 0; k0 < space.dim(); ++k0) {
        ExchangeSector sector;
        // conserved: m + n (minus) or m - n (plus), doubled to keep
        // half-integers exact; one sector per m paired with n = N_B.
        sector.conserved_doubled = minus ? space.twice_m(k0) + 2 * spec.n_b_initial
                                         : space.twice_m(k0) - 2 * spec.n_b_initial;
        for (int k = 0; k < space.dim(); ++k) {
            const long twice_n = minus ? sector.conserved_doubled - space.twice_m(k)
                                       : space.twice_m(k) - sector.conserved_doubled;
            if (twice_n < 0) continue;
            sector.basis.emplace_back(k, twice_n / 2);
        }
        const int dim = static_cast<int>(sector.basis.size());
        sector.hamiltonian = RealMatrix::Zero(dim, dim);
        for (int i = 0; i + 1 < dim; ++i) {
            const auto [k, n] = sector.basis[i];
            // between (m, n) and (m+1, n -+ 1): sqrt(j(j+1) - m(m+1)) sqrt(n')
            // with n' the larger Fock occupation of the pair.
            const long n_larger = minus ? n : n + 1;
            const double element =
                raising_element(space, space.twice_m(k)) * std::sqrt(static_cast<double>(n_larger));
            sector.hamiltonian(i, i + 1) = element;
            sector.hamiltonian(i + 1, i) = element;
        }
        sectors.push_back(std::move(sector));
    }
    return sectors;
}

std::vector<ExchangeSnapshot> evolve_exchange(const SpinSpace& space, const ExchangeSpec& spec,
                                              const SpinState& initial) {
    for (size_t i = 0; i + 1 < spec.coupling_time_grid.size(); ++i)
        if (!(spec.coupling_time_grid[i] < spec.coupling_time_grid[i + 1]))
            throw std::invalid_argument("evolve_exchange: time grid is not strictly increasing");

    // The sector decomposition only covers Jz eigenstates.
    int k0 = -1;
    for (int k = 0; k < space.dim(); ++k) {
        if (std::abs(initial.amplitudes(k)) > 1e-12) {
            if (k0 >= 0)
                throw std::invalid_argument("evolve_exchange: initial probe is not a Jz eigenstate");
            k0 = k;
        }
    }
    if (k0 < 0) throw std::invalid_argument("evolve_exchange: initial probe state is zero");

    const bool minus = spec.sign == ExchangeSign::Minus;
    const int conserved = minus ? space.twice_m(k0) + 2 * spec.n_b_initial
                                : space.twice_m(k0) - 2 * spec.n_b_initial;
    const std::vector<ExchangeSector> sectors = exchange_sectors(space, spec);
    const ExchangeSector* sector = nullptr;
    for (const ExchangeSector& s : sectors)
        if (s.conserved_doubled == conserved) sector = &s;
    if (sector == nullptr) throw NumericError("evolve_exchange: initial sector not found");

    const int dim = static_cast<int>(sector->basis.size());
    int i0 = -1;
    long n_min = sector->basis.front().second;
    long n_max = n_min;
    for (int i = 0; i < dim; ++i) {
        const auto [k, n] = sector->basis[i];
        if (k == k0 && n == spec.n_b_initial) i0 = i;
        n_min = std::min(n_min, n);
        n_max = std::max(n_max, n);
    }
    if (i0 < 0) throw NumericError("evolve_exchange: initial basis label not in sector");

    const EigenDecomposition eig =
        hermitian_eig(OperatorMatrix{sector->hamiltonian.cast<Complex>(), true});
    const Vector weights = eig.eigenvectors.row(i0).conjugate() * initial.amplitudes(k0);

    std::vector<ExchangeSnapshot> out;
    out.reserve(spec.coupling_time_grid.size());
    for (double gt : spec.coupling_time_grid) {
        Vector phased(dim);
        for (int i = 0; i < dim; ++i) {
            const double a = -eig.eigenvalues(i) * gt;
            phased(i) = weights(i) * Complex(std::cos(a), std::sin(a));
        }
        const Vector amplitude = eig.eigenvectors * phased;

        Matrix psi = Matrix::Zero(space.dim(), n_max - n_min + 1);
        Matrix rho = Matrix::Zero(space.dim(), space.dim());
        for (int i = 0; i < dim; ++i) {
            const auto [k, n] = sector->basis[i];
            psi(k, n - n_min) = amplitude(i);
            rho(k, k) = std::norm(amplitude(i));
        }
        rho /= rho.trace().real();
        out.push_back(ExchangeSnapshot{gt, JointState(WindowedFockRep{space, n_min, std::move(psi)}),
                                       DensityMatrix::checked(space, std::move(rho))});
    }
    return out;
}

OperatorMatrix undepleted_pump_rotation(const SpinSpace& space, double beta, double gt) {
    const SpinOperators ops = angular_momentum_operators(space);
    const EigenDecomposition jx = hermitian_eig(ops.jx);
    const double angle = 2.0 * beta * gt;  // H_pm -> g beta (J+ + J-) = 2 g beta Jx
    Vector phases(space.dim());
    for (int k = 0; k < space.dim(); ++k) {
        const double a = -angle * jx.eigenvalues(k);
        phases(k) = Complex(std::cos(a), std::sin(a));
    }
    Matrix u = jx.eigenvectors * phases.asDiagonal() * jx.eigenvectors.adjoint();
    return OperatorMatrix{std::move(u), false};
}

}  // namespace purimetry
