#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "purimetry/dynamics.hpp"
#include "purimetry/numerics.hpp"
#include "purimetry/qfi.hpp"
#include "test_support.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace purimetry;
using test_support::expm;
using test_support::kron;
using test_support::max_abs_diff;
using test_support::rel_err;

namespace {
constexpr double kPi = std::numbers::pi;

Matrix fock_annihilation(int dim) {
    Matrix b = Matrix::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) b(n - 1, n) = std::sqrt(static_cast<double>(n));
    return b;
}
}  // namespace

TEST_CASE("dephasing_purification_norm_and_diag_conservation") {
    const SpinSpace space(12);
    const SpinState initial = spin_coherent_state(space, 0.5 * kPi, 0.2);
    const JointState joint = dephasing_purification(initial, std::sqrt(40.0), 0.3);
    CHECK(std::abs(joint.total_norm() - 1.0) < 1e-10);

    // the coupling is diagonal in m: diag(rho_A) never moves
    const DensityMatrix at_zero = partial_trace_to_probe(
        dephasing_purification(initial, std::sqrt(40.0), 0.0));
    const DensityMatrix later = partial_trace_to_probe(joint);
    for (int k = 0; k < space.dim(); ++k)
        CHECK(std::abs(at_zero.entries(k, k) - later.entries(k, k)) < 1e-13);
}

TEST_CASE("dephased_max_jy_state_approaches_case_three_at_gt_pi") {
    const SpinSpace space(16);
    const SpinState max_jy = spin_coherent_state(space, 0.5 * kPi, 0.5 * kPi);
    const double beta_sq = 12.0;
    const DensityMatrix rho = partial_trace_to_probe(
        dephasing_purification(max_jy, std::sqrt(beta_sq), kPi));
    const DensityMatrix mixture = case_state(CaseState::III, space);
    CHECK(max_abs_diff(rho.entries, mixture.entries) < 2.0 * std::exp(-2.0 * beta_sq));
}

TEST_CASE("purity_decays_but_stays_positive_under_dephasing") {
    const SpinSpace space(100);
    const SpinState initial = spin_coherent_state(space, 0.5 * kPi, 0.0);
    double previous = 1.0;
    for (double gt : {0.0, 0.02, 0.05, 0.1}) {
        const DensityMatrix rho = partial_trace_to_probe(
            dephasing_purification(initial, std::sqrt(500.0), gt));
        const double gamma = purity(rho);
        CHECK(gamma > 0.0);
        CHECK(gamma <= previous + 1e-12);
        previous = gamma;
    }
}

TEST_CASE("to_windowed_fock_point_mass_and_captured_norm") {
    const SpinSpace space(4);
    const SpinState initial = spin_coherent_state(space, 0.5 * kPi, 0.0);

    const JointState vacuum = to_windowed_fock(
        dephasing_purification(initial, Complex(0.0, 0.0), 0.7), 1e-12);
    CHECK(vacuum.windowed_fock().fock_offset == 0);
    CHECK(vacuum.windowed_fock().fock_dim() == 1);
    CHECK(std::abs(vacuum.total_norm() - 1.0) < 1e-12);

    const JointState windowed = to_windowed_fock(
        dephasing_purification(initial, std::sqrt(30.0), 0.6), 1e-12);
    CHECK(windowed.windowed_fock().fock_offset >= 0);
    CHECK(windowed.windowed_fock().fock_offset + windowed.windowed_fock().fock_dim() <= 105);
    CHECK(windowed.total_norm() >= std::sqrt(1.0 - 1e-12) - 1e-15);
    CHECK(windowed.windowed_fock().boundary_mass_fraction() <= 1e-8);
}

TEST_CASE("to_windowed_fock_enforces_memory_budget") {
    const SpinSpace space(100);
    const SpinState initial = spin_coherent_state(space, 0.5 * kPi, 0.0);
    const JointState joint = dephasing_purification(initial, std::sqrt(1e6), 0.01);
    CHECK_THROWS_AS(to_windowed_fock(joint, 1e-12, 1 << 20), BudgetError);
    try {
        to_windowed_fock(joint, 1e-12, 1 << 20);
    } catch (const BudgetError& error) {
        CHECK(std::string(error.what()).find("Fock levels") != std::string::npos);
    }
}

TEST_CASE("exchange_sectors_structure") {
    const SpinSpace space(100);
    ExchangeSpec spec;
    spec.sign = ExchangeSign::Minus;
    spec.n_b_initial = 20;
    const std::vector<ExchangeSector> sectors = exchange_sectors(space, spec);

    // the sector holding |j, j> (x) |N_B> is capped by conservation at dim N+1
    const int conserved = space.twice_j() + 2 * spec.n_b_initial;
    bool found = false;
    for (const ExchangeSector& sector : sectors) {
        const double defect =
            (sector.hamiltonian - sector.hamiltonian.transpose()).cwiseAbs().maxCoeff();
        CHECK(defect <= 1e-12);
        if (sector.conserved_doubled == conserved) {
            found = true;
            CHECK(sector.basis.size() == 101);
        }
    }
    CHECK(found);
}

TEST_CASE("exchange_sector_block_matches_dense_oracle") {
    // oracle: assemble H_minus / g on the full 5 x 8 product grid and read the
    // sector sub-block out of it
    const SpinSpace space(4);
    const int fock_dim = 8;
    ExchangeSpec spec;
    spec.sign = ExchangeSign::Minus;
    spec.n_b_initial = 2;
    const SpinOperators ops = angular_momentum_operators(space);
    const Matrix b = fock_annihilation(fock_dim);
    const Matrix dense = kron(ops.jminus.entries, b.adjoint()) + kron(ops.jplus.entries, b);

    const std::vector<ExchangeSector> sectors = exchange_sectors(space, spec);
    const int conserved = space.twice_j() + 2 * spec.n_b_initial;
    for (const ExchangeSector& sector : sectors) {
        if (sector.conserved_doubled != conserved) continue;
        const int dim = static_cast<int>(sector.basis.size());
        Matrix sub(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int k = 0; k < dim; ++k)
                sub(i, k) = dense(sector.basis[i].first * fock_dim + sector.basis[i].second,
                                  sector.basis[k].first * fock_dim + sector.basis[k].second);
        CHECK(max_abs_diff(sub, sector.hamiltonian.cast<Complex>()) < 1e-12);

        const EigenDecomposition from_block =
            hermitian_eig(OperatorMatrix{sector.hamiltonian.cast<Complex>(), true});
        const EigenDecomposition from_dense = hermitian_eig(OperatorMatrix{sub, true});
        for (int i = 0; i < dim; ++i)
            CHECK(std::abs(from_block.eigenvalues(i) - from_dense.eigenvalues(i)) < 1e-10);
    }
}

TEST_CASE("evolve_exchange_basics_and_conservation") {
    const SpinSpace space(30);
    ExchangeSpec spec;
    spec.sign = ExchangeSign::Minus;
    spec.n_b_initial = 6;
    spec.coupling_time_grid = {0.0, 0.05, 0.1, 0.2, 0.4};
    const SpinState top = spin_coherent_state(space, 0.0, 0.0);
    const std::vector<ExchangeSnapshot> snapshots = evolve_exchange(space, spec, top);

    CHECK(std::abs(snapshots[0].probe.entries(space.dim() - 1, space.dim() - 1).real() - 1.0) <
          1e-12);
    for (const ExchangeSnapshot& snap : snapshots) {
        CHECK(std::abs(snap.joint.total_norm() - 1.0) < 1e-10);
        // single-sector support keeps rho_A an exact Dicke mixture
        double off_max = 0.0;
        for (int i = 0; i < space.dim(); ++i)
            for (int k = 0; k < space.dim(); ++k)
                if (i != k) off_max = std::max(off_max, std::abs(snap.probe.entries(i, k)));
        CHECK(off_max <= 1e-12);
        const QfiBreakdown breakdown = qfi_breakdown(snap.probe);
        CHECK(std::abs(breakdown.f1) <= 1e-12);
        CHECK(std::abs(breakdown.f2) <= 1e-9);
    }

    const SpinState equator = spin_coherent_state(space, 0.5 * kPi, 0.0);
    CHECK_THROWS_AS(evolve_exchange(space, spec, equator), std::invalid_argument);

    ExchangeSpec unordered = spec;
    unordered.coupling_time_grid = {0.2, 0.1};
    CHECK_THROWS_AS(evolve_exchange(space, unordered, top), std::invalid_argument);
}

TEST_CASE("evolve_exchange_matches_dense_exponential_oracle") {
    const SpinSpace space(4);
    const int fock_dim = 8;
    const SpinOperators ops = angular_momentum_operators(space);
    const Matrix b = fock_annihilation(fock_dim);
    const SpinState top = spin_coherent_state(space, 0.0, 0.0);

    for (const ExchangeSign sign : {ExchangeSign::Minus, ExchangeSign::Plus}) {
        ExchangeSpec spec;
        spec.sign = sign;
        spec.n_b_initial = 2;
        spec.coupling_time_grid = {0.3, 1.1, 2.0, 3.0};
        const Matrix dense =
            sign == ExchangeSign::Minus
                ? Matrix(kron(ops.jminus.entries, b.adjoint()) + kron(ops.jplus.entries, b))
                : Matrix(kron(ops.jplus.entries, b.adjoint()) + kron(ops.jminus.entries, b));

        Vector initial = Vector::Zero(space.dim() * fock_dim);
        initial((space.dim() - 1) * fock_dim + spec.n_b_initial) = 1.0;

        const std::vector<ExchangeSnapshot> snapshots = evolve_exchange(space, spec, top);
        for (size_t step = 0; step < snapshots.size(); ++step) {
            const double gt = spec.coupling_time_grid[step];
            const Vector dense_state = expm(Complex(0, -1) * gt * dense) * initial;
            const WindowedFockRep& rep = snapshots[step].joint.windowed_fock();
            Matrix dense_grid = Matrix::Zero(space.dim(), rep.fock_dim());
            for (int k = 0; k < space.dim(); ++k)
                for (long col = 0; col < rep.fock_dim(); ++col)
                    dense_grid(k, col) = dense_state(k * fock_dim + rep.fock_offset + col);
            CHECK(max_abs_diff(dense_grid, rep.amplitudes) < 1e-9);
        }
    }
}

TEST_CASE("undepleted_pump_rotation_properties") {
    const SpinSpace space(18);
    const SpinOperators ops = angular_momentum_operators(space);
    const OperatorMatrix at_zero = undepleted_pump_rotation(space, 2.0, 0.0);
    CHECK(max_abs_diff(at_zero.entries, Matrix::Identity(space.dim(), space.dim())) < 1e-13);

    std::mt19937 rng(99);
    std::uniform_real_distribution<double> angle(0.0, 2.0);
    Vector top = Vector::Zero(space.dim());
    top(space.dim() - 1) = 1.0;
    for (int trial = 0; trial < 20; ++trial) {
        const double beta = 1.0 + angle(rng);
        const double gt = angle(rng);
        const OperatorMatrix u = undepleted_pump_rotation(space, beta, gt);
        const Vector rotated = u.entries * top;
        const DensityMatrix rho = density_from_pure(SpinState{space, rotated});
        CHECK(purity(rho) == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(qfi_mixed(rho, ops.jy) <= space.particles() + 1e-6);
    }
}
