#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "purimetry/dynamics.hpp"
#include "purimetry/qfi.hpp"
#include "test_support.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace purimetry;
using test_support::max_abs_diff;
using test_support::rel_err;

namespace {
constexpr double kPi = std::numbers::pi;

DensityMatrix random_mixture(const SpinSpace& space, unsigned seed, int rank) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> weight(0.1, 1.0);
    Matrix rho = Matrix::Zero(space.dim(), space.dim());
    double total = 0.0;
    for (int r = 0; r < rank; ++r) {
        const Vector v = test_support::random_state(space.dim(), seed * 31 + r);
        const double w = weight(rng);
        rho += w * (v * v.adjoint());
        total += w;
    }
    rho /= total;
    rho = 0.5 * (rho + rho.adjoint().eval());
    rho /= rho.trace().real();
    return DensityMatrix::checked(space, std::move(rho));
}
}  // namespace

TEST_CASE("qfi_mixed_pure_state_reduces_to_variance") {
    const SpinSpace space(10);
    const SpinOperators ops = angular_momentum_operators(space);
    const SpinState psi{space, test_support::random_state(space.dim(), 11)};
    const DensityMatrix rho = density_from_pure(psi);
    const double mixed = qfi_mixed(rho, ops.jy);
    const double pure = qfi_purification(rho, ops.jy);
    CHECK(rel_err(mixed, pure) < 1e-9);
}

TEST_CASE("qfi_mixed_degenerate_and_small_cases") {
    const SpinSpace space(1);
    Matrix half = Matrix::Identity(2, 2) / 2.0;
    const DensityMatrix mixed = DensityMatrix::checked(space, std::move(half));
    const SpinOperators ops = angular_momentum_operators(space);
    CHECK(qfi_mixed(mixed, ops.jz) == doctest::Approx(0.0).epsilon(1e-12));

    // frozen hand evaluation: Case II at N=2 gives exactly 1/3
    const SpinSpace two(2);
    const SpinOperators ops2 = angular_momentum_operators(two);
    CHECK(rel_err(qfi_mixed(case_state(CaseState::II, two), ops2.jy), 1.0 / 3.0) < 1e-9);

    CHECK_THROWS_AS(qfi_mixed(mixed, ops.jplus), std::invalid_argument);
}

TEST_CASE("qfi_purification_case_values") {
    const SpinSpace space(24);
    const SpinOperators ops = angular_momentum_operators(space);
    const double n = space.particles();
    CHECK(rel_err(qfi_purification(case_state(CaseState::I, space), ops.jy), n) < 1e-12);
    CHECK(rel_err(qfi_purification(case_state(CaseState::II, space), ops.jy),
                  0.5 * n * (n + 1.0)) < 1e-12);
    CHECK(rel_err(qfi_purification(case_state(CaseState::III, space), ops.jy), n * n) < 1e-12);
}

TEST_CASE("qfi_convexity_and_generator_shift_invariance") {
    const SpinSpace space(9);
    const SpinOperators ops = angular_momentum_operators(space);
    for (unsigned seed : {1u, 2u, 3u, 4u}) {
        const DensityMatrix rho = random_mixture(space, seed, 3);
        const double upper = qfi_purification(rho, ops.jy);
        const double lower = qfi_mixed(rho, ops.jy);
        CHECK(upper >= lower - 1e-8 * std::abs(upper));

        Matrix shifted = ops.jy.entries + 2.7 * Matrix::Identity(space.dim(), space.dim());
        const double with_shift = qfi_mixed(rho, OperatorMatrix{std::move(shifted), true});
        CHECK(rel_err(with_shift, lower) < 1e-9);
    }
}

TEST_CASE("qfi_breakdown_matches_purification_and_case_structure") {
    const SpinSpace space(14);
    const SpinOperators ops = angular_momentum_operators(space);
    const double n = space.particles();

    const QfiBreakdown case2 = qfi_breakdown(case_state(CaseState::II, space));
    CHECK(std::abs(case2.f1) < 1e-12);
    CHECK(std::abs(case2.f2) < 1e-10);
    CHECK(rel_err(case2.f0, 0.5 * n * (n + 1.0)) < 1e-12);

    const DensityMatrix case1 = case_state(CaseState::I, space);
    const QfiBreakdown b1 = qfi_breakdown(case1);
    CHECK(rel_err(b1.total, qfi_purification(case1, ops.jy)) < 1e-9);
    CHECK(rel_err(b1.total, n) < 1e-9);
    CHECK(b1.f1 <= 1e-12);
}

TEST_CASE("pseudo_cat_breakdown_reaches_heisenberg") {
    const SpinSpace space(40);
    const SpinState max_jy = spin_coherent_state(space, 0.5 * kPi, 0.5 * kPi);
    const JointState joint = dephasing_purification(max_jy, std::sqrt(500.0), kPi);
    const QfiBreakdown breakdown = qfi_breakdown(partial_trace_to_probe(joint));
    const double n = space.particles();
    CHECK(rel_err(breakdown.total, n * n) < 1e-6);
}

TEST_CASE("coherence_dephasing_values") {
    CHECK(coherence_dephasing(0, 730.0, 0.9) == Complex(1.0, 0.0));
    // even-order revival at gt = pi
    CHECK(std::abs(coherence_dephasing(2, 500.0, kPi) - Complex(1.0, 0.0)) < 1e-12);
    // odd orders are crushed: |C_1| = e^(-2 |beta|^2) at gt = pi
    CHECK(std::abs(coherence_dephasing(1, 500.0, kPi)) < 1e-300);
    CHECK(std::abs(std::abs(coherence_dephasing(1, 4.0, kPi)) - std::exp(-8.0)) < 1e-14);

    const CoherenceSpectrum spectrum = coherence_spectrum(35.0, 0.7, 6);
    CHECK(spectrum.values[0] == Complex(1.0, 0.0));
    for (const Complex& c : spectrum.values) CHECK(std::abs(c) <= 1.0 + 1e-12);
}

TEST_CASE("analytic_qfi_dephasing_limits") {
    const SpinSpace space(100);
    const double n = space.particles();
    const QfiBreakdown sql = analytic_qfi_dephasing(space, 0.5 * kPi, 0.0, 500.0, 0.0);
    CHECK(rel_err(sql.total, n) < 1e-12);

    const QfiBreakdown dark = analytic_qfi_dephasing(space, 0.5 * kPi, 0.5 * kPi, 500.0, 0.0);
    CHECK(std::abs(dark.total) < 1e-9 * n * n);

    const QfiBreakdown cat = analytic_qfi_dephasing(space, 0.5 * kPi, 0.5 * kPi, 500.0, kPi);
    CHECK(rel_err(cat.total, n * n) < 1e-10);
}

TEST_CASE("analytic_qfi_matches_matrix_pipeline_on_gt_grid") {
    for (int n : {10, 100}) {
        const SpinSpace space(n);
        for (double beta_sq : {50.0, 500.0}) {
            for (double azimuth : {0.0, 0.4}) {
                const SpinState initial = spin_coherent_state(space, 0.5 * kPi, azimuth);
                for (int i = 0; i < 100; ++i) {
                    const double gt = 0.5 * i / 99.0;
                    const QfiBreakdown analytic =
                        analytic_qfi_dephasing(space, 0.5 * kPi, azimuth, beta_sq, gt);
                    const DensityMatrix rho = partial_trace_to_probe(
                        dephasing_purification(initial, std::sqrt(beta_sq), gt));
                    const QfiBreakdown pipeline = qfi_breakdown(rho);
                    const double scale =
                        std::max({std::abs(analytic.total), std::abs(pipeline.total), 1.0});
                    CHECK(std::abs(analytic.total - pipeline.total) <= 1e-9 * scale);
                    CHECK(std::abs(analytic.f0 - pipeline.f0) <= 1e-9 * scale);
                    CHECK(std::abs(analytic.f1 - pipeline.f1) <= 1e-9 * scale);
                    CHECK(std::abs(analytic.f2 - pipeline.f2) <= 1e-9 * scale);
                }
            }
        }
    }
}

TEST_CASE("dephasing_keeps_mixed_qfi_below_particle_number") {
    // checked along all three axes; the general-direction claim is not tested
    const SpinSpace space(60);
    const SpinOperators ops = angular_momentum_operators(space);
    const SpinState initial = spin_coherent_state(space, 0.5 * kPi, 0.0);
    const double n = space.particles();
    for (int i = 0; i <= 40; ++i) {
        const double gt = 0.25 * i / 40.0;
        const DensityMatrix rho =
            partial_trace_to_probe(dephasing_purification(initial, std::sqrt(500.0), gt));
        CHECK(qfi_mixed(rho, ops.jy) <= n + 1e-6);
        CHECK(qfi_mixed(rho, ops.jx) <= n + 1e-6);
        CHECK(qfi_mixed(rho, ops.jz) <= n + 1e-6);
    }
}

TEST_CASE("qfi_mixed_rejects_indefinite_states") {
    const SpinSpace space(1);
    Matrix indefinite = Matrix::Zero(2, 2);
    indefinite(0, 0) = 1.5;
    indefinite(1, 1) = -0.5;
    const DensityMatrix bad = DensityMatrix::checked(space, std::move(indefinite));
    const SpinOperators ops = angular_momentum_operators(space);
    CHECK_THROWS_AS(qfi_mixed(bad, ops.jy), NumericError);
    CHECK_THROWS_AS(bad.validate_spectrum(), NumericError);
}

TEST_CASE("qfi_spin_coherent_closed_form") {
    const SpinSpace space(40);
    CHECK(qfi_spin_coherent(space, 0.5 * kPi, 0.0) == doctest::Approx(40.0));
    CHECK(qfi_spin_coherent(space, 0.5 * kPi, 0.5 * kPi) == doctest::Approx(0.0));

    // oracle: direct variance through the operator matrices
    const SpinOperators ops = angular_momentum_operators(space);
    const DensityMatrix rho = density_from_pure(spin_coherent_state(space, 1.0, 0.5));
    CHECK(rel_err(qfi_spin_coherent(space, 1.0, 0.5), qfi_purification(rho, ops.jy)) < 1e-10);
    for (double theta : {0.3, 1.2, 2.2}) {
        for (double azimuth : {0.0, 0.9, 2.8}) {
            CHECK(qfi_spin_coherent(space, theta, azimuth) <= space.particles() + 1e-12);
        }
    }
}

TEST_CASE("bch_identity_on_explicit_joint_space") {
    // e^(i gt Jz Nb) Jy e^(-i gt Jz Nb) = sin(gt Nb) Jx + cos(gt Nb) Jy on the
    // product basis; all exponentials are diagonal there, so the check is
    // assembled without any matrix-exponential machinery.
    const SpinSpace space(4);
    const int fock_dim = 12;
    const SpinOperators ops = angular_momentum_operators(space);
    const Matrix eye_fock = Matrix::Identity(fock_dim, fock_dim);
    const Matrix jy_joint = test_support::kron(ops.jy.entries, eye_fock);
    const Matrix jx_joint = test_support::kron(ops.jx.entries, eye_fock);

    const double gt = 0.37;
    Matrix sin_fock = Matrix::Zero(fock_dim, fock_dim);
    Matrix cos_fock = Matrix::Zero(fock_dim, fock_dim);
    for (int nb = 0; nb < fock_dim; ++nb) {
        sin_fock(nb, nb) = std::sin(gt * nb);
        cos_fock(nb, nb) = std::cos(gt * nb);
    }
    const Matrix rhs = test_support::kron(ops.jx.entries, sin_fock) +
                       test_support::kron(ops.jy.entries, cos_fock);

    Vector conjugation_phase(space.dim() * fock_dim);
    for (int k = 0; k < space.dim(); ++k) {
        for (int nb = 0; nb < fock_dim; ++nb) {
            const double angle = gt * space.m(k) * nb;
            conjugation_phase(k * fock_dim + nb) = Complex(std::cos(angle), std::sin(angle));
        }
    }
    const Matrix lhs = conjugation_phase.asDiagonal() * jy_joint *
                       conjugation_phase.conjugate().asDiagonal();
    CHECK(max_abs_diff(lhs, rhs) < 1e-10);
    (void)jx_joint;
}
