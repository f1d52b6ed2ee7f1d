#include "purimetry/estimation.hpp"

#include "purimetry/numerics.hpp"
#include "purimetry/qfi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace purimetry {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// ln <n|gamma> of a coherent-state Fock amplitude, log space.
Complex coherent_fock_amplitude(Complex gamma, long n) {
    const double mod_sq = std::norm(gamma);
    if (mod_sq == 0.0) return n == 0 ? 1.0 : 0.0;
    const double log_mag =
        -0.5 * mod_sq + 0.5 * n * std::log(mod_sq) - 0.5 * std::lgamma(n + 1.0);
    const double phase = n * std::arg(gamma);
    return std::exp(log_mag) * Complex(std::cos(phase), std::sin(phase));
}

SignalStats assemble_stats(double phase, double mean, double second, double dmean,
                           double limit_delta_phi) {
    SignalStats stats;
    stats.phase = phase;
    stats.mean = mean;
    stats.second_moment = second;
    stats.variance = second - mean * mean;
    stats.dmean_dphase = dmean;
    const double var = std::max(stats.variance, 0.0);
    if (dmean != 0.0) {
        stats.delta_phi = std::sqrt(var) / std::abs(dmean);
    } else if (var <= 1e-14 * std::max(1.0, std::abs(second)) &&
               std::isfinite(limit_delta_phi)) {
        // removable 0/0 singularity of the exact signals at phi = 0; the
        // variance bound absorbs roundoff of second - mean^2 only
        stats.delta_phi = limit_delta_phi;
    } else {
        stats.delta_phi = kInf;
    }
    return stats;
}

void parallel_for(long count, const std::function<void(long)>& body) {
    const unsigned threads = std::min<unsigned>(std::thread::hardware_concurrency(),
                                                static_cast<unsigned>(count));
    if (threads <= 1) {
        for (long i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t]() {
            for (long i = t; i < count; i += threads) body(i);
        });
    }
    for (std::thread& th : pool) th.join();
}

// ---------------------------------------------------------------------------
// Dicke-mixture signal closed form
// ---------------------------------------------------------------------------

struct DickeSignalValues {
    double mean, second, dmean;
};

DickeSignalValues dicke_signal_values(const SignalMoments& m, double phase) {
    const double c = std::cos(phase), s = std::sin(phase);
    const double cm1 = c - 1.0;
    DickeSignalValues v;
    v.mean = m.jz2 * cm1 * cm1 + m.jx2 * s * s;
    v.second = m.jz4 * cm1 * cm1 * cm1 * cm1 + m.jx4 * s * s * s * s +
               m.zx_sym * s * s * cm1 * cm1 + 2.0 * m.zxy_comm * s * s * c * cm1 +
               m.jy2 * c * c * s * s;
    v.dmean = 2.0 * s * (c * m.jx2 - cm1 * m.jz2);
    return v;
}

// ---------------------------------------------------------------------------
// Windowed-Fock signal engine
// ---------------------------------------------------------------------------

enum class AuxReadout { PhaseQuadrature, FockNumber };

// Normalized, zero-padded copy of a windowed purification together with the
// coefficient tables of the quadratic signal operator
//   A(phi) = cos(phi) Jz - sin(phi) Jx - S_B,
// S_B = Y_B * y_scale (phase quadrature) or S_B = j + s (N_B - n) (counting).
struct QuadraticSignal {
    AuxReadout readout = AuxReadout::PhaseQuadrature;
    double y_scale = 0;
    long n0 = 0;
    Matrix psi;
    Vector jz_scale;  // m per spin row
    Vector jx_scale;  // raising elements / 2, row boundaries
    Vector ladder;    // sqrt(n0 + c + 1), column boundaries
    Vector counting;  // j + s (N_B - n) per column
};

QuadraticSignal prepare_quadratic_signal(const WindowedFockRep& rep, long pad,
                                         AuxReadout readout, double y_scale, double fock_sign,
                                         long n_b) {
    const double mass = rep.total_mass();
    if (std::abs(1.0 - mass) > 1e-8)
        throw NumericError("signal evaluation: window norm deficit exceeds 1e-8");
    QuadraticSignal sig;
    sig.readout = readout;
    sig.y_scale = y_scale;
    const long pad_below = std::min<long>(pad, rep.fock_offset);
    sig.n0 = rep.fock_offset - pad_below;
    const long cols = rep.fock_dim() + pad_below + pad;
    sig.psi = Matrix::Zero(rep.space.dim(), cols);
    sig.psi.block(0, pad_below, rep.space.dim(), rep.fock_dim()) =
        rep.amplitudes / std::sqrt(mass);

    const int dim = rep.space.dim();
    sig.jz_scale.resize(dim);
    sig.jx_scale.resize(std::max(dim - 1, 0));
    const double jj = 0.25 * rep.space.twice_j() * (rep.space.twice_j() + 2);
    for (int k = 0; k < dim; ++k) {
        sig.jz_scale(k) = rep.space.m(k);
        if (k + 1 < dim) {
            const int twice_m = rep.space.twice_m(k);
            sig.jx_scale(k) = 0.5 * std::sqrt(jj - 0.25 * twice_m * (twice_m + 2));
        }
    }
    sig.ladder.resize(std::max(cols - 1, 0L));
    for (long c = 0; c + 1 < cols; ++c)
        sig.ladder(c) = std::sqrt(static_cast<double>(sig.n0 + c + 1));
    sig.counting.resize(cols);
    for (long c = 0; c < cols; ++c)
        sig.counting(c) = rep.space.j() + fock_sign * static_cast<double>(n_b - (sig.n0 + c));
    return sig;
}

Matrix apply_quadratic(const QuadraticSignal& sig, const Matrix& in, double cphi, double sphi) {
    const long dim = in.rows(), cols = in.cols();
    Matrix out(dim, cols);
    const Complex iy = sig.y_scale * Complex(0.0, 1.0);
    const bool quadrature = sig.readout == AuxReadout::PhaseQuadrature;
    // one fused pass, column-major friendly: Y_B = i (b - b^dag) couples the
    // neighboring Fock columns, Jx the neighboring spin rows
    for (long c = 0; c < cols; ++c) {
        const Complex up = c + 1 < cols ? iy * sig.ladder(c) : Complex(0.0, 0.0);
        const Complex down = c > 0 ? iy * sig.ladder(c - 1) : Complex(0.0, 0.0);
        const Complex count = sig.counting(c);
        for (long k = 0; k < dim; ++k) {
            Complex acc = cphi * sig.jz_scale(k) * in(k, c);
            if (k > 0) acc -= sphi * sig.jx_scale(k - 1) * in(k - 1, c);
            if (k + 1 < dim) acc -= sphi * sig.jx_scale(k) * in(k + 1, c);
            if (quadrature) {
                if (c + 1 < cols) acc -= up * in(k, c + 1);
                if (c > 0) acc += down * in(k, c - 1);
            } else {
                acc -= count * in(k, c);
            }
            out(k, c) = acc;
        }
    }
    return out;
}

SignalStats quadratic_signal_stats(const QuadraticSignal& sig, double phase,
                                   double limit_delta_phi) {
    const double cphi = std::cos(phase), sphi = std::sin(phase);
    const Matrix once = apply_quadratic(sig, sig.psi, cphi, sphi);
    const double mean = once.squaredNorm();
    const Matrix twice = apply_quadratic(sig, once, cphi, sphi);
    const double second = twice.squaredNorm();
    const double dmean = central_derivative(
        [&](double p) {
            return apply_quadratic(sig, sig.psi, std::cos(p), std::sin(p)).squaredNorm();
        },
        phase, 1e-5);
    return assemble_stats(phase, mean, second, dmean, limit_delta_phi);
}

// ---------------------------------------------------------------------------
// Parity readout
// ---------------------------------------------------------------------------

// Sum over the even-offset (same-branch) pairs of the spin-side matrix
// element table, weighted by the branch sign.
double branch_masked_expectation(const Vector& c, const Matrix& table, const Matrix& parity_diag) {
    const Eigen::Index dim = c.size();
    Complex acc = 0.0;
    for (Eigen::Index n = 0; n < dim; ++n)
        for (Eigen::Index m = n % 2; m < dim; m += 2)
            acc += std::conj(c(n)) * c(m) * table(n, m) * parity_diag(m, m);
    return acc.real();
}

SignalStats parity_stats_coherent(const CoherentBranchRep& rep, double phase) {
    if (std::abs(Complex(std::cos(rep.gt), -std::sin(rep.gt)) + Complex(1.0, 0.0)) > 1e-9)
        throw std::invalid_argument(
            "exact_parity_stats: branch representation is not a two-branch (gt = pi) state");
    const SpinSpace& space = rep.probe.space;
    const SpinOperators ops = angular_momentum_operators(space);
    const OperatorMatrix pi_a = parity_operator(space);
    const OperatorMatrix u = mz_unitary(space, phase);

    const Matrix signal_table = u.entries.adjoint() * pi_a.entries * u.entries;
    const Matrix slope_op =
        Complex(0, 1) * (ops.jy.entries * pi_a.entries - pi_a.entries * ops.jy.entries);
    const Matrix slope_table = u.entries.adjoint() * slope_op * u.entries;

    // Cross-branch terms vanish exactly for the cat-basis readout; the
    // same-branch elements pick up sqrt(1 - q^2) from the overlap q.
    const double q = std::exp(-2.0 * std::norm(rep.beta));
    const double factor = std::sqrt(std::max(0.0, 1.0 - q * q));
    const Vector& c = rep.probe.amplitudes;
    const double mean = factor * branch_masked_expectation(c, signal_table, pi_a.entries);
    const double dmean = factor * branch_masked_expectation(c, slope_table, pi_a.entries);

    double limit = kInf;
    if (dmean == 0.0) {
        const DensityMatrix rho = partial_trace_to_probe(JointState(rep));
        const double jy2 = (rho.entries * ops.jy.entries * ops.jy.entries).trace().real();
        limit = 1.0 / std::sqrt(4.0 * jy2);
    }
    return assemble_stats(phase, mean, 1.0, dmean, limit);
}

SignalStats parity_stats_windowed(const WindowedFockRep& rep, double phase) {
    const SpinSpace& space = rep.space;
    const long cols = rep.fock_dim();
    const double mass = rep.total_mass();
    if (std::abs(1.0 - mass) > 1e-8)
        throw NumericError("exact_parity_stats: window norm deficit exceeds 1e-8");

    // Witness rows for the two branches: heaviest even and odd spin row.
    int best_even = -1, best_odd = -1;
    double w_even = -1.0, w_odd = -1.0;
    for (int k = 0; k < space.dim(); ++k) {
        const double w = rep.amplitudes.row(k).squaredNorm();
        if (k % 2 == 0 && w > w_even) { w_even = w; best_even = k; }
        if (k % 2 == 1 && w > w_odd) { w_odd = w; best_odd = k; }
    }
    if (best_even < 0 || best_odd < 0 || w_even <= 0.0 || w_odd <= 0.0)
        throw std::invalid_argument("exact_parity_stats: state has no two-branch structure");

    const auto branch_label = [&](int row) {
        Complex num = 0.0;
        double den = 0.0;
        for (long col = 0; col + 1 < cols; ++col) {
            num += std::conj(rep.amplitudes(row, col)) *
                   std::sqrt(static_cast<double>(rep.fock_offset + col + 1)) *
                   rep.amplitudes(row, col + 1);
            den += std::norm(rep.amplitudes(row, col));
        }
        den += std::norm(rep.amplitudes(row, cols - 1));
        return num / den;  // <b> of the row, the coherent label
    };
    const Complex gamma = branch_label(best_even);

    Vector g_plus(cols), g_minus(cols);
    for (long col = 0; col < cols; ++col) {
        g_plus(col) = coherent_fock_amplitude(gamma, rep.fock_offset + col);
        g_minus(col) = coherent_fock_amplitude(-gamma, rep.fock_offset + col);
    }
    Vector cat_even = g_plus + g_minus;
    Vector cat_odd = g_plus - g_minus;
    const double norm_even = cat_even.norm(), norm_odd = cat_odd.norm();
    if (norm_even < 1e-8 || norm_odd < 1e-8)
        throw std::invalid_argument("exact_parity_stats: branches are not distinguishable");
    cat_even /= norm_even;
    cat_odd /= norm_odd;

    // The state must live in the two-branch span for the readout to be the
    // stated observable.
    const Matrix projector = cat_even * cat_even.adjoint() + cat_odd * cat_odd.adjoint();
    const double residual = (rep.amplitudes - rep.amplitudes * projector.transpose()).norm();
    if (residual > 1e-6)
        throw std::invalid_argument("exact_parity_stats: state leaves the two-branch span");

    // Branch-sign observable: swaps the even and odd cat states.
    const Matrix pi_b = cat_even * cat_odd.adjoint() + cat_odd * cat_even.adjoint();

    const SpinOperators ops = angular_momentum_operators(space);
    const OperatorMatrix pi_a = parity_operator(space);
    const OperatorMatrix u = mz_unitary(space, phase);
    const Matrix signal_table = u.entries.adjoint() * pi_a.entries * u.entries;
    const Matrix slope_op =
        Complex(0, 1) * (ops.jy.entries * pi_a.entries - pi_a.entries * ops.jy.entries);
    const Matrix slope_table = u.entries.adjoint() * slope_op * u.entries;

    const Matrix psi = rep.amplitudes / std::sqrt(mass);
    const auto expectation = [&](const Matrix& table) {
        const Matrix mapped = table * psi * pi_b.transpose();
        return (psi.conjugate().cwiseProduct(mapped)).sum().real();
    };
    double mean = expectation(signal_table);
    double dmean = expectation(slope_table);

    // Orientation: the branch-sign assignment must match Pi_A's convention so
    // that the unrotated pseudo-cat is the +1 eigenstate.
    const double orientation_probe =
        (pi_a.entries * psi * pi_b.transpose()).cwiseProduct(psi.conjugate()).sum().real();
    if (orientation_probe < 0.0) {
        mean = -mean;
        dmean = -dmean;
    }

    double limit = kInf;
    if (dmean == 0.0) {
        const DensityMatrix rho = partial_trace_to_probe(JointState(rep));
        const double jy2 = (rho.entries * ops.jy.entries * ops.jy.entries).trace().real();
        limit = 1.0 / std::sqrt(4.0 * jy2);
    }
    return assemble_stats(phase, mean, 1.0, dmean, limit);
}

// ---------------------------------------------------------------------------
// Quadrature-parity readout
// ---------------------------------------------------------------------------

SignalStats quadrature_parity_stats_windowed(const WindowedFockRep& rep, double phase,
                                             double beta) {
    if (beta <= 0.0)
        throw std::invalid_argument("approx_quadrature_parity_stats: beta must be positive");
    const SpinSpace& space = rep.space;
    const double mass = rep.total_mass();
    if (std::abs(1.0 - mass) > 1e-8)
        throw NumericError("approx_quadrature_parity_stats: window norm deficit exceeds 1e-8");

    const OperatorMatrix pi_a = parity_operator(space);
    const Matrix psi_norm = rep.amplitudes / std::sqrt(mass);
    const long cols = rep.fock_dim();

    // Pi_A (x) X_B / (2 beta) applied to the rotated state. X_B couples
    // adjacent shells, so the image carries one padding shell on each side;
    // padded column col+1 holds source shell fock_offset + col.
    const auto apply_signal = [&](const Matrix& psi) {
        Matrix mapped = Matrix::Zero(space.dim(), cols + 2);
        for (long col = 0; col < cols; ++col) {
            const long n = rep.fock_offset + col;
            const double up = std::sqrt(static_cast<double>(n + 1));
            const double down = n > 0 ? std::sqrt(static_cast<double>(n)) : 0.0;
            for (int k = 0; k < space.dim(); ++k) {
                const Complex scaled = pi_a.entries(k, k) * psi(k, col) / (2.0 * beta);
                mapped(k, col) += down * scaled;    // b lowers: shell n-1
                mapped(k, col + 2) += up * scaled;  // b^dag raises: shell n+1
            }
        }
        return mapped;
    };
    const auto signal_mean = [&](double p) {
        const Matrix psi_rot = mz_unitary(space, p).entries * psi_norm;
        const Matrix mapped = apply_signal(psi_rot);
        Complex acc = 0.0;
        for (long col = 0; col < cols; ++col)
            for (int k = 0; k < space.dim(); ++k)
                acc += std::conj(psi_rot(k, col)) * mapped(k, col + 1);
        return acc.real();
    };

    const Matrix psi_rot = mz_unitary(space, phase).entries * psi_norm;
    const Matrix mapped = apply_signal(psi_rot);
    Complex mean_acc = 0.0;
    for (long col = 0; col < cols; ++col)
        for (int k = 0; k < space.dim(); ++k)
            mean_acc += std::conj(psi_rot(k, col)) * mapped(k, col + 1);
    const double mean = mean_acc.real();
    const double second = mapped.squaredNorm();
    const double dmean = central_derivative(signal_mean, phase, 1e-5);
    return assemble_stats(phase, mean, second, dmean, kInf);
}

}  // namespace

// ---------------------------------------------------------------------------
// public surface
// ---------------------------------------------------------------------------

SignalMoments signal_moments(const DensityMatrix& rho) {
    const SpinOperators ops = angular_momentum_operators(rho.space);
    const Matrix& jx = ops.jx.entries;
    const Matrix& jy = ops.jy.entries;
    const Matrix& jz = ops.jz.entries;
    const Matrix jx2 = jx * jx;
    const Matrix jz2 = jz * jz;
    const auto expect = [&](const Matrix& op) { return (rho.entries * op).trace().real(); };

    SignalMoments m;
    m.jz2 = expect(jz2);
    m.jx2 = expect(jx2);
    m.jy2 = expect(jy * jy);
    m.jz4 = expect(jz2 * jz2);
    m.jx4 = expect(jx2 * jx2);
    m.zx_sym = expect(jz2 * jx2 + jx2 * jz2 + 4.0 * (jz * jx * jx * jz));
    m.zxy_comm = (rho.entries * Complex(0, 1) * (jz * jx * jy - jy * jx * jz)).trace().real();
    return m;
}

SignalStats exact_dicke_stats(const SignalMoments& m, double phase) {
    const DickeSignalValues v = dicke_signal_values(m, phase);
    const double limit = 1.0 / std::sqrt(4.0 * m.jy2);
    return assemble_stats(phase, v.mean, v.second, v.dmean, limit);
}

SignalStats exact_dicke_stats(const DensityMatrix& rho, double phase) {
    return exact_dicke_stats(signal_moments(rho), phase);
}

SignalStats exact_parity_stats(const JointState& joint, double phase) {
    if (joint.is_coherent_branch()) return parity_stats_coherent(joint.coherent_branch(), phase);
    return parity_stats_windowed(joint.windowed_fock(), phase);
}

SignalStats approx_homodyne_stats(const JointState& joint, double phase, double beta, double gt) {
    if (beta <= 0.0 || gt <= 0.0)
        throw std::invalid_argument("approx_homodyne_stats: beta and gt must be positive");
    if (joint.is_coherent_branch()) {
        const JointState windowed = to_windowed_fock(joint, 1e-12);
        return approx_homodyne_stats(windowed, phase, beta, gt);
    }
    const QuadraticSignal sig =
        prepare_quadratic_signal(joint.windowed_fock(), 3, AuxReadout::PhaseQuadrature,
                                 1.0 / (2.0 * beta * gt), 0.0, 0);
    return quadratic_signal_stats(sig, phase, kInf);
}

double analytic_homodyne_sensitivity(const SpinSpace& space, double phase, double beta, double gt,
                                     const SignalMoments& case_moments) {
    (void)space;
    const DickeSignalValues v = dicke_signal_values(case_moments, phase);
    const double variance = v.second - v.mean * v.mean;
    const double bg = 2.0 * beta * gt;
    const double sin_half = std::sin(0.5 * phase);
    const double cm1 = std::cos(phase) - 1.0;
    const double s = std::sin(phase);
    const double corrected = variance - sin_half * sin_half / (beta * beta) * case_moments.jz4 +
                             2.0 / (bg * bg * bg * bg) +
                             4.0 / (bg * bg) *
                                 (cm1 * cm1 * case_moments.jz2 + s * s * case_moments.jx2);
    if (v.dmean == 0.0) return kInf;
    return std::sqrt(std::max(corrected, 0.0)) / std::abs(v.dmean);
}

SignalStats approx_quadrature_parity_stats(const JointState& joint, double phase, double beta) {
    if (joint.is_coherent_branch()) {
        const JointState windowed = to_windowed_fock(joint, 1e-12);
        return approx_quadrature_parity_stats(windowed, phase, beta);
    }
    return quadrature_parity_stats_windowed(joint.windowed_fock(), phase, beta);
}

SignalStats fock_counting_stats(const JointState& joint, double phase, int n_b_initial,
                                ExchangeSign sign) {
    if (!joint.is_windowed_fock())
        throw std::invalid_argument("fock_counting_stats: expected a windowed exchange state");
    const WindowedFockRep& rep = joint.windowed_fock();
    const SpinSpace& space = rep.space;

    // S_B = j + s (N_B - n) with s chosen so that S_B|Psi> = Jz|Psi> holds on
    // the sector reached from |j, j> (x) |N_B>: s = +1 for H_minus, -1 for
    // H_plus. Any support off that sector breaks the identity, so reject it.
    const double fock_sign = sign == ExchangeSign::Minus ? 1.0 : -1.0;
    const double total = rep.total_mass();
    for (int k = 0; k < space.dim(); ++k) {
        for (long col = 0; col < rep.fock_dim(); ++col) {
            if (std::norm(rep.amplitudes(k, col)) < 1e-20 * total) continue;
            const long twice_n = 2 * (rep.fock_offset + col);
            const long expected = sign == ExchangeSign::Minus
                                      ? 2L * n_b_initial + space.twice_j() - space.twice_m(k)
                                      : 2L * n_b_initial + space.twice_m(k) - space.twice_j();
            if (twice_n != expected)
                throw std::invalid_argument(
                    "fock_counting_stats: support outside a single exchange sector");
        }
    }

    const QuadraticSignal sig = prepare_quadratic_signal(rep, 1, AuxReadout::FockNumber, 0.0,
                                                         fock_sign, n_b_initial);
    const DensityMatrix rho = partial_trace_to_probe(joint);
    const SpinOperators ops = angular_momentum_operators(space);
    const double jy2 = (rho.entries * ops.jy.entries * ops.jy.entries).trace().real();
    const double limit = 1.0 / std::sqrt(4.0 * jy2);
    return quadratic_signal_stats(sig, phase, limit);
}

std::vector<SignalStats> sensitivity_curve(const SignalKind& kind, const SignalInput& state,
                                           std::span<const double> phase_grid) {
    if (phase_grid.empty()) throw std::invalid_argument("sensitivity_curve: empty phase grid");
    std::vector<SignalStats> curve(phase_grid.size());

    switch (kind.tag) {
        case SignalKind::Tag::ExactDicke: {
            const DensityMatrix& rho = std::get<DensityMatrix>(state);
            const SignalMoments moments = signal_moments(rho);
            for (size_t i = 0; i < phase_grid.size(); ++i)
                curve[i] = exact_dicke_stats(moments, phase_grid[i]);
            return curve;
        }
        case SignalKind::Tag::ExactParity: {
            const JointState& joint = std::get<JointState>(state);
            parallel_for(static_cast<long>(phase_grid.size()), [&](long i) {
                curve[i] = exact_parity_stats(joint, phase_grid[i]);
            });
            return curve;
        }
        case SignalKind::Tag::ApproxHomodyne: {
            const JointState& joint = std::get<JointState>(state);
            const JointState windowed =
                joint.is_coherent_branch() ? to_windowed_fock(joint, 1e-12) : joint;
            const QuadraticSignal sig =
                prepare_quadratic_signal(windowed.windowed_fock(), 3,
                                         AuxReadout::PhaseQuadrature,
                                         1.0 / (2.0 * kind.beta * kind.gt), 0.0, 0);
            parallel_for(static_cast<long>(phase_grid.size()), [&](long i) {
                curve[i] = quadratic_signal_stats(sig, phase_grid[i], kInf);
            });
            return curve;
        }
        case SignalKind::Tag::ApproxQuadratureParity: {
            const JointState& joint = std::get<JointState>(state);
            const JointState windowed =
                joint.is_coherent_branch() ? to_windowed_fock(joint, 1e-12) : joint;
            parallel_for(static_cast<long>(phase_grid.size()), [&](long i) {
                curve[i] =
                    approx_quadrature_parity_stats(windowed, phase_grid[i], kind.beta);
            });
            return curve;
        }
        case SignalKind::Tag::FockCounting: {
            const JointState& joint = std::get<JointState>(state);
            parallel_for(static_cast<long>(phase_grid.size()), [&](long i) {
                curve[i] = fock_counting_stats(joint, phase_grid[i], kind.n_b_initial, kind.sign);
            });
            return curve;
        }
    }
    throw std::invalid_argument("sensitivity_curve: unknown signal kind");
}

double min_delta_phi(std::span<const SignalStats> curve) {
    double scale = 1.0;
    for (const SignalStats& s : curve) scale = std::max(scale, std::abs(s.mean));
    double best = kInf;
    for (const SignalStats& s : curve) {
        if (!std::isfinite(s.delta_phi)) continue;
        if (std::abs(s.dmean_dphase) < 1e-12 * scale) continue;
        best = std::min(best, s.delta_phi);
    }
    return best;
}

}  // namespace purimetry
