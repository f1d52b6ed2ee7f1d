#ifndef PURIMETRY_DYNAMICS_HPP
#define PURIMETRY_DYNAMICS_HPP

#include "purimetry/joint_state.hpp"
#include "purimetry/spin_algebra.hpp"
#include "purimetry/spin_space.hpp"
#include "purimetry/state_space.hpp"
#include "purimetry/types.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace purimetry {

/// Default cap on a single windowed-Fock amplitude array.
inline constexpr std::uint64_t kDefaultWindowBudgetBytes = 512ull << 20;

/// Exact state after evolving |initial> (x) |beta> under g Jz b^dag b for a
/// time gt. Never time-stepped: the coupling is diagonal in |m> (x) |n>.
JointState dephasing_purification(const SpinState& initial, Complex beta, double gt);

/// Expand the analytic branch representation onto a truncated Fock grid that
/// captures at least 1 - norm_tolerance of every branch. Throws BudgetError
/// (naming the required dimension) if the grid would exceed the byte budget.
JointState to_windowed_fock(const JointState& joint, double norm_tolerance,
                            std::uint64_t budget_bytes = kDefaultWindowBudgetBytes);

enum class ExchangeSign { Plus, Minus };

struct ExchangeSpec {
    ExchangeSign sign = ExchangeSign::Minus;
    int n_b_initial = 0;
    std::vector<double> coupling_time_grid;  // strictly increasing gt values
};

/// One invariant block of H_pm = g (J_pm b^dag + J_mp b). The conserved
/// quantity is m + n for H_minus and m - n for H_plus; `conserved_doubled`
/// stores its doubled value so half-integers stay exact. The block matrix is
/// real symmetric tridiagonal in units of hbar g, basis ordered by m ascending.
struct ExchangeSector {
    int conserved_doubled = 0;
    std::vector<std::pair<int, long>> basis;  // (spin index, Fock number n)
    RealMatrix hamiltonian;
};

/// All sectors that intersect the initial Fock level spec.n_b_initial.
std::vector<ExchangeSector> exchange_sectors(const SpinSpace& space, const ExchangeSpec& spec);

struct ExchangeSnapshot {
    double gt;
    JointState joint;   // windowed-Fock representation on the sector support
    DensityMatrix probe;  // exact Dicke mixture (single-sector support)
};

/// Evolve |initial> (x) |N_B> under H_pm via per-sector eigendecomposition,
/// exact at every grid time. The probe must be a Jz eigenstate, which pins
/// the state to a single sector.
std::vector<ExchangeSnapshot> evolve_exchange(const SpinSpace& space, const ExchangeSpec& spec,
                                              const SpinState& initial);

/// Undepleted-pump limit of the exchange coupling, b -> beta (real): the
/// evolution collapses to the rotation exp(-i (2 g beta t) Jx).
OperatorMatrix undepleted_pump_rotation(const SpinSpace& space, double beta, double gt);

}  // namespace purimetry

#endif
