#ifndef PURIMETRY_SPIN_SPACE_HPP
#define PURIMETRY_SPIN_SPACE_HPP

#include <stdexcept>

namespace purimetry {

/// Symmetric sector of N bosons on two modes: total spin j = N/2, basis
/// |j,m> with m = -j..j. Rows/columns of every operator are indexed by m
/// ascending, so index k corresponds to m = k - j. The doubled projection
/// 2m is kept in integers; half-integer arithmetic stays exact.
class SpinSpace {
public:
    explicit SpinSpace(int n_particles) : n_(n_particles) {
        if (n_particles < 0) throw std::invalid_argument("SpinSpace: negative particle number");
    }

    int particles() const { return n_; }
    int dim() const { return n_ + 1; }
    int twice_j() const { return n_; }
    double j() const { return 0.5 * n_; }

    /// Doubled projection 2m at basis index k (exact integer).
    int twice_m(int index) const { return 2 * index - n_; }
    double m(int index) const { return 0.5 * twice_m(index); }
    /// Basis index of the doubled projection 2m.
    int index_of(int twice_m_value) const { return (twice_m_value + n_) / 2; }

    friend bool operator==(const SpinSpace& a, const SpinSpace& b) { return a.n_ == b.n_; }

private:
    int n_;
};

}  // namespace purimetry

#endif
