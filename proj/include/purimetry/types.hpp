#ifndef PURIMETRY_TYPES_HPP
#define PURIMETRY_TYPES_HPP

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace purimetry {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// A numeric invariant of the computation was violated (broken Hermiticity,
/// trace deficit, truncation loss beyond tolerance, ...).
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// A requested allocation exceeds the configured memory budget.
struct BudgetError : std::runtime_error {
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

/// Dense operator over a finite basis. The hermitian flag is an assertion by
/// the producer; consumers that rely on it verify against `hermitian_defect`.
struct OperatorMatrix {
    Matrix entries;
    bool hermitian = false;

    Eigen::Index dim() const { return entries.rows(); }
};

/// max |A - A^dag| entry, the quantity bounded by the hermitian-flag contract.
inline double hermitian_defect(const Matrix& a) {
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

inline void require_hermitian(const OperatorMatrix& op, const char* who) {
    if (!op.hermitian)
        throw std::invalid_argument(std::string(who) + ": operator is not flagged Hermitian");
    const double scale = op.entries.cwiseAbs().maxCoeff();
    if (hermitian_defect(op.entries) > 1e-12 * std::max(scale, 1.0))
        throw NumericError(std::string(who) + ": Hermitian flag set but matrix is not Hermitian");
}

}  // namespace purimetry

#endif
