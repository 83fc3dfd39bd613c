#pragma once

#include <string>

#include <Eigen/Dense>

#include "circal/errors.hpp"

namespace circal::detail {

// Relative pivot tolerance below which a symmetric system is treated as
// singular. No pseudo-inverse fallback: degeneracy must surface as an error.
inline constexpr double pivot_rel_tol = 1e-12;

// LDLT factorization of a symmetric positive semi-definite matrix with a
// rank check. Throws SingularInformation when the matrix is numerically
// rank-deficient (e.g. duplicated design columns).
class SpdSolver {
public:
    SpdSolver(const Eigen::MatrixXd& m, const std::string& context) : ldlt_(m) {
        if (!m.allFinite()) {
            throw SingularInformation(context + ": matrix has non-finite entries");
        }
        if (ldlt_.info() != Eigen::Success) {
            throw SingularInformation(context + ": LDLT factorization failed");
        }
        const Eigen::VectorXd d = ldlt_.vectorD();
        const double dmax = d.maxCoeff();
        const double dmin = d.minCoeff();
        if (!(dmax > 0.0) || dmin <= dmax * pivot_rel_tol) {
            throw SingularInformation(context + ": pivot ratio " + std::to_string(dmin) +
                                      " / " + std::to_string(dmax) +
                                      " below relative tolerance");
        }
    }

    Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const { return ldlt_.solve(rhs); }
    Eigen::MatrixXd solve(const Eigen::MatrixXd& rhs) const { return ldlt_.solve(rhs); }

private:
    Eigen::LDLT<Eigen::MatrixXd> ldlt_;
};

} // namespace circal::detail
