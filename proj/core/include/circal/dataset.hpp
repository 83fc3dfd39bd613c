#pragma once

#include <vector>

#include <Eigen/Dense>

#include "circal/angles.hpp"

namespace circal {

// Covariate magnitudes above this are rejected as unbounded.
inline constexpr double covariate_bound = 1e6;

// One observed sample: design matrix with intercept, treatment indicators,
// and circular outcomes. Row i of `design` belongs with treatment[i] and
// outcome[i].
struct CausalDataset {
    Eigen::MatrixXd design;    // n x (1+p), column 0 identically 1
    Eigen::VectorXi treatment; // entries in {0, 1}
    std::vector<Angle> outcome;

    Eigen::Index n() const { return design.rows(); }
};

// Checks design/treatment/outcome invariants: consistent sizes, n >= 2,
// intercept column of exact ones, finite bounded covariates, binary
// treatment, both arms non-empty. Throws DomainError or DegenerateArms.
void validate_dataset(const CausalDataset& data);

// Validates and returns the assembled dataset.
CausalDataset make_dataset(Eigen::MatrixXd design, Eigen::VectorXi treatment,
                           std::vector<Angle> outcome);

// Design-matrix checks alone (intercept column, finite, |x| < covariate_bound).
void validate_design(const Eigen::MatrixXd& design);

} // namespace circal
