#include "circal/dataset.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "circal/errors.hpp"

namespace circal {

void validate_design(const Eigen::MatrixXd& design) {
    if (design.rows() < 1 || design.cols() < 1) {
        throw DomainError("design matrix is empty");
    }
    for (Eigen::Index i = 0; i < design.rows(); ++i) {
        if (design(i, 0) != 1.0) {
            throw DomainError("design row " + std::to_string(i) +
                              ": column 0 must be the intercept (exactly 1)");
        }
        for (Eigen::Index j = 0; j < design.cols(); ++j) {
            const double x = design(i, j);
            if (!std::isfinite(x)) {
                throw DomainError("design entry (" + std::to_string(i) + "," +
                                  std::to_string(j) + ") is not finite");
            }
            if (std::abs(x) >= covariate_bound) {
                throw DomainError("design entry (" + std::to_string(i) + "," +
                                  std::to_string(j) + ") exceeds the covariate bound " +
                                  std::to_string(covariate_bound));
            }
        }
    }
}

void validate_dataset(const CausalDataset& data) {
    const Eigen::Index n = data.design.rows();
    if (n < 2) {
        throw DomainError("dataset needs at least 2 rows, got " + std::to_string(n));
    }
    if (data.treatment.size() != n || static_cast<Eigen::Index>(data.outcome.size()) != n) {
        throw DomainError("dataset sizes disagree: design " + std::to_string(n) +
                          ", treatment " + std::to_string(data.treatment.size()) +
                          ", outcome " + std::to_string(data.outcome.size()));
    }
    validate_design(data.design);
    Eigen::Index treated = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const int a = data.treatment[i];
        if (a != 0 && a != 1) {
            throw DomainError("treatment[" + std::to_string(i) + "] must be 0 or 1, got " +
                              std::to_string(a));
        }
        treated += a;
    }
    if (treated == 0 || treated == n) {
        throw DegenerateArms(treated == 0 ? "no treated units in the data"
                                          : "no control units in the data");
    }
}

CausalDataset make_dataset(Eigen::MatrixXd design, Eigen::VectorXi treatment,
                           std::vector<Angle> outcome) {
    CausalDataset data{std::move(design), std::move(treatment), std::move(outcome)};
    validate_dataset(data);
    return data;
}

} // namespace circal
