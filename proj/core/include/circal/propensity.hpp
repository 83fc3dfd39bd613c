#pragma once

#include <vector>

#include <Eigen/Dense>

namespace circal {

struct FitOptions {
    double tol_score = 1e-9;        // max-norm of the score at the solution
    int max_iterations = 100;
    int max_step_halvings = 30;
    double separation_delta = 1e-8; // fitted values must stay inside (delta, 1-delta)
    double eta_max = 50.0;          // coefficient max-norm treated as divergence
};

struct PropensityFit {
    Eigen::VectorXd eta;         // logistic coefficients, length 1+p
    Eigen::VectorXd fitted;      // pi_hat per unit, each strictly inside (0,1)
    Eigen::MatrixXd fisher_info; // (1/n) sum pi_hat_i (1-pi_hat_i) x_i x_i^T
    int n_iter = 0;
    double max_score_norm = 0.0; // ||sum (A_i - pi_hat_i) x_i||_inf at eta
    std::vector<double> loglik_trace; // log-likelihood after each accepted step
};

// Overflow-safe logistic function, clamped strictly inside (0,1) so that
// downstream inverse-probability weights stay finite.
double logistic(double z);

// Maximum-likelihood logistic regression of treatment on the design columns
// (column 0 must be the intercept). Newton-Raphson with step-halving from
// eta = 0; converged when the score max-norm drops to options.tol_score.
// Throws DegenerateArms (single-arm input), Separation, NoConvergence,
// SingularInformation, DomainError.
PropensityFit fit_logistic(const Eigen::MatrixXd& design,
                           const Eigen::VectorXi& treatment,
                           const FitOptions& options = {});

// Fitted probability at a new covariate vector (x[0] must be 1).
double predict(const PropensityFit& fit, const Eigen::VectorXd& x);

} // namespace circal
