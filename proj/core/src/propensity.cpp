#include "circal/propensity.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "circal/dataset.hpp"
#include "circal/errors.hpp"
#include "spd_solve.hpp"

namespace circal {

namespace {

// log(1 + exp(z)) without overflow.
double softplus(double z) {
    return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
}

double log_likelihood(const Eigen::VectorXd& a, const Eigen::VectorXd& z) {
    double ll = 0.0;
    for (Eigen::Index i = 0; i < z.size(); ++i) {
        ll += a[i] * z[i] - softplus(z[i]);
    }
    return ll;
}

Eigen::VectorXd fitted_probabilities(const Eigen::VectorXd& z) {
    Eigen::VectorXd p(z.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) p[i] = logistic(z[i]);
    return p;
}

Eigen::MatrixXd information_sum(const Eigen::MatrixXd& x, const Eigen::VectorXd& p) {
    const Eigen::VectorXd w = p.array() * (1.0 - p.array());
    return x.transpose() * w.asDiagonal() * x;
}

} // namespace

double logistic(double z) {
    double p;
    if (z >= 0.0) {
        p = 1.0 / (1.0 + std::exp(-z));
    } else {
        const double e = std::exp(z);
        p = e / (1.0 + e);
    }
    // Saturate strictly inside (0,1): 1/p and 1/(1-p) must stay finite.
    constexpr double lo = std::numeric_limits<double>::min();
    constexpr double hi = 1.0 - std::numeric_limits<double>::epsilon() / 2.0;
    return std::min(std::max(p, lo), hi);
}

PropensityFit fit_logistic(const Eigen::MatrixXd& design,
                           const Eigen::VectorXi& treatment,
                           const FitOptions& options) {
    validate_design(design);
    const Eigen::Index n = design.rows();
    const Eigen::Index k = design.cols();
    if (treatment.size() != n) {
        throw DomainError("fit_logistic: " + std::to_string(n) + " design rows vs " +
                          std::to_string(treatment.size()) + " treatment values");
    }
    if (n < k) {
        throw DomainError("fit_logistic: " + std::to_string(n) + " rows cannot identify " +
                          std::to_string(k) + " coefficients");
    }
    Eigen::Index treated = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const int a = treatment[i];
        if (a != 0 && a != 1) {
            throw DomainError("treatment[" + std::to_string(i) + "] must be 0 or 1, got " +
                              std::to_string(a));
        }
        treated += a;
    }
    if (treated == 0 || treated == n) {
        throw DegenerateArms(treated == 0 ? "fit_logistic: no treated units"
                                          : "fit_logistic: no control units");
    }

    const Eigen::VectorXd a = treatment.cast<double>();
    Eigen::VectorXd eta = Eigen::VectorXd::Zero(k);
    Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
    double ll = log_likelihood(a, z);

    PropensityFit fit;
    fit.loglik_trace.push_back(ll);

    double score_norm = std::numeric_limits<double>::infinity();
    for (int iter = 0; iter <= options.max_iterations; ++iter) {
        const Eigen::VectorXd p = fitted_probabilities(z);
        const Eigen::VectorXd score = design.transpose() * (a - p);
        score_norm = score.lpNorm<Eigen::Infinity>();

        // A separated fit can drive the score to zero while eta diverges, so
        // test for divergence before declaring convergence.
        const bool escaped = p.minCoeff() < options.separation_delta ||
                             p.maxCoeff() > 1.0 - options.separation_delta;
        if (eta.lpNorm<Eigen::Infinity>() > options.eta_max && escaped) {
            throw Separation("fit_logistic: fitted probabilities at the (0,1) boundary with "
                             "coefficient max-norm " +
                             std::to_string(eta.lpNorm<Eigen::Infinity>()) +
                             "; data are (quasi-)separated");
        }
        if (score_norm <= options.tol_score) {
            fit.eta = eta;
            fit.fitted = p;
            fit.fisher_info = information_sum(design, p) / static_cast<double>(n);
            fit.n_iter = iter;
            fit.max_score_norm = score_norm;
            return fit;
        }
        if (iter == options.max_iterations) break;

        const Eigen::MatrixXd info = information_sum(design, p);
        const Eigen::VectorXd step =
            detail::SpdSolver(info, "fit_logistic Newton step").solve(score);

        // Near the optimum a Newton step improves the log-likelihood by less
        // than its own rounding noise, so acceptance allows a slack of a few
        // ulps; without it the line search rejects every step and the solver
        // stalls with the score just above tolerance.
        const double ll_slack = 1e-11 * (1.0 + std::abs(ll));
        double t = 1.0;
        bool accepted = false;
        for (int h = 0; h <= options.max_step_halvings; ++h) {
            const Eigen::VectorXd eta_next = eta + t * step;
            const Eigen::VectorXd z_next = design * eta_next;
            const double ll_next = log_likelihood(a, z_next);
            if (ll_next >= ll - ll_slack) {
                eta = eta_next;
                z = z_next;
                ll = ll_next;
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted) {
            throw NoConvergence("fit_logistic: step halving exhausted at iteration " +
                                std::to_string(iter + 1) + " (score max-norm " +
                                std::to_string(score_norm) + ")");
        }
        fit.loglik_trace.push_back(ll);
    }
    throw NoConvergence("fit_logistic: no convergence after " +
                        std::to_string(options.max_iterations) +
                        " iterations (score max-norm " + std::to_string(score_norm) + ")");
}

double predict(const PropensityFit& fit, const Eigen::VectorXd& x) {
    if (x.size() != fit.eta.size()) {
        throw DomainError("predict: covariate length " + std::to_string(x.size()) +
                          " vs " + std::to_string(fit.eta.size()) + " coefficients");
    }
    if (x.size() == 0 || x[0] != 1.0) {
        throw DomainError("predict: x[0] must be the intercept (exactly 1)");
    }
    if (!x.allFinite()) {
        throw DomainError("predict: non-finite covariate");
    }
    return logistic(x.dot(fit.eta));
}

} // namespace circal
