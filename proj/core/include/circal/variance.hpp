#pragma once

#include <Eigen/Dense>

#include "circal/dataset.hpp"
#include "circal/estimators.hpp"
#include "circal/propensity.hpp"

namespace circal {

// Empirical building blocks of the stacked M-estimation sandwich.
struct SandwichPieces {
    Eigen::MatrixXd a11; // (1+p)x(1+p) empirical Fisher information
    Eigen::MatrixXd b21; // 4x(1+p): (1/n) sum psi_omega psi_eta^T
    Eigen::Matrix4d b22; // (1/n) sum psi_omega psi_omega^T
    WeightScheme scheme = WeightScheme::horvitz_thompson;
    Eigen::Index n = 0;
};

// Per-unit estimating functions evaluated at (eta_hat, omega), averaged into
// the sandwich pieces. The HT psi keeps the centering offset outside the
// weight (A/pi cos(theta) - alpha1); the Hajek psi multiplies the centered
// value by the weight (A/pi (cos(theta) - alpha1)). The scheme is taken from
// omega.scheme. Throws SingularInformation when a11 is not invertible at
// relative pivot tolerance 1e-12.
SandwichPieces empirical_pieces(const CausalDataset& data, const PropensityFit& fit,
                                const OmegaEstimate& omega);

// -b21 a11^{-1} b21^T + b22: asymptotic covariance of the omega estimate
// accounting for the estimated propensity.
Eigen::Matrix4d nuisance_covariance(const SandwichPieces& pieces);

// Delta-method Jacobian of (tau, xi) with respect to omega:
//   row 1: (-beta1/rho1^2, alpha1/rho1^2,  beta0/rho0^2, -alpha0/rho0^2)
//   row 2: ( alpha1/rho1,   beta1/rho1,   -alpha0/rho0,  -beta0/rho0)
// Throws UndefinedDirection when either arm's resultant length < eps_rho.
Eigen::Matrix<double, 2, 4> jacobian(const OmegaEstimate& omega);

struct EffectCovariance {
    Eigen::Matrix2d sigma; // asymptotic covariance of (tau, xi)
    double se_tau = 0.0;   // sqrt(sigma(0,0)/n)
    double se_xi = 0.0;    // sqrt(sigma(1,1)/n)
};

// sigma = J (-b21 a11^{-1} b21^T + b22) J^T; standard errors divide by n.
EffectCovariance effect_covariance(const SandwichPieces& pieces,
                                   const Eigen::Matrix<double, 2, 4>& jac);

// Convenience: computes the Jacobian at omega, the effect covariance, and
// returns the estimate with sigma/se fields filled.
EffectEstimate with_covariance(EffectEstimate effects, const SandwichPieces& pieces,
                               const OmegaEstimate& omega);

struct WaldIntervals {
    double tau_low = 0.0; // arc endpoints around tau, not re-wrapped
    double tau_high = 0.0;
    double xi_low = 0.0;
    double xi_high = 0.0;
    double level = 0.95;
};

// estimate +- z_{(1+level)/2} * se. The tau interval is an arc; coverage of
// a true tau0 is judged via |angular_difference(tau_hat, tau0)| <= z*se_tau.
WaldIntervals wald_interval(const EffectEstimate& estimate, double level = 0.95);

// Standard normal quantile. normal_quantile(0.975) = 1.959964 to 6 decimals
// (the z used for 95% intervals).
double normal_quantile(double p);

} // namespace circal
