#pragma once

#include <string>

#include <Eigen/Dense>

#include "circal/dataset.hpp"

namespace circal {

enum class WeightScheme {
    horvitz_thompson, // raw inverse-probability weights A/(n*pi)
    hajek,            // per-arm normalized weights
};

// "HT" or "Hajek" (ASCII, used in reports and CSV output).
std::string scheme_name(WeightScheme scheme);

// Per-unit weights; entries are zero off-arm.
struct ArmWeights {
    Eigen::VectorXd treated; // w1_i = A_i / (n pi_i)
    Eigen::VectorXd control; // w0_i = (1-A_i) / (n (1-pi_i))
};

// Raw Horvitz-Thompson weights from fitted (or known) propensities.
// fitted must have length n with every entry strictly inside (0,1).
ArmWeights ht_weights(const Eigen::VectorXi& treatment, const Eigen::VectorXd& fitted);

// Per-arm normalization of HT weights; each arm then sums to exactly 1.
// Throws DomainError if an arm's weights sum to zero.
ArmWeights hajek_weights(const ArmWeights& raw);

// Weighted first trigonometric moments per arm.
struct OmegaEstimate {
    double alpha1 = 0.0;
    double beta1 = 0.0;
    double alpha0 = 0.0;
    double beta0 = 0.0;
    WeightScheme scheme = WeightScheme::horvitz_thompson;
    Eigen::Index n = 0; // sample size the estimate was computed from
};

// (alpha_a, beta_a) = weighted trig moment over arm a with the scheme's
// weights. Pass known propensities as `fitted` for oracle runs.
OmegaEstimate estimate_omega(const CausalDataset& data, const Eigen::VectorXd& fitted,
                             WeightScheme scheme);

// Direction effect tau (radians, wrapped to (-pi, pi]) and concentration
// effect xi. sigma/se fields are filled in by the variance layer.
struct EffectEstimate {
    double tau = 0.0;
    double xi = 0.0;
    WeightScheme scheme = WeightScheme::horvitz_thompson;
    Eigen::Index n = 0;
    Eigen::Matrix2d sigma = Eigen::Matrix2d::Zero(); // asymptotic covariance of (tau, xi)
    double se_tau = 0.0;
    double se_xi = 0.0;
    bool has_variance = false;
};

// tau = wrapped difference of arm mean directions, xi = difference of arm
// mean resultant lengths. Throws UndefinedDirection when either arm's
// resultant length is below eps_rho.
EffectEstimate estimate_effects(const OmegaEstimate& omega);

} // namespace circal
