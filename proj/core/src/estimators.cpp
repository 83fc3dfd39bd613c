#include "circal/estimators.hpp"

#include <cmath>
#include <string>

#include "circal/angles.hpp"
#include "circal/errors.hpp"

namespace circal {

namespace {

void check_fitted(const Eigen::VectorXi& treatment, const Eigen::VectorXd& fitted) {
    if (fitted.size() != treatment.size()) {
        throw DomainError("fitted propensities: " + std::to_string(fitted.size()) +
                          " values for " + std::to_string(treatment.size()) + " units");
    }
    for (Eigen::Index i = 0; i < fitted.size(); ++i) {
        const double p = fitted[i];
        if (!(p > 0.0) || !(p < 1.0)) {
            throw DomainError("fitted propensity at index " + std::to_string(i) +
                              " must lie strictly inside (0,1), got " + std::to_string(p));
        }
    }
}

} // namespace

std::string scheme_name(WeightScheme scheme) {
    return scheme == WeightScheme::horvitz_thompson ? "HT" : "Hajek";
}

ArmWeights ht_weights(const Eigen::VectorXi& treatment, const Eigen::VectorXd& fitted) {
    check_fitted(treatment, fitted);
    const Eigen::Index n = treatment.size();
    ArmWeights w{Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n)};
    const double dn = static_cast<double>(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (treatment[i] == 1) {
            w.treated[i] = 1.0 / (dn * fitted[i]);
        } else {
            w.control[i] = 1.0 / (dn * (1.0 - fitted[i]));
        }
    }
    return w;
}

ArmWeights hajek_weights(const ArmWeights& raw) {
    const double s1 = raw.treated.sum();
    const double s0 = raw.control.sum();
    if (!(s1 > 0.0) || !(s0 > 0.0)) {
        throw DomainError("hajek_weights: an arm's weights sum to zero");
    }
    ArmWeights w{raw.treated / s1, raw.control / s0};
    // One more pass nails the sums to 1 despite rounding in the division.
    w.treated /= w.treated.sum();
    w.control /= w.control.sum();
    return w;
}

OmegaEstimate estimate_omega(const CausalDataset& data, const Eigen::VectorXd& fitted,
                             WeightScheme scheme) {
    validate_dataset(data);
    ArmWeights w = ht_weights(data.treatment, fitted);
    if (scheme == WeightScheme::hajek) {
        w = hajek_weights(w);
    }
    const ResultantVector arm1 = weighted_trig_moment(
        data.outcome, std::span<const double>(w.treated.data(), w.treated.size()));
    const ResultantVector arm0 = weighted_trig_moment(
        data.outcome, std::span<const double>(w.control.data(), w.control.size()));
    return OmegaEstimate{arm1.alpha, arm1.beta, arm0.alpha, arm0.beta, scheme, data.n()};
}

EffectEstimate estimate_effects(const OmegaEstimate& omega) {
    const ResultantVector arm1{omega.alpha1, omega.beta1};
    const ResultantVector arm0{omega.alpha0, omega.beta0};
    EffectEstimate effects;
    effects.tau = angular_difference(arm1.direction(), arm0.direction());
    effects.xi = arm1.length() - arm0.length();
    effects.scheme = omega.scheme;
    effects.n = omega.n;
    return effects;
}

} // namespace circal
