#include "circal/variance.hpp"

#include <cmath>
#include <string>

#include "circal/angles.hpp"
#include "circal/errors.hpp"
#include "spd_solve.hpp"

namespace circal {

SandwichPieces empirical_pieces(const CausalDataset& data, const PropensityFit& fit,
                                const OmegaEstimate& omega) {
    validate_dataset(data);
    const Eigen::Index n = data.n();
    const Eigen::Index k = data.design.cols();
    if (fit.fitted.size() != n) {
        throw DomainError("empirical_pieces: fit has " + std::to_string(fit.fitted.size()) +
                          " fitted values for " + std::to_string(n) + " units");
    }
    if (omega.n != n) {
        throw DomainError("empirical_pieces: omega was computed from " +
                          std::to_string(omega.n) + " units, dataset has " +
                          std::to_string(n));
    }
    const bool hajek = omega.scheme == WeightScheme::hajek;

    SandwichPieces pieces;
    pieces.a11 = Eigen::MatrixXd::Zero(k, k);
    pieces.b21 = Eigen::MatrixXd::Zero(4, k);
    pieces.b22 = Eigen::Matrix4d::Zero();
    pieces.scheme = omega.scheme;
    pieces.n = n;

    Eigen::Vector4d psi_omega;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double pi_i = fit.fitted[i];
        const double a_i = static_cast<double>(data.treatment[i]);
        const double c = std::cos(data.outcome[i].radians());
        const double s = std::sin(data.outcome[i].radians());
        const double w1 = a_i / pi_i;
        const double w0 = (1.0 - a_i) / (1.0 - pi_i);

        if (hajek) {
            psi_omega << w1 * (c - omega.alpha1), w1 * (s - omega.beta1),
                w0 * (c - omega.alpha0), w0 * (s - omega.beta0);
        } else {
            psi_omega << w1 * c - omega.alpha1, w1 * s - omega.beta1,
                w0 * c - omega.alpha0, w0 * s - omega.beta0;
        }

        const auto x_i = data.design.row(i).transpose();
        pieces.a11.noalias() += pi_i * (1.0 - pi_i) * x_i * x_i.transpose();
        pieces.b21.noalias() += psi_omega * ((a_i - pi_i) * x_i.transpose());
        pieces.b22.noalias() += psi_omega * psi_omega.transpose();
    }
    const double dn = static_cast<double>(n);
    pieces.a11 /= dn;
    pieces.b21 /= dn;
    pieces.b22 /= dn;

    // Fail loudly now if the information piece cannot be inverted later.
    detail::SpdSolver(pieces.a11, "empirical_pieces a11");
    return pieces;
}

Eigen::Matrix4d nuisance_covariance(const SandwichPieces& pieces) {
    const detail::SpdSolver solver(pieces.a11, "nuisance_covariance a11");
    const Eigen::MatrixXd b21t = pieces.b21.transpose();
    const Eigen::MatrixXd a11_inv_b21t = solver.solve(b21t);
    Eigen::Matrix4d cov = -pieces.b21 * a11_inv_b21t + pieces.b22;
    return (cov + cov.transpose()) / 2.0; // remove rounding asymmetry
}

Eigen::Matrix<double, 2, 4> jacobian(const OmegaEstimate& omega) {
    const double rho1 = std::hypot(omega.alpha1, omega.beta1);
    const double rho0 = std::hypot(omega.alpha0, omega.beta0);
    if (rho1 < eps_rho || rho0 < eps_rho) {
        throw UndefinedDirection("jacobian: arm resultant length below eps_rho");
    }
    const double r1sq = rho1 * rho1;
    const double r0sq = rho0 * rho0;
    Eigen::Matrix<double, 2, 4> jac;
    jac << -omega.beta1 / r1sq, omega.alpha1 / r1sq, omega.beta0 / r0sq,
        -omega.alpha0 / r0sq, omega.alpha1 / rho1, omega.beta1 / rho1,
        -omega.alpha0 / rho0, -omega.beta0 / rho0;
    return jac;
}

EffectCovariance effect_covariance(const SandwichPieces& pieces,
                                   const Eigen::Matrix<double, 2, 4>& jac) {
    const Eigen::Matrix4d nuisance = nuisance_covariance(pieces);
    Eigen::Matrix2d sigma = jac * nuisance * jac.transpose();
    sigma = (sigma + sigma.transpose()) / 2.0;
    for (int d = 0; d < 2; ++d) {
        if (sigma(d, d) < -1e-10) {
            throw NumericalError("effect_covariance: negative variance " +
                                 std::to_string(sigma(d, d)) + " on the diagonal");
        }
    }
    EffectCovariance cov;
    cov.sigma = sigma;
    const double dn = static_cast<double>(pieces.n);
    cov.se_tau = std::sqrt(std::max(sigma(0, 0), 0.0) / dn);
    cov.se_xi = std::sqrt(std::max(sigma(1, 1), 0.0) / dn);
    return cov;
}

EffectEstimate with_covariance(EffectEstimate effects, const SandwichPieces& pieces,
                               const OmegaEstimate& omega) {
    const EffectCovariance cov = effect_covariance(pieces, jacobian(omega));
    effects.sigma = cov.sigma;
    effects.se_tau = cov.se_tau;
    effects.se_xi = cov.se_xi;
    effects.has_variance = true;
    return effects;
}

WaldIntervals wald_interval(const EffectEstimate& estimate, double level) {
    if (!(level > 0.0) || !(level < 1.0)) {
        throw DomainError("wald_interval: level must be inside (0,1), got " +
                          std::to_string(level));
    }
    if (!estimate.has_variance) {
        throw DomainError("wald_interval: estimate carries no covariance");
    }
    const double z = normal_quantile((1.0 + level) / 2.0);
    WaldIntervals ci;
    ci.tau_low = estimate.tau - z * estimate.se_tau;
    ci.tau_high = estimate.tau + z * estimate.se_tau;
    ci.xi_low = estimate.xi - z * estimate.se_xi;
    ci.xi_high = estimate.xi + z * estimate.se_xi;
    ci.level = level;
    return ci;
}

double normal_quantile(double p) {
    if (!(p > 0.0) || !(p < 1.0)) {
        throw DomainError("normal_quantile: p must be inside (0,1), got " +
                          std::to_string(p));
    }
    // Acklam's rational approximation.
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double p_low = 0.02425;

    double x;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    // One Halley step against the exact CDF brings the result to full
    // double precision.
    static const double sqrt_two_pi = std::sqrt(2.0 * pi);
    const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
    const double u = e * sqrt_two_pi * std::exp(x * x / 2.0);
    x = x - u / (1.0 + x * u / 2.0);
    return x;
}

} // namespace circal
