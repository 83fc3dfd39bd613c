#include "circal/angles.hpp"

#include <cmath>
#include <string>

#include "circal/errors.hpp"

namespace circal {

Angle canonical_angle(double theta) {
    if (!std::isfinite(theta)) {
        throw DomainError("angle must be finite, got " + std::to_string(theta));
    }
    double r = std::fmod(theta, two_pi);
    if (r < 0.0) r += two_pi;
    // Adding two_pi to a tiny negative remainder can round up to two_pi itself.
    if (r >= two_pi) r = 0.0;
    return Angle(r);
}

Angle atan2_circle(double beta, double alpha) {
    if (std::hypot(alpha, beta) < eps_rho) {
        throw UndefinedDirection("resultant length below " + std::to_string(eps_rho) +
                                 "; direction undefined");
    }
    return canonical_angle(std::atan2(beta, alpha));
}

double angular_difference(Angle a, Angle b) {
    double d = a.radians() - b.radians(); // in (-2*pi, 2*pi)
    if (d <= -pi) {
        d += two_pi;
    } else if (d > pi) {
        d -= two_pi;
    }
    return d;
}

double ResultantVector::length() const {
    return std::hypot(alpha, beta);
}

Angle ResultantVector::direction() const {
    return atan2_circle(beta, alpha);
}

ResultantVector weighted_trig_moment(std::span<const Angle> angles,
                                     std::span<const double> weights) {
    if (angles.empty()) {
        throw DomainError("weighted_trig_moment: empty input");
    }
    if (angles.size() != weights.size()) {
        throw DomainError("weighted_trig_moment: " + std::to_string(angles.size()) +
                          " angles vs " + std::to_string(weights.size()) + " weights");
    }
    ResultantVector v;
    for (std::size_t i = 0; i < angles.size(); ++i) {
        const double w = weights[i];
        if (!std::isfinite(w)) {
            throw DomainError("weighted_trig_moment: non-finite weight at index " +
                              std::to_string(i));
        }
        v.alpha += w * std::cos(angles[i].radians());
        v.beta += w * std::sin(angles[i].radians());
    }
    return v;
}

Angle mean_direction(const ResultantVector& v) {
    return v.direction();
}

double mean_length(const ResultantVector& v) {
    return v.length();
}

} // namespace circal
