#pragma once

#include <span>

namespace circal {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

// Resultant lengths below this have no well-defined direction.
inline constexpr double eps_rho = 1e-10;

// An angle stored by its canonical representative in [0, 2*pi).
// Construct via canonical_angle() or atan2_circle().
class Angle {
public:
    Angle() = default;

    double radians() const { return radians_; }

    friend bool operator==(Angle a, Angle b) { return a.radians_ == b.radians_; }

private:
    friend Angle canonical_angle(double);
    explicit Angle(double canonical) : radians_(canonical) {}

    double radians_ = 0.0;
};

// Wraps theta into [0, 2*pi). Throws DomainError on non-finite input.
Angle canonical_angle(double theta);

// Direction of the vector (alpha, beta) as an angle in [0, 2*pi).
// Throws UndefinedDirection when the vector is shorter than eps_rho.
Angle atan2_circle(double beta, double alpha);

// The unique d in (-pi, pi] with canonical(b + d) = a. Exactly antipodal
// pairs return +pi.
double angular_difference(Angle a, Angle b);

// First trigonometric moment components of a weighted sample.
struct ResultantVector {
    double alpha = 0.0; // sum of w_i * cos(theta_i)
    double beta = 0.0;  // sum of w_i * sin(theta_i)

    double length() const;
    Angle direction() const; // throws UndefinedDirection below eps_rho
};

// alpha = sum w_i cos(theta_i), beta = sum w_i sin(theta_i). Weights need not
// sum to 1 (HT weights do not). Throws DomainError on empty or mismatched
// input or non-finite weights.
ResultantVector weighted_trig_moment(std::span<const Angle> angles,
                                     std::span<const double> weights);

Angle mean_direction(const ResultantVector& v);
double mean_length(const ResultantVector& v);

} // namespace circal
