#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace shockline {

// Shock-regime constants and maps for jump rate alpha in (0,1/2), M slow
// particles, offset eta and time t:
//
//   sigma       = sqrt(alpha(1-2alpha) / (2(1-alpha)))
//   xi_c        = eta * sqrt(2(1-2alpha) / (alpha(1-alpha)))
//   shock_speed = alpha - 1/2
//   n(t)        = floor((1-alpha)t/2 + eta sqrt(t))
//   x(xi)       = (alpha-1/2)t - 2 eta sqrt(t) - sigma xi sqrt(t)
struct ShockScaling {
    double alpha;
    int M;
    double eta;
    double t;
    double sigma;
    double xi_c;
    double shock_speed;

    std::int64_t n_of_t() const {
        return static_cast<std::int64_t>(std::floor((1.0 - alpha) / 2.0 * t + eta * std::sqrt(t)));
    }
    double x_of_xi(double xi) const {
        return (alpha - 0.5) * t - 2.0 * eta * std::sqrt(t) - sigma * xi * std::sqrt(t);
    }
    double center() const { return x_of_xi(0.0); }
    // Pulls an integer position back to the xi scale.
    double xi_of_x(double x) const { return (center() - x) / (sigma * std::sqrt(t)); }
};

inline ShockScaling shock_constants(double alpha, int M, double eta, double t) {
    if (!(alpha > 0.0 && alpha < 0.5))
        throw std::invalid_argument("shock_constants: alpha must lie in (0,1/2)");
    if (M < 1)
        throw std::invalid_argument("shock_constants: M must be >= 1");
    if (!(t > 0.0))
        throw std::invalid_argument("shock_constants: t must be positive");
    ShockScaling s;
    s.alpha = alpha;
    s.M = M;
    s.eta = eta;
    s.t = t;
    s.sigma = std::sqrt(alpha * (1.0 - 2.0 * alpha) / (2.0 * (1.0 - alpha)));
    s.xi_c = eta * std::sqrt(2.0 * (1.0 - 2.0 * alpha) / (alpha * (1.0 - alpha)));
    s.shock_speed = alpha - 0.5;
    return s;
}

} // namespace shockline
