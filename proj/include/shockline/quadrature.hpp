#pragma once

#include <complex>
#include <vector>

namespace shockline {

struct QuadRule {
    std::vector<double> x;
    std::vector<double> w;
};

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
const QuadRule& gauss_legendre(int n);

// Gauss-Legendre transplanted to [a, b].
QuadRule gauss_legendre_on(int n, double a, double b);

// Rational map of (0,1) Gauss-Legendre points onto the half line (a, inf):
// x = a + L u/(1-u), weights carry the Jacobian L/(1-u)^2. L sets where the
// nodes cluster; kernels here decay at least exponentially, so moderate L
// with node doubling gives self-validating accuracy.
QuadRule half_line_rule(int n, double a, double L);

// Uniformly spaced nodes of the positively oriented circle c + r e^{i theta},
// with dz/(2 pi i) weights folded in: sum_k f(z_k) cw_k approximates the
// contour integral (1/2 pi i) \oint f.
struct ContourNodes {
    std::vector<std::complex<double>> z;
    std::vector<std::complex<double>> w;
};
ContourNodes circle_contour(std::complex<double> center, double radius, int n);

// Trapezoid nodes of the vertical line Re = x0 truncated at |Im| <= L, with
// dw/(2 pi i) weights folded in (upward orientation).
ContourNodes vertical_line_contour(double x0, double L, int n);

} // namespace shockline
