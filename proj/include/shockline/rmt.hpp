#pragma once

#include <cstdint>

#include "shockline/fredholm.hpp"
#include "shockline/rng.hpp"

namespace shockline {

// Largest eigenvalue of an M x M GUE matrix drawn with density
// const * exp(-Tr H^2 / 2): real N(0,1) diagonal, complex off-diagonal
// entries with independent N(0,1/2) real and imaginary parts.
double sample_gue_max(int M, CounterRng& rng);

// Same law through the beta=2 tridiagonal reduction (N(0,1) diagonal,
// chi_{2k}/sqrt(2) off-diagonal), with the top eigenvalue found by Sturm
// bisection. O(M) per draw; used for large M.
double sample_gue_max_tridiag(int M, CounterRng& rng);

// P(largest eigenvalue <= s) as the rank-M projection determinant
// det(I - G), G_jk = int_s^inf phi_j phi_k, with phi_j the orthonormal
// oscillator functions for weight e^{-x^2/2}.
double gue_m_cdf(double s, int M, double tol = 1e-9);

// The same distribution through the double-contour kernel
//   K(s1,s2) = (2 pi i)^{-2} \oint_{|z|=eps/2} dz \int_{eps+iR} dw
//              e^{w^2/2 - w s1} / e^{z^2/2 - z s2} (w/z)^M / (w - z)
// evaluated by trapezoid quadrature and fed to the Nystrom determinant.
// Independent of eps; agreement with gue_m_cdf is the cross-method check.
struct GueContourParams {
    double eps = 1.0;
    int line_nodes = 481;     // vertical w line
    double line_halflen = 10.0;
    int circle_nodes = 128;   // z circle
    int nystrom_nodes = 48;
    double map_scale = 6.0;
    double tol = 1e-7;
};
double gue_m_cdf_contour(double s, int M, const GueContourParams& params = {});

// Tracy-Widom distributions: beta=2 via the Airy kernel on (s, inf);
// beta=1 via det(1 - A_s) on (0, inf) with A_s(x,y) = Ai(x+y+s).
double tracy_widom_cdf(double s, int beta, double tol = 1e-7);

} // namespace shockline
