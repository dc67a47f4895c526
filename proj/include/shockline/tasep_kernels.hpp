#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "shockline/fredholm.hpp"

namespace shockline {

// Critical points of f0(w) = 1/w + (alpha-1/2) log w + (1-alpha)/2 log(1-w):
// w in {2, 1/alpha}, with Re f0(1/alpha) < Re f0(2) throughout the shock
// regime. Used to place contours.
struct CriticalPoints {
    double w_step;        // 2
    double w_slow;        // 1/alpha
    double re_f0_step;    // Re f0(2)
    double re_f0_slow;    // Re f0(1/alpha)
    bool ordered;         // re_f0_slow < re_f0_step
    double deriv_residual_step;
    double deriv_residual_slow;
};
CriticalPoints f0_f1_critical_points(double alpha);

std::complex<double> f0_of(std::complex<double> w, double alpha);
std::complex<double> f1_of(std::complex<double> w, double s, double eta, double alpha);

struct LatticeKernelParams {
    int w_nodes = 512;   // trapezoid nodes on the outer w circle
    int z1_nodes = 384;  // circle around the pole at 1
    int z2_nodes = 128;  // circle around the pole at 1/alpha (M >= 1 only)
    double w_offset = 1.0;   // W-scale distance of the w circle beyond 1/alpha
    double z2_radius = 0.5;  // W-scale radius of the z2 circle
    double tol = 1e-6;
    int max_section = 512;
};

// Transition kernel of the packed-start system with M slow leaders:
// P(x_n(t) >= xi) = det(1 - K) on l^2((-inf, xi)). Double-contour form with
// the outer w circle deformed around both z loops; evaluated through the
// exponent normalization t f0 + sqrt(t) f1 at the slow critical point, which
// realizes the linear conjugation kappa(x) = x log(1/alpha) exactly.
class SlowStepKernel {
  public:
    SlowStepKernel(std::int64_t n, double t, double alpha, int M,
                   LatticeKernelParams params = {});

    // Raw kernel value (conjugation undone); overflows only for arguments
    // separated by hundreds of sites.
    std::complex<double> value(std::int64_t x, std::int64_t y) const;

    // Conjugated entry e^{-kappa(x)} K(x,y) e^{kappa(y)}; real up to 1e-8.
    double conj_value(std::int64_t x, std::int64_t y) const;

    // P(x_n(t) >= xi) by nested finite sections with doubling control.
    DetResult cdf(std::int64_t xi) const;

    // sigma sqrt(t) K(x(s1), x(s2)) e^{sqrt(t)(f1*(s2) - f1*(s1))}: the
    // conjugated rescaled kernel whose t -> infinity limit is
    // K_GUE(M)(s1 + xi_c, s2 + xi_c). Arguments snap to the integer lattice;
    // the snapped s values are returned.
    double rescaled_conj(double s1, double s2, double eta, double* s1_eff = nullptr,
                         double* s2_eff = nullptr) const;

    double eta_eff() const { return eta_eff_; }
    std::int64_t n() const { return n_; }
    double t() const { return t_; }

    // Conjugated kernel matrix over row points xs and column points ys:
    // K(x,y) e^{slope (y - x)} plus a constant similarity; contours and node
    // counts adapt to the spans and to t.
    Eigen::MatrixXcd conj_matrix(const std::vector<std::int64_t>& xs,
                                 const std::vector<std::int64_t>& ys, double slope) const;

  private:
    std::complex<double> conj_value_impl(std::int64_t x, std::int64_t y) const;
    std::complex<double> w_exponent(std::complex<double> w, std::int64_t x) const;
    std::complex<double> z_exponent(std::complex<double> z, std::int64_t y) const;
    double s_of_x(std::int64_t x) const;

    std::int64_t n_;
    double t_;
    double alpha_;
    int M_;
    LatticeKernelParams p_;
    double eta_eff_;
    std::complex<double> norm_base_; // t/wc + n log(1 - wc)
    double norm_slope_;              // log(wc): the physical conjugation slope
    double wc_;                      // 1/alpha, or 2 when M = 0
    double z1_center_, z1_radius_, z2_radius_, w_radius_, z_max_;
    double det_slope_; // balanced slope used for finite sections
};

// sup over an equispaced grid of [-box, box]^2 of
// |rescaled conjugated kernel - K_GUE(M)(s1+xi_c, s2+xi_c)|.
struct KernelGapResult {
    double gap;
    double xi_c_eff;
    double eta_eff;
    std::vector<double> grid;
};
KernelGapResult rescaled_kernel_gap(double t, double alpha, double eta, int M, double box = 2.0,
                                    int grid_points = 9, LatticeKernelParams params = {});

// Pointwise GUE(M) kernel by the same double-contour quadrature as
// gue_m_cdf_contour (defined here to keep kernel plumbing together).
double gue_m_kernel(double a, double b, int M);

struct DirectCdfParams {
    int v_nodes = 256;
    int w_nodes = 256;
    int g_nodes = 256;
    int f_nodes = 256;
    int section = 48;
    double condition_limit = 1e12;
    double tol = 2e-5;
};

// Direct route for the M = 1 shock system (half-flat plus one slow leader):
// P(x_n(t) >= x) = det(1 - chi K chi) *
//   (1 - <g chi, f> - <g chi, (1 - chi K chi)^{-1} chi K chi f>),
// with the three pieces and conditioning diagnostics exposed. The resolvent
// term is a dense solve; its condition number (and the quadrature dynamic
// range) grow with t, which is the analytic obstruction this route has.
struct ShockDirectResult {
    double probability;
    double det_part;
    double scalar_term;
    double resolvent_term;
    double condition;
    double direct_det_check; // plain determinant of the same section
    double dynamic_range_log; // max exponent spread in the quadratures
    int section;
};
ShockDirectResult shock_direct_cdf(std::int64_t x, std::int64_t n, double t, double alpha,
                                   DirectCdfParams params = {});

} // namespace shockline
