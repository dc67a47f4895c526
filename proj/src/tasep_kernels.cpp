#include "shockline/tasep_kernels.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "shockline/quadrature.hpp"
#include "shockline/rmt.hpp"
#include "shockline/scaling.hpp"

namespace shockline {

using cplx = std::complex<double>;

std::complex<double> f0_of(cplx w, double alpha) {
    return 1.0 / w + (alpha - 0.5) * std::log(w) + 0.5 * (1.0 - alpha) * std::log(1.0 - w);
}

std::complex<double> f1_of(cplx w, double s, double eta, double alpha) {
    double sigma = std::sqrt(alpha * (1.0 - 2.0 * alpha) / (2.0 * (1.0 - alpha)));
    return -(2.0 * eta + s * sigma) * std::log(w) + eta * std::log(1.0 - w);
}

namespace {

cplx df0(cplx w, double alpha) {
    return -1.0 / (w * w) + (alpha - 0.5) / w - 0.5 * (1.0 - alpha) / (1.0 - w);
}

} // namespace

CriticalPoints f0_f1_critical_points(double alpha) {
    if (!(alpha > 0.0 && alpha < 0.5))
        throw std::invalid_argument("f0_f1_critical_points: alpha must lie in (0,1/2)");
    if (alpha > 0.499)
        throw std::invalid_argument("f0_f1_critical_points: critical points merge as alpha -> 1/2");
    CriticalPoints c;
    c.w_step = 2.0;
    c.w_slow = 1.0 / alpha;
    c.re_f0_step = f0_of(cplx(2.0, 0.0), alpha).real();
    c.re_f0_slow = f0_of(cplx(c.w_slow, 0.0), alpha).real();
    c.ordered = c.re_f0_slow < c.re_f0_step;
    c.deriv_residual_step = std::abs(df0(cplx(2.0, 0.0), alpha));
    c.deriv_residual_slow = std::abs(df0(cplx(c.w_slow, 0.0), alpha));
    return c;
}

// ---------------------------------------------------------------------------
// Adaptive circle quadrature: uniform angular spacing fine enough for the
// integrand's phase winding (Nyquist with margin), truncated where the
// envelope has dropped `threshold` e-folds below its maximum. For small t
// the envelope never drops that far and the full circle is kept.

namespace {

struct ArcNodes {
    std::vector<cplx> z;
    std::vector<cplx> w; // dz/(2 pi i) weights
};

template <typename ReExpFn>
ArcNodes adaptive_circle(cplx center, double radius, double bandwidth, double threshold,
                         ReExpFn re_exponent) {
    bandwidth = std::max(bandwidth, 16.0);
    double h = 0.85 / bandwidth;
    h = std::min(h, 2.0 * M_PI / 64.0);
    const std::int64_t half = static_cast<std::int64_t>(std::ceil(M_PI / h));
    auto at = [&](std::int64_t k) { return center + radius * std::exp(cplx(0.0, h * k)); };

    // coarse prescan for the envelope maximum
    double best = -std::numeric_limits<double>::infinity();
    std::int64_t kbest = 0;
    const std::int64_t stride = std::max<std::int64_t>(1, 2 * half / 128);
    for (std::int64_t k = -half; k < half; k += stride) {
        double r = re_exponent(at(k));
        if (r > best) {
            best = r;
            kbest = k;
        }
    }
    // march out from the maximum in both directions
    std::int64_t klo = kbest, khi = kbest;
    double seen = best;
    for (std::int64_t k = kbest + 1; k <= kbest + 2 * half - 1; ++k) {
        double r = re_exponent(at(k));
        seen = std::max(seen, r);
        khi = k;
        if (r < seen - threshold)
            break;
    }
    for (std::int64_t k = kbest - 1; k >= kbest - 2 * half + 1; --k) {
        if (k + 2 * half <= khi) // wrapped into the upper arc: full circle
            break;
        double r = re_exponent(at(k));
        seen = std::max(seen, r);
        klo = k;
        if (r < seen - threshold)
            break;
    }
    if (khi - klo >= 2 * half)
        khi = klo + 2 * half - 1; // full circle, no duplicate endpoint

    ArcNodes nodes;
    nodes.z.reserve(static_cast<std::size_t>(khi - klo + 1));
    nodes.w.reserve(nodes.z.capacity());
    for (std::int64_t k = klo; k <= khi; ++k) {
        cplx z = at(k);
        nodes.z.push_back(z);
        // dz/(2 pi i) = (z - center) h / (2 pi)
        nodes.w.push_back((z - center) * (h / (2.0 * M_PI)));
    }
    return nodes;
}

} // namespace

// ---------------------------------------------------------------------------
// SlowStepKernel

SlowStepKernel::SlowStepKernel(std::int64_t n, double t, double alpha, int M,
                               LatticeKernelParams params)
    : n_(n), t_(t), alpha_(alpha), M_(M), p_(params) {
    if (n < 1 || !(t > 0.0) || M < 0)
        throw std::invalid_argument("SlowStepKernel: need n >= 1, t > 0, M >= 0");
    if (M > 0 && !(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("SlowStepKernel: alpha must lie in (0,1) when M >= 1");

    const double ainv = (M > 0) ? 1.0 / alpha : 2.0;
    eta_eff_ = (static_cast<double>(n) - 0.5 * (1.0 - alpha) * t) / std::sqrt(t);
    norm_base_ = t_ / ainv + static_cast<double>(n_) * std::log(cplx(1.0 - ainv, 0.0));
    norm_slope_ = std::log(ainv);
    wc_ = ainv;

    const double sigma = std::sqrt(std::max(alpha * (1.0 - 2.0 * alpha), 1e-12) /
                                   (2.0 * (1.0 - alpha)));
    const double scale_w = (M > 0) ? ainv / (sigma * std::sqrt(t)) : 0.35;

    z1_center_ = 1.2;
    if (M > 0) {
        if (ainv <= 2.0 + 1e-9)
            throw std::invalid_argument("SlowStepKernel: poles 1/alpha and 2 too close");
        z1_radius_ = std::min(0.8, 0.75 * (ainv - z1_center_));
        z2_radius_ = std::min(p_.z2_radius * scale_w, 0.35 * (ainv - 2.0));
        w_radius_ = ainv + std::max(p_.w_offset * scale_w, 1.8 * z2_radius_);
        if (w_radius_ - (ainv + z2_radius_) < 0.2 * z2_radius_)
            throw std::invalid_argument("SlowStepKernel: contours too close to poles");
    } else {
        z1_radius_ = 0.8;
        z2_radius_ = 0.0;
        w_radius_ = 2.0 + std::max(p_.w_offset * scale_w, 0.3);
    }
    z_max_ = (M > 0) ? std::max(z1_center_ + z1_radius_, ainv + z2_radius_)
                     : z1_center_ + z1_radius_;
    det_slope_ = 0.5 * (std::log(w_radius_) + std::log(z_max_));
}

double SlowStepKernel::s_of_x(std::int64_t x) const {
    const double sigma = std::sqrt(alpha_ * (1.0 - 2.0 * alpha_) / (2.0 * (1.0 - alpha_)));
    return ((alpha_ - 0.5) * t_ - 2.0 * eta_eff_ * std::sqrt(t_) - static_cast<double>(x)) /
           (sigma * std::sqrt(t_));
}

cplx SlowStepKernel::w_exponent(cplx w, std::int64_t x) const {
    cplx e = t_ / w + static_cast<double>(x) * std::log(w) +
             static_cast<double>(n_) * std::log(1.0 - w);
    if (M_ > 0)
        e += static_cast<double>(M_) * std::log(1.0 / w - alpha_);
    return e;
}

cplx SlowStepKernel::z_exponent(cplx z, std::int64_t y) const {
    cplx e = t_ / z + static_cast<double>(y) * std::log(z) +
             static_cast<double>(n_) * std::log(1.0 - z);
    if (M_ > 0)
        e += static_cast<double>(M_) * std::log(1.0 / z - alpha_);
    return e;
}

// Builds the conjugated kernel matrix K(x_i, y_j) e^{b(y_j) - b(x_i)} with
// b(x) = Re(norm_base_) + slope x; exact similarity, so determinants and the
// rescaled values do not depend on the bookkeeping.
Eigen::MatrixXcd SlowStepKernel::conj_matrix(const std::vector<std::int64_t>& xs,
                                             const std::vector<std::int64_t>& ys,
                                             double slope) const {
    std::int64_t max_abs = 0, row_span = 0, col_span = 0;
    for (auto v : xs) {
        max_abs = std::max<std::int64_t>(max_abs, std::llabs(v));
        row_span = std::max<std::int64_t>(row_span, std::llabs(v - xs.front()));
    }
    for (auto v : ys) {
        max_abs = std::max<std::int64_t>(max_abs, std::llabs(v));
        col_span = std::max<std::int64_t>(col_span, std::llabs(v - ys.front()));
    }
    const double threshold =
        60.0 + 1.3 * static_cast<double>(std::max(row_span, col_span));

    const std::int64_t xref = xs.front();
    const std::int64_t yref = ys.front();
    const double xmax = static_cast<double>(max_abs);

    // w circle: |w| constant, so the envelope shape is x-independent
    double bw_w = xmax + 1.6 * static_cast<double>(n_) + t_ / w_radius_ + 2.0 * M_ + 16.0;
    auto wn = adaptive_circle(
        cplx(0.0, 0.0), w_radius_, bw_w, threshold,
        [&](cplx w) { return (w_exponent(w, xref) - cplx(det_slope_ * xref, 0.0)).real(); });

    // z1 circle around the pole at 1
    const double minz1 = z1_center_ - z1_radius_;
    double rate_arg = z1_radius_ / std::max(0.05, minz1);
    double rate_one = z1_radius_ / 0.2; // min |1 - z| on the circle is r - |c-1|
    double bw_z1 = xmax * rate_arg + static_cast<double>(n_) * rate_one +
                   t_ * z1_radius_ / (minz1 * minz1) + 2.0 * M_ + 16.0;
    auto z1 = adaptive_circle(
        cplx(z1_center_, 0.0), z1_radius_, bw_z1, threshold,
        [&](cplx z) { return (cplx(det_slope_ * yref, 0.0) - z_exponent(z, yref)).real(); });

    std::vector<cplx> znodes = z1.z, zweights = z1.w;
    if (M_ > 0) {
        const double ainv = wc_;
        double rate2 = z2_radius_ / (ainv - z2_radius_);
        double bw_z2 = xmax * rate2 + static_cast<double>(n_) * z2_radius_ / (ainv - 1.0) +
                       t_ * z2_radius_ / ((ainv - z2_radius_) * (ainv - z2_radius_)) +
                       2.0 * M_ + 16.0;
        auto z2 = adaptive_circle(
            cplx(ainv, 0.0), z2_radius_, bw_z2, threshold,
            [&](cplx z) { return (cplx(det_slope_ * yref, 0.0) - z_exponent(z, yref)).real(); });
        znodes.insert(znodes.end(), z2.z.begin(), z2.z.end());
        zweights.insert(zweights.end(), z2.w.begin(), z2.w.end());
    }

    const int R = static_cast<int>(xs.size());
    const int Cn = static_cast<int>(ys.size());
    const int nw = static_cast<int>(wn.z.size());
    const int nz = static_cast<int>(znodes.size());

    Eigen::MatrixXcd A(R, nw);
    for (int i = 0; i < R; ++i) {
        cplx bx = norm_base_ + det_slope_ * static_cast<double>(xs[i]);
        for (int a = 0; a < nw; ++a) {
            cplx e = w_exponent(wn.z[a], xs[i]) - bx;
            A(i, a) = (e.real() < -745.0) ? cplx(0.0) : std::exp(e) * wn.w[a];
        }
    }
    // D(i, b) = sum_a A(i,a) / (w_a - z_b), chunked to bound memory
    Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(R, nz);
    for (int b = 0; b < nz; ++b) {
        for (int i = 0; i < R; ++i) {
            cplx acc = 0.0;
            for (int a = 0; a < nw; ++a)
                acc += A(i, a) / (wn.z[a] - znodes[b]);
            D(i, b) = acc;
        }
    }
    Eigen::MatrixXcd B(nz, Cn);
    for (int b = 0; b < nz; ++b) {
        for (int j = 0; j < Cn; ++j) {
            cplx by = norm_base_ + det_slope_ * static_cast<double>(ys[j]);
            cplx e = by - z_exponent(znodes[b], ys[j]);
            B(b, j) = (e.real() < -745.0) ? cplx(0.0)
                                          : std::exp(e) * zweights[b] / znodes[b];
        }
    }
    // restore the requested conjugation slope
    Eigen::MatrixXcd K = D * B;
    if (slope != det_slope_) {
        for (int i = 0; i < R; ++i)
            for (int j = 0; j < Cn; ++j)
                K(i, j) *= std::exp((slope - det_slope_) * static_cast<double>(xs[i] - ys[j]));
    }
    return K;
}

cplx SlowStepKernel::conj_value_impl(std::int64_t x, std::int64_t y) const {
    Eigen::MatrixXcd K = conj_matrix({x}, {y}, norm_slope_);
    return K(0, 0);
}

double SlowStepKernel::conj_value(std::int64_t x, std::int64_t y) const {
    cplx v = conj_value_impl(x, y);
    if (std::fabs(v.imag()) > 1e-8)
        throw std::runtime_error("SlowStepKernel: kernel imaginary part " +
                                 std::to_string(v.imag()) + " above 1e-8");
    return v.real();
}

cplx SlowStepKernel::value(std::int64_t x, std::int64_t y) const {
    return std::exp(norm_slope_ * static_cast<double>(x - y)) * conj_value_impl(x, y);
}

DetResult SlowStepKernel::cdf(std::int64_t xi) const {
    const int full = p_.max_section;
    std::vector<std::int64_t> pts(full);
    for (int i = 0; i < full; ++i)
        pts[i] = xi - 1 - i;
    Eigen::MatrixXcd K = conj_matrix(pts, pts, det_slope_);

    double max_imag = 0.0;
    for (int i = 0; i < full; ++i)
        for (int j = 0; j < full; ++j)
            max_imag = std::max(max_imag, std::fabs(K(i, j).imag()));
    if (max_imag > 1e-7)
        throw std::runtime_error("SlowStepKernel::cdf: kernel imaginary part " +
                                 std::to_string(max_imag));

    auto nested_det = [&](int len) {
        Eigen::MatrixXd Bm = Eigen::MatrixXd::Identity(len, len);
        for (int i = 0; i < len; ++i)
            for (int j = 0; j < len; ++j)
                Bm(i, j) -= K(i, j).real();
        return Bm.determinant();
    };
    double half = nested_det(full / 2);
    double fine = nested_det(full);
    double err = std::fabs(fine - half);
    if (err > p_.tol)
        throw std::runtime_error("SlowStepKernel::cdf: section doubling error " +
                                 std::to_string(err) + " above tolerance");
    return {fine, err};
}

double SlowStepKernel::rescaled_conj(double s1, double s2, double eta, double* s1_eff,
                                     double* s2_eff) const {
    const double sigma = std::sqrt(alpha_ * (1.0 - 2.0 * alpha_) / (2.0 * (1.0 - alpha_)));
    auto x_of = [&](double s) {
        return static_cast<std::int64_t>(std::llround(
            (alpha_ - 0.5) * t_ - 2.0 * eta * std::sqrt(t_) - s * sigma * std::sqrt(t_)));
    };
    std::int64_t x1 = x_of(s1), x2 = x_of(s2);
    if (s1_eff)
        *s1_eff = s_of_x(x1);
    if (s2_eff)
        *s2_eff = s_of_x(x2);
    return sigma * std::sqrt(t_) * conj_value(x1, x2);
}

// ---------------------------------------------------------------------------

double gue_m_kernel(double a, double b, int M) {
    static const ContourNodes wline = vertical_line_contour(1.0, 10.0, 481);
    static const ContourNodes zcirc = circle_contour({0.0, 0.0}, 0.5, 128);
    cplx sum = 0.0;
    for (std::size_t bz = 0; bz < zcirc.z.size(); ++bz) {
        cplx z = zcirc.z[bz];
        cplx zpart = std::exp(z * b - 0.5 * z * z) * std::pow(z, -M) * zcirc.w[bz];
        cplx inner = 0.0;
        for (std::size_t aw = 0; aw < wline.z.size(); ++aw) {
            cplx w = wline.z[aw];
            inner += std::exp(0.5 * w * w - w * a) * std::pow(w, M) * wline.w[aw] / (w - z);
        }
        sum += inner * zpart;
    }
    if (std::fabs(sum.imag()) > 1e-8)
        throw std::runtime_error("gue_m_kernel: imaginary part above 1e-8");
    return sum.real();
}

KernelGapResult rescaled_kernel_gap(double t, double alpha, double eta, int M, double box,
                                    int grid_points, LatticeKernelParams params) {
    if (!(alpha > 0.0 && alpha < 0.5))
        throw std::invalid_argument("rescaled_kernel_gap: alpha must lie in (0,1/2)");
    if (M < 1)
        throw std::invalid_argument("rescaled_kernel_gap: M must be >= 1");
    ShockScaling sc = shock_constants(alpha, M, eta, t);
    std::int64_t n = sc.n_of_t();
    SlowStepKernel kernel(n, t, alpha, M, params);
    const double xi_c_eff =
        kernel.eta_eff() * std::sqrt(2.0 * (1.0 - 2.0 * alpha) / (alpha * (1.0 - alpha)));

    KernelGapResult out;
    out.eta_eff = kernel.eta_eff();
    out.xi_c_eff = xi_c_eff;
    out.grid.resize(grid_points);
    std::vector<std::int64_t> pts(grid_points);
    std::vector<double> s_eff(grid_points);
    for (int i = 0; i < grid_points; ++i) {
        out.grid[i] = -box + 2.0 * box * i / (grid_points - 1);
        pts[i] = static_cast<std::int64_t>(
            std::llround(sc.x_of_xi(out.grid[i])));
    }
    // snapped s values
    for (int i = 0; i < grid_points; ++i)
        s_eff[i] = (sc.center() - static_cast<double>(pts[i])) / (sc.sigma * std::sqrt(t));

    Eigen::MatrixXcd K = kernel.conj_matrix(pts, pts, std::log(1.0 / alpha));
    double gap = 0.0;
    for (int i = 0; i < grid_points; ++i)
        for (int j = 0; j < grid_points; ++j) {
            cplx v = sc.sigma * std::sqrt(t) * K(i, j);
            if (std::fabs(v.imag()) > 1e-6)
                throw std::runtime_error("rescaled_kernel_gap: imaginary part above 1e-6");
            double limit = gue_m_kernel(s_eff[i] + xi_c_eff, s_eff[j] + xi_c_eff, M);
            gap = std::max(gap, std::fabs(v.real() - limit));
        }
    out.gap = gap;
    return out;
}

// ---------------------------------------------------------------------------
// Direct route for the M = 1 shock system (half-flat + one slow leader).

namespace {

struct ScaledSum {
    double log_scale = -std::numeric_limits<double>::infinity();
    cplx mantissa = 0.0; // value = mantissa * exp(log_scale)
};

template <typename ExpFn, typename PreFn>
ScaledSum contour_sum(const ContourNodes& nodes, ExpFn exponent, PreFn prefactor) {
    double amax = -std::numeric_limits<double>::infinity();
    std::vector<cplx> exps(nodes.z.size());
    for (std::size_t k = 0; k < nodes.z.size(); ++k) {
        exps[k] = exponent(nodes.z[k]);
        amax = std::max(amax, exps[k].real());
    }
    ScaledSum s;
    if (!std::isfinite(amax))
        return s;
    s.log_scale = amax;
    for (std::size_t k = 0; k < nodes.z.size(); ++k)
        s.mantissa += std::exp(exps[k] - amax) * prefactor(nodes.z[k]) * nodes.w[k];
    return s;
}

} // namespace

ShockDirectResult shock_direct_cdf(std::int64_t x, std::int64_t n, double t, double alpha,
                                   DirectCdfParams p) {
    if (!(alpha > 0.0 && alpha < 0.5))
        throw std::invalid_argument("shock_direct_cdf: alpha must lie in (0,1/2)");
    if (n < 2 || !(t > 0.0))
        throw std::invalid_argument("shock_direct_cdf: need n >= 2, t > 0");

    const int L = p.section;
    std::vector<std::int64_t> ys(L);
    for (int i = 0; i < L; ++i)
        ys[i] = x - 1 - i;
    const double span = static_cast<double>(std::llabs(ys.back()) + n);

    // node budgets: winding from the lattice powers plus the essential factors
    const int nf = std::max(p.f_nodes, static_cast<int>(16.0 + 1.5 * (span + 4.0 * t)));
    const int ng = std::max(p.g_nodes, static_cast<int>(16.0 + 1.5 * (3.0 * span + t)));
    const int nv = std::max(p.v_nodes, static_cast<int>(16.0 + 1.5 * (2.0 * span + t)));
    const int nw = std::max(p.w_nodes, static_cast<int>(16.0 + 1.5 * (2.0 * span + 4.0 * t)));

    // f(y) = [w^{y+n-1}] e^{tw}(w-1)^{n-1}; zero for y + n <= 0.
    std::vector<double> f_log(L, -std::numeric_limits<double>::infinity());
    std::vector<double> f_man(L, 0.0);
    for (int i = 0; i < L; ++i) {
        std::int64_t y = ys[i];
        if (y + n <= 0)
            continue;
        double rf = std::min(20.0, std::max(0.05, static_cast<double>(y + n) / t));
        auto nodes = circle_contour({0.0, 0.0}, rf, nf);
        ScaledSum s = contour_sum(
            nodes,
            [&](cplx w) {
                return t * w + static_cast<double>(n - 1) * std::log(w - 1.0) -
                       static_cast<double>(y + n) * std::log(w);
            },
            [](cplx) { return cplx(1.0); });
        f_log[i] = s.log_scale;
        f_man[i] = s.mantissa.real();
    }

    // g(y): poles at -1 and alpha-1 enclosed; -alpha and 0 outside.
    const double g_center = 0.5 * alpha - 1.0;
    const double g_radius = 0.5 * alpha + 0.4 * (1.0 - 2.0 * alpha);
    auto gnodes = circle_contour({g_center, 0.0}, g_radius, ng);
    std::vector<double> g_log(L), g_man(L);
    for (int i = 0; i < L; ++i) {
        std::int64_t y = ys[i];
        ScaledSum s = contour_sum(
            gnodes,
            [&](cplx v) {
                return static_cast<double>(y + n - 1) * std::log(1.0 + v) - t * (v + 1.0) -
                       static_cast<double>(n - 1) * std::log(v);
            },
            [&](cplx v) { return (1.0 + 2.0 * v) / ((v + 1.0 - alpha) * (v + alpha)); });
        g_log[i] = s.log_scale;
        g_man[i] = s.mantissa.real();
    }

    // kernel contours: v around 0, w around {0, -v} excluding v + 1
    double rv = std::min(0.42, std::max(0.08, static_cast<double>(n - 1) / t));
    double rw_lo = rv + 0.12, rw_hi = 1.0 - rv - 0.12;
    if (rw_lo >= rw_hi) {
        rv = 0.3;
        rw_lo = 0.42;
        rw_hi = 0.58;
    }
    double rw = std::min(rw_hi, std::max(rw_lo, static_cast<double>(x + n - 1) / t));
    auto v_nodes = circle_contour({0.0, 0.0}, rv, nv);
    auto w_nodes = circle_contour({0.0, 0.0}, rw, nw);

    Eigen::MatrixXcd Aw(L, nw), Bv(nv, L), Cwv(nw, nv);
    std::vector<double> AK(L), BK(L);
    for (int i = 0; i < L; ++i) {
        std::int64_t xi = ys[i];
        double amax = -std::numeric_limits<double>::infinity();
        std::vector<cplx> es(nw);
        for (int a = 0; a < nw; ++a) {
            cplx w = w_nodes.z[a];
            es[a] = t * w + static_cast<double>(n - 1) * std::log(w - 1.0) -
                    static_cast<double>(xi + n - 1) * std::log(w);
            amax = std::max(amax, es[a].real());
        }
        AK[i] = amax;
        for (int a = 0; a < nw; ++a)
            Aw(i, a) = std::exp(es[a] - amax) * w_nodes.w[a];
    }
    for (int j = 0; j < L; ++j) {
        std::int64_t yj = ys[j];
        double bmax = -std::numeric_limits<double>::infinity();
        std::vector<cplx> es(nv);
        for (int b = 0; b < nv; ++b) {
            cplx v = v_nodes.z[b];
            es[b] = static_cast<double>(yj + n - 1) * std::log(1.0 + v) - t * (v + 1.0) -
                    static_cast<double>(n - 1) * std::log(v);
            bmax = std::max(bmax, es[b].real());
        }
        BK[j] = bmax;
        for (int b = 0; b < nv; ++b)
            Bv(b, j) = std::exp(es[b] - bmax) * v_nodes.w[b];
    }
    for (int a = 0; a < nw; ++a)
        for (int b = 0; b < nv; ++b) {
            cplx w = w_nodes.z[a], v = v_nodes.z[b];
            Cwv(a, b) = (1.0 + 2.0 * v) / (w * (w + v) * (w - v - 1.0));
        }
    Eigen::MatrixXcd Kscaled = Aw * Cwv * Bv; // K = e^{AK_i + BK_j} Kscaled(i,j)

    // conjugate by D = diag(e^{AK}): Khat(i,j) = e^{AK_j + BK_j} Kscaled(i,j)
    Eigen::MatrixXd Khat(L, L);
    double max_imag = 0.0, max_diag_exp = -1e300;
    for (int j = 0; j < L; ++j) {
        double e = AK[j] + BK[j];
        max_diag_exp = std::max(max_diag_exp, e);
        if (e > 600.0)
            throw std::runtime_error("shock_direct_cdf: kernel scale overflow");
        double col = std::exp(e);
        for (int i = 0; i < L; ++i) {
            max_imag = std::max(max_imag, std::fabs(Kscaled(i, j).imag()) * col);
            Khat(i, j) = Kscaled(i, j).real() * col;
        }
    }
    if (max_imag > 1e-6)
        throw std::runtime_error("shock_direct_cdf: kernel imaginary part " +
                                 std::to_string(max_imag));

    Eigen::VectorXd Fhat(L), Ghat(L);
    double max_vec_exp = 0.0;
    for (int i = 0; i < L; ++i) {
        double ef = f_log[i] - AK[i];
        double eg = g_log[i] + AK[i];
        if (f_man[i] != 0.0)
            max_vec_exp = std::max(max_vec_exp, std::fabs(ef));
        max_vec_exp = std::max(max_vec_exp, std::fabs(eg));
        Fhat(i) = (f_man[i] == 0.0) ? 0.0 : f_man[i] * std::exp(ef);
        Ghat(i) = g_man[i] * std::exp(eg);
        if (!std::isfinite(Fhat(i)) || !std::isfinite(Ghat(i)))
            throw std::runtime_error("shock_direct_cdf: vector scale overflow");
    }

    Eigen::MatrixXd Amat = Eigen::MatrixXd::Identity(L, L) - Khat;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(Amat);
    double det_part = lu.determinant();
    Eigen::MatrixXd inv = lu.inverse();
    double condition = Amat.cwiseAbs().colwise().sum().maxCoeff() *
                       inv.cwiseAbs().colwise().sum().maxCoeff();
    if (condition > p.condition_limit)
        throw std::runtime_error("shock_direct_cdf: resolvent condition " +
                                 std::to_string(condition) + " above limit");

    double scalar_term = Ghat.dot(Fhat);
    Eigen::VectorXd KF = Khat * Fhat;
    double resolvent_term = Ghat.dot(inv * KF);
    double probability = det_part * (1.0 - scalar_term - resolvent_term);

    Eigen::MatrixXd full = Eigen::MatrixXd::Identity(L, L) - Khat - Fhat * Ghat.transpose();
    double direct = full.determinant();

    ShockDirectResult r;
    r.probability = probability;
    r.det_part = det_part;
    r.scalar_term = scalar_term;
    r.resolvent_term = resolvent_term;
    r.condition = condition;
    r.direct_det_check = direct;
    r.dynamic_range_log = std::max(max_vec_exp, max_diag_exp);
    r.section = L;
    return r;
}

} // namespace shockline
