#include "shockline/rmt.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "shockline/airy.hpp"

namespace shockline {

double sample_gue_max(int M, CounterRng& rng) {
    if (M < 1)
        throw std::invalid_argument("sample_gue_max: M must be >= 1");
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXcd H(M, M);
    const double isq2 = 1.0 / std::sqrt(2.0);
    for (int j = 0; j < M; ++j) {
        H(j, j) = normal(rng);
        for (int k = j + 1; k < M; ++k) {
            std::complex<double> v(normal(rng) * isq2, normal(rng) * isq2);
            H(j, k) = v;
            H(k, j) = std::conj(v);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H, Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
}

namespace {

// eigenvalues of (diag d, offdiag e) strictly below x
int sturm_count(const std::vector<double>& d, const std::vector<double>& e, double x) {
    int count = 0;
    double q = d[0] - x;
    if (q < 0.0)
        ++count;
    for (std::size_t i = 1; i < d.size(); ++i) {
        if (q == 0.0)
            q = 1e-300;
        q = d[i] - x - e[i - 1] * e[i - 1] / q;
        if (q < 0.0)
            ++count;
    }
    return count;
}

} // namespace

double sample_gue_max_tridiag(int M, CounterRng& rng) {
    if (M < 1)
        throw std::invalid_argument("sample_gue_max_tridiag: M must be >= 1");
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> d(M), e(M > 1 ? M - 1 : 0);
    for (int i = 0; i < M; ++i)
        d[i] = normal(rng);
    for (int i = 0; i + 1 < M; ++i) {
        // chi_{2k}/sqrt(2), k = M-1, ..., 1; chi^2_{2k}/2 ~ Gamma(k, 1)
        std::gamma_distribution<double> gamma(static_cast<double>(M - 1 - i), 1.0);
        e[i] = std::sqrt(gamma(rng));
    }
    if (M == 1)
        return d[0];
    double lo = d[0], hi = d[0];
    for (int i = 0; i < M; ++i) {
        double spread = (i > 0 ? std::fabs(e[i - 1]) : 0.0) + (i + 1 < M ? std::fabs(e[i]) : 0.0);
        lo = std::min(lo, d[i] - spread);
        hi = std::max(hi, d[i] + spread);
    }
    for (int iter = 0; iter < 200 && hi - lo > 1e-12 * std::max(1.0, std::fabs(hi)); ++iter) {
        double mid = 0.5 * (lo + hi);
        if (sturm_count(d, e, mid) == M)
            hi = mid; // all eigenvalues below mid
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

namespace {

// phi_0..phi_{M-1} at x for weight e^{-x^2/2}
void oscillator_functions(int M, double x, std::vector<double>& out) {
    out.resize(M);
    const double base = std::exp(-x * x / 4.0) / std::pow(2.0 * M_PI, 0.25);
    double prev = 0.0, cur = base;
    out[0] = cur;
    for (int j = 1; j < M; ++j) {
        double next = (x * cur - std::sqrt(static_cast<double>(j - 1)) * prev) /
                      std::sqrt(static_cast<double>(j));
        prev = cur;
        cur = next;
        out[j] = cur;
    }
}

double gue_m_cdf_once(double s, int M, int nodes) {
    const double upper = std::max(s + 30.0, 2.0 * std::sqrt(static_cast<double>(M)) + 12.0);
    QuadRule rule = gauss_legendre_on(nodes, s, upper);
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(M, M);
    std::vector<double> phi;
    for (std::size_t q = 0; q < rule.x.size(); ++q) {
        oscillator_functions(M, rule.x[q], phi);
        for (int j = 0; j < M; ++j)
            for (int k = j; k < M; ++k)
                G(j, k) += rule.w[q] * phi[j] * phi[k];
    }
    for (int j = 0; j < M; ++j)
        for (int k = 0; k < j; ++k)
            G(j, k) = G(k, j);
    return (Eigen::MatrixXd::Identity(M, M) - G).determinant();
}

} // namespace

double gue_m_cdf(double s, int M, double tol) {
    if (M < 1)
        throw std::invalid_argument("gue_m_cdf: M must be >= 1");
    if (!std::isfinite(s))
        throw std::invalid_argument("gue_m_cdf: s must be finite");
    double coarse = gue_m_cdf_once(s, M, 96);
    double fine = gue_m_cdf_once(s, M, 192);
    double err = std::fabs(fine - coarse);
    if (err > tol)
        throw std::runtime_error("gue_m_cdf: node doubling error " + std::to_string(err) +
                                 " above tolerance");
    return fine;
}

double gue_m_cdf_contour(double s, int M, const GueContourParams& p) {
    if (M < 1)
        throw std::invalid_argument("gue_m_cdf_contour: M must be >= 1");
    if (!(p.eps > 0.0))
        throw std::invalid_argument("gue_m_cdf_contour: eps must be positive");
    // truncation tail of the w line: Gaussian factor e^{(eps^2 - y^2)/2}
    {
        double L = p.line_halflen;
        double tail = std::exp(0.5 * (p.eps * p.eps - L * L)) * std::pow(L, M);
        if (tail > 1e-12)
            throw std::runtime_error("gue_m_cdf_contour: line truncation tail too large");
    }
    ContourNodes wline = vertical_line_contour(p.eps, p.line_halflen, p.line_nodes);
    ContourNodes zcirc = circle_contour({0.0, 0.0}, 0.5 * p.eps, p.circle_nodes);
    const int nw = p.line_nodes, nz = p.circle_nodes;

    Eigen::MatrixXcd C(nw, nz);
    for (int a = 0; a < nw; ++a)
        for (int b = 0; b < nz; ++b)
            C(a, b) = wline.w[a] * zcirc.w[b] / (wline.z[a] - zcirc.z[b]);

    // Beyond x_cut the kernel's Gaussian weight is below 1e-25, while the
    // z-circle quadrature of e^{z x} would blow up; rows/columns there are
    // dropped (domain tail cut).
    const double x_cut = std::max(s + 2.0, 16.0 + M);
    auto build_kernel = [&](const std::vector<double>& xs) {
        const int m = static_cast<int>(xs.size());
        Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(m, nw), B = Eigen::MatrixXcd::Zero(nz, m);
        for (int a = 0; a < nw; ++a) {
            std::complex<double> w = wline.z[a];
            std::complex<double> wm = std::pow(w, M);
            for (int i = 0; i < m; ++i)
                if (xs[i] <= x_cut)
                    A(i, a) = std::exp(0.5 * w * w - w * xs[i]) * wm;
        }
        for (int b = 0; b < nz; ++b) {
            std::complex<double> z = zcirc.z[b];
            std::complex<double> zm = std::pow(z, -M);
            for (int j = 0; j < m; ++j)
                if (xs[j] <= x_cut)
                    B(b, j) = std::exp(z * xs[j] - 0.5 * z * z) * zm;
        }
        return Eigen::MatrixXcd(A * C * B);
    };

    auto det_with = [&](int nodes) {
        QuadRule rule = half_line_rule(nodes, s, p.map_scale);
        Eigen::MatrixXcd K = build_kernel(rule.x);
        Eigen::MatrixXd Bm = Eigen::MatrixXd::Identity(nodes, nodes);
        double max_imag = 0.0;
        for (int i = 0; i < nodes; ++i)
            for (int j = 0; j < nodes; ++j) {
                max_imag = std::max(max_imag, std::fabs(K(i, j).imag()));
                Bm(i, j) -= std::sqrt(rule.w[i]) * K(i, j).real() * std::sqrt(rule.w[j]);
            }
        if (max_imag > 1e-8)
            throw std::runtime_error("gue_m_cdf_contour: kernel imaginary part above 1e-8");
        return Bm.determinant();
    };

    double coarse = det_with(p.nystrom_nodes);
    double fine = det_with(2 * p.nystrom_nodes);
    double err = std::fabs(fine - coarse);
    if (err > p.tol)
        throw std::runtime_error("gue_m_cdf_contour: node doubling error " + std::to_string(err) +
                                 " above tolerance");
    return fine;
}

double tracy_widom_cdf(double s, int beta, double tol) {
    if (!std::isfinite(s))
        throw std::invalid_argument("tracy_widom_cdf: s must be finite");
    if (beta == 2) {
        auto airy_kernel = [](double x, double y) {
            if (std::fabs(x - y) < 1e-8) {
                double m = 0.5 * (x + y);
                double ai = airy_ai_clamped(m), aip = airy_ai_prime_clamped(m);
                return aip * aip - m * ai * ai;
            }
            return (airy_ai_clamped(x) * airy_ai_prime_clamped(y) -
                    airy_ai_prime_clamped(x) * airy_ai_clamped(y)) /
                   (x - y);
        };
        return fredholm_det_halfline(airy_kernel, s, 64, 8.0, tol).value;
    }
    if (beta == 1) {
        auto goe_kernel = [s](double x, double y) { return airy_ai_clamped(x + y + s); };
        return fredholm_det_halfline(goe_kernel, 0.0, 64, 8.0, tol).value;
    }
    throw std::invalid_argument("tracy_widom_cdf: beta must be 1 or 2");
}

} // namespace shockline
