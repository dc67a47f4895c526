#include "shockline/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace shockline {

namespace {

QuadRule compute_gl(int n) {
    QuadRule r;
    r.x.resize(n);
    r.w.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            double dz = -p1 / pp;
            z += dz;
            if (std::fabs(dz) < 1e-15)
                break;
        }
        r.x[i] = -z;
        r.x[n - 1 - i] = z;
        r.w[i] = r.w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
    return r;
}

} // namespace

const QuadRule& gauss_legendre(int n) {
    if (n < 1)
        throw std::invalid_argument("gauss_legendre: n must be positive");
    static std::map<int, QuadRule> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, compute_gl(n)).first;
    return it->second;
}

QuadRule gauss_legendre_on(int n, double a, double b) {
    const QuadRule& base = gauss_legendre(n);
    QuadRule r;
    r.x.resize(n);
    r.w.resize(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) {
        r.x[i] = mid + half * base.x[i];
        r.w[i] = half * base.w[i];
    }
    return r;
}

QuadRule half_line_rule(int n, double a, double L) {
    const QuadRule& base = gauss_legendre(n);
    QuadRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < n; ++i) {
        const double u = 0.5 * (base.x[i] + 1.0);
        const double one_mu = 1.0 - u;
        r.x[i] = a + L * u / one_mu;
        r.w[i] = 0.5 * base.w[i] * L / (one_mu * one_mu);
    }
    return r;
}

ContourNodes circle_contour(std::complex<double> center, double radius, int n) {
    ContourNodes c;
    c.z.resize(n);
    c.w.resize(n);
    for (int k = 0; k < n; ++k) {
        const double th = 2.0 * M_PI * k / n;
        const std::complex<double> e(std::cos(th), std::sin(th));
        c.z[k] = center + radius * e;
        // dz/(2 pi i) = r e^{i th} dth / (2 pi) with dth = 2 pi / n
        c.w[k] = radius * e / static_cast<double>(n);
    }
    return c;
}

ContourNodes vertical_line_contour(double x0, double L, int n) {
    ContourNodes c;
    c.z.resize(n);
    c.w.resize(n);
    const double h = 2.0 * L / (n - 1);
    for (int k = 0; k < n; ++k) {
        const double y = -L + h * k;
        c.z[k] = {x0, y};
        // dw/(2 pi i) = i dy/(2 pi i) = dy / (2 pi), trapezoid end weights
        double wk = (k == 0 || k == n - 1) ? 0.5 * h : h;
        c.w[k] = wk / (2.0 * M_PI);
    }
    return c;
}

} // namespace shockline
