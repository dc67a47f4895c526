#include "shockline/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace shockline {

Ecdf::Ecdf(std::vector<double> samples) : sorted_(std::move(samples)) {
    if (sorted_.empty())
        throw std::invalid_argument("Ecdf: empty sample");
    std::sort(sorted_.begin(), sorted_.end());
}

double Ecdf::operator()(double x) const {
    auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
    return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double ks_distance(const Ecdf& ecdf, const std::function<double(double)>& cdf) {
    const auto& xs = ecdf.sorted();
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        // right side at x_i, and both one-sided limits on the left
        double f = cdf(xs[i]);
        double f_left = cdf(std::nextafter(xs[i], -std::numeric_limits<double>::infinity()));
        d = std::max(d, std::fabs(f - static_cast<double>(i + 1) / n));
        d = std::max(d, std::fabs(f_left - static_cast<double>(i) / n));
    }
    return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j])
            ++i;
        else
            ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / a.size() -
                                  static_cast<double>(j) / b.size()));
    }
    return d;
}

WilsonInterval wilson_interval(std::int64_t k, std::int64_t n, double z) {
    if (n <= 0 || k < 0 || k > n)
        throw std::invalid_argument("wilson_interval: need 0 <= k <= n, n > 0");
    const double p = static_cast<double>(k) / static_cast<double>(n);
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {center - half, center + half, p};
}

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("linear_fit: need matching sizes >= 2");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
        syy += y[i] * y[i];
    }
    const double vx = sxx - sx * sx / n;
    const double vy = syy - sy * sy / n;
    const double cxy = sxy - sx * sy / n;
    if (vx == 0.0)
        throw std::invalid_argument("linear_fit: degenerate x");
    LinearFit f;
    f.slope = cxy / vx;
    f.intercept = (sy - f.slope * sx) / n;
    f.r2 = (vy == 0.0) ? 1.0 : cxy * cxy / (vx * vy);
    return f;
}

InterpCdf::InterpCdf(std::vector<double> xs, std::vector<double> fs)
    : xs_(std::move(xs)), fs_(std::move(fs)) {
    if (xs_.size() != fs_.size() || xs_.size() < 2)
        throw std::invalid_argument("InterpCdf: need matching sizes >= 2");
}

InterpCdf InterpCdf::tabulate(const std::function<double(double)>& cdf, double lo, double hi,
                              int points) {
    std::vector<double> xs(points), fs(points);
    for (int i = 0; i < points; ++i) {
        xs[i] = lo + (hi - lo) * i / (points - 1);
        fs[i] = cdf(xs[i]);
    }
    return InterpCdf(std::move(xs), std::move(fs));
}

double InterpCdf::operator()(double x) const {
    if (x <= xs_.front())
        return 0.0;
    if (x >= xs_.back())
        return 1.0;
    auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    std::size_t j = static_cast<std::size_t>(it - xs_.begin());
    double t = (x - xs_[j - 1]) / (xs_[j] - xs_[j - 1]);
    return fs_[j - 1] + t * (fs_[j] - fs_[j - 1]);
}

double standard_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

} // namespace shockline
