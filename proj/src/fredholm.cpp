#include "shockline/fredholm.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>

namespace shockline {

namespace {

double det_from_rule(const std::function<double(double, double)>& kernel, const QuadRule& rule) {
    const int n = static_cast<int>(rule.x.size());
    Eigen::MatrixXd B = Eigen::MatrixXd::Identity(n, n);
    std::vector<double> sw(n);
    for (int i = 0; i < n; ++i)
        sw[i] = std::sqrt(rule.w[i]);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            B(i, j) -= sw[i] * kernel(rule.x[i], rule.x[j]) * sw[j];
    return B.determinant();
}

} // namespace

double fredholm_det_halfline_once(const std::function<double(double, double)>& kernel, double a,
                                  int nodes, double map_scale) {
    return det_from_rule(kernel, half_line_rule(nodes, a, map_scale));
}

DetResult fredholm_det_halfline(const std::function<double(double, double)>& kernel, double a,
                                int nodes, double map_scale, double tol) {
    double coarse = fredholm_det_halfline_once(kernel, a, nodes, map_scale);
    double fine = fredholm_det_halfline_once(kernel, a, 2 * nodes, map_scale);
    double err = std::fabs(fine - coarse);
    if (err > tol)
        throw std::runtime_error("fredholm_det_halfline: doubling error " + std::to_string(err) +
                                 " above tolerance " + std::to_string(tol));
    return {fine, err};
}

DetResult fredholm_det_lattice(const std::function<double(std::int64_t, std::int64_t)>& kernel,
                               std::int64_t a, int section, double tol, int max_section) {
    auto eval = [&](int len) {
        Eigen::MatrixXd B = Eigen::MatrixXd::Identity(len, len);
        for (int i = 0; i < len; ++i)
            for (int j = 0; j < len; ++j)
                B(i, j) -= kernel(a - 1 - i, a - 1 - j);
        return B.determinant();
    };
    double prev = eval(section);
    for (int len = 2 * section; len <= max_section; len *= 2) {
        double cur = eval(len);
        double err = std::fabs(cur - prev);
        if (err <= tol)
            return {cur, err};
        prev = cur;
    }
    throw std::runtime_error("fredholm_det_lattice: section doubling did not stabilize below " +
                             std::to_string(tol));
}

DetResult fredholm_det_halfline_complex(
    const std::function<std::complex<double>(double, double)>& kernel, double a, int nodes,
    double map_scale, double tol, double imag_tol) {
    auto eval = [&](int n) {
        QuadRule rule = half_line_rule(n, a, map_scale);
        Eigen::MatrixXd B = Eigen::MatrixXd::Identity(n, n);
        double max_imag = 0.0;
        std::vector<double> sw(n);
        for (int i = 0; i < n; ++i)
            sw[i] = std::sqrt(rule.w[i]);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                std::complex<double> k = kernel(rule.x[i], rule.x[j]);
                max_imag = std::max(max_imag, std::fabs(k.imag()));
                B(i, j) -= sw[i] * k.real() * sw[j];
            }
        if (max_imag > imag_tol)
            throw std::runtime_error("fredholm_det_halfline_complex: imaginary part " +
                                     std::to_string(max_imag) + " above " +
                                     std::to_string(imag_tol));
        return B.determinant();
    };
    double coarse = eval(nodes);
    double fine = eval(2 * nodes);
    double err = std::fabs(fine - coarse);
    if (err > tol)
        throw std::runtime_error("fredholm_det_halfline_complex: doubling error " +
                                 std::to_string(err) + " above tolerance " + std::to_string(tol));
    return {fine, err};
}

} // namespace shockline
