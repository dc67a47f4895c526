#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace shockline {

// Right-continuous empirical CDF over a sorted copy of the samples.
class Ecdf {
  public:
    explicit Ecdf(std::vector<double> samples);
    double operator()(double x) const;
    const std::vector<double>& sorted() const { return sorted_; }
    std::size_t size() const { return sorted_.size(); }

  private:
    std::vector<double> sorted_;
};

// sup_x |ECDF(x) - F(x)|, evaluated at both sides of every sample step.
double ks_distance(const Ecdf& ecdf, const std::function<double(double)>& cdf);

// Two-sample Kolmogorov-Smirnov statistic.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

struct WilsonInterval {
    double lo;
    double hi;
    double point;
};
// 95% (z=1.96 by default) Wilson score interval for k successes out of n.
WilsonInterval wilson_interval(std::int64_t k, std::int64_t n, double z = 1.959963984540054);

struct LinearFit {
    double slope;
    double intercept;
    double r2;
};
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

// Piecewise-linear interpolant of a monotone CDF tabulated on a grid;
// clamps to {0,1} outside. Cheap enough for KS against large samples.
class InterpCdf {
  public:
    InterpCdf(std::vector<double> xs, std::vector<double> fs);
    static InterpCdf tabulate(const std::function<double(double)>& cdf, double lo, double hi,
                              int points);
    double operator()(double x) const;
    const std::vector<double>& grid() const { return xs_; }
    const std::vector<double>& values() const { return fs_; }

  private:
    std::vector<double> xs_, fs_;
};

double standard_normal_cdf(double x);

} // namespace shockline
