#include "shockline/airy.hpp"

#include <cmath>
#include <stdexcept>

namespace shockline {

namespace {

constexpr double kCrossover = 9.0;

// Ai(0) = 3^{-2/3}/Gamma(2/3), Ai'(0) = -3^{-1/3}/Gamma(1/3).
constexpr long double kAi0 = 0.355028053887817239260L;
constexpr long double kAip0 = -0.258819403792806798405L;

struct AiPair {
    double ai;
    double aip;
};

// Maclaurin series Ai = Ai(0) f + Ai'(0) g, with f, g the entire solutions
// of y'' = xy. Long-double accumulation covers the cancellation on the
// negative axis up to the crossover.
AiPair series(double xd) {
    if (xd == 0.0)
        return {static_cast<double>(kAi0), static_cast<double>(kAip0)};
    const long double x = xd;
    const long double x3 = x * x * x;
    long double ta = 1.0L; // a_k x^{3k}
    long double tb = x;    // b_k x^{3k+1}
    long double f = ta, g = tb;
    long double fp = 0.0L, gp = tb / x; // g' k=0 term = 1
    long double scale = 1.0L;           // largest magnitude seen, for the stop rule
    for (int k = 0; k < 160; ++k) {
        ta *= x3 / ((3.0L * k + 2.0L) * (3.0L * k + 3.0L));
        tb *= x3 / ((3.0L * k + 3.0L) * (3.0L * k + 4.0L));
        const long double kk = 3.0L * (k + 1);
        f += ta;
        g += tb;
        fp += ta * kk / x;
        gp += tb * (kk + 1.0L) / x;
        long double m = std::fabs(ta) + std::fabs(tb);
        if (m > scale)
            scale = m;
        if (m < 1e-30L * scale && k > 3)
            break;
    }
    return {static_cast<double>(kAi0 * f + kAip0 * g),
            static_cast<double>(kAi0 * fp + kAip0 * gp)};
}

constexpr int kAsymTerms = 40;

struct AsymCoeffs {
    double u[kAsymTerms + 1];
    double v[kAsymTerms + 1];
    AsymCoeffs() {
        u[0] = v[0] = 1.0;
        for (int k = 1; k <= kAsymTerms; ++k) {
            u[k] = u[k - 1] * (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) /
                   (216.0 * k * (2.0 * k - 1.0));
            v[k] = u[k] * (6.0 * k + 1.0) / (1.0 - 6.0 * k);
        }
    }
};

const AsymCoeffs& coeffs() {
    static const AsymCoeffs c;
    return c;
}

AiPair asymptotic_pos(double x) {
    const auto& c = coeffs();
    const double zeta = 2.0 / 3.0 * std::pow(x, 1.5);
    double su = 1.0, sv = 1.0;
    double sign = -1.0, zp = zeta, prev = 1.0;
    for (int k = 1; k <= kAsymTerms; ++k) {
        double tu = c.u[k] / zp;
        if (std::fabs(tu) >= prev)
            break; // optimal truncation
        prev = std::fabs(tu);
        su += sign * tu;
        sv += sign * c.v[k] / zp;
        sign = -sign;
        zp *= zeta;
    }
    const double pre = std::exp(-zeta) / (2.0 * std::sqrt(M_PI));
    return {pre * su / std::pow(x, 0.25), -pre * sv * std::pow(x, 0.25)};
}

AiPair asymptotic_neg(double xabs) {
    const auto& c = coeffs();
    const double zeta = 2.0 / 3.0 * std::pow(xabs, 1.5);
    double se_u = 0.0, so_u = 0.0, se_v = 0.0, so_v = 0.0;
    double sign = 1.0, prev = 2.0;
    for (int k = 0; 2 * k + 1 <= kAsymTerms; ++k) {
        const double ze = std::pow(zeta, 2 * k);
        const double te = c.u[2 * k] / ze;
        if (std::fabs(te) >= prev)
            break;
        prev = std::fabs(te);
        se_u += sign * te;
        se_v += sign * c.v[2 * k] / ze;
        so_u += sign * c.u[2 * k + 1] / (ze * zeta);
        so_v += sign * c.v[2 * k + 1] / (ze * zeta);
        sign = -sign;
    }
    const double arg = zeta - 0.25 * M_PI;
    const double cs = std::cos(arg), sn = std::sin(arg);
    const double q = std::pow(xabs, 0.25);
    return {(cs * se_u + sn * so_u) / (std::sqrt(M_PI) * q),
            (sn * se_v - cs * so_v) * q / std::sqrt(M_PI)};
}

AiPair eval(double x) {
    if (std::fabs(x) < kCrossover)
        return series(x);
    return x > 0.0 ? asymptotic_pos(x) : asymptotic_neg(-x);
}

void check_domain(double x) {
    if (!(x >= -40.0 && x <= 40.0))
        throw std::domain_error("airy_ai: argument outside [-40, 40]");
}

} // namespace

double airy_ai(double x) {
    check_domain(x);
    return eval(x).ai;
}

double airy_ai_prime(double x) {
    check_domain(x);
    return eval(x).aip;
}

double airy_ai_clamped(double x) {
    if (x > 40.0)
        return 0.0;
    check_domain(x);
    return eval(x).ai;
}

double airy_ai_prime_clamped(double x) {
    if (x > 40.0)
        return 0.0;
    check_domain(x);
    return eval(x).aip;
}

} // namespace shockline
