#pragma once

namespace shockline {

// Airy function Ai and its derivative on [-40, 40], absolute error <= 1e-10.
// Power series in extended precision for |x| < 9, asymptotic expansions in
// zeta = (2/3)|x|^{3/2} beyond; the crossover 9.0 keeps both branches under
// the error budget. Arguments outside the domain throw std::domain_error.
double airy_ai(double x);
double airy_ai_prime(double x);

// Same functions with arguments beyond +40 mapped to 0 (|Ai| < 1e-73 there);
// for kernel evaluators whose quadrature nodes run far into the decay tail.
double airy_ai_clamped(double x);
double airy_ai_prime_clamped(double x);

} // namespace shockline
