#pragma once

#include <complex>
#include <cstdint>
#include <functional>

#include "shockline/quadrature.hpp"

namespace shockline {

struct DetResult {
    double value;
    double error_estimate; // change under node / section doubling
};

// Nystrom value of det(1 - K) on L^2((a, inf)) for a real kernel: Gauss-
// Legendre nodes under the half-line map, symmetrized weights, dense
// determinant. The error estimate is the change when the node count
// doubles; throws if it exceeds `tol`.
DetResult fredholm_det_halfline(const std::function<double(double, double)>& kernel, double a,
                                int nodes = 64, double map_scale = 8.0, double tol = 1e-6);

// Same discretization without the doubling pass (single evaluation).
double fredholm_det_halfline_once(const std::function<double(double, double)>& kernel, double a,
                                  int nodes, double map_scale);

// Finite-section value of det(1 - K) on l^2({..., a-2, a-1}) for a lattice
// kernel, sections {a-1, ..., a-section} doubled until stable. A bounded
// diagonal conjugation (similarity) may be folded into the kernel by the
// caller; it cannot change the value.
DetResult fredholm_det_lattice(const std::function<double(std::int64_t, std::int64_t)>& kernel,
                               std::int64_t a, int section = 32, double tol = 1e-6,
                               int max_section = 512);

// Complex-entry variant used by contour-evaluated kernels: checks that the
// imaginary parts of the Nystrom matrix stay below `imag_tol` and returns
// the real determinant.
DetResult fredholm_det_halfline_complex(
    const std::function<std::complex<double>(double, double)>& kernel, double a, int nodes = 64,
    double map_scale = 8.0, double tol = 1e-6, double imag_tol = 1e-8);

} // namespace shockline
