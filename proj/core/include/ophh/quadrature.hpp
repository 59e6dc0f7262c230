#pragma once

#include <array>
#include <functional>

namespace ophh {

/// Adaptive Simpson integration of f over [a, b] to an absolute tolerance.
///
/// Subdivision is unbounded in depth but capped at `max_intervals` accepted
/// subintervals; exceeding the cap raises ConvergenceError carrying the last
/// local error estimate. Handles algebraic endpoint behavior (e.g. t^s near
/// 0) by subdividing toward the endpoint.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol = 1e-11, long max_intervals = 1L << 20);

/// 16-point Gauss-Legendre rule on [-1, 1]; nodes ascending.
const std::array<double, 16>& gauss_legendre16_nodes();
const std::array<double, 16>& gauss_legendre16_weights();

}  // namespace ophh
