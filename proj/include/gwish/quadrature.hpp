#pragma once

#include <functional>

namespace gwish::quad {

using Fn1 = std::function<double(double)>;
using Fn2 = std::function<double(double, double)>;

/// Integral over [a, b]; tolerates integrable endpoint singularities.
double finite(const Fn1& f, double a, double b, double rel_tol = 1e-11);

/// Integral over [a, inf) for e^{-x}-damped integrands.
double to_infinity(const Fn1& f, double a, double rel_tol = 1e-11);

/// Integral over (0, inf) x (0, inf), splitting the inner range at the
/// diagonal so |x - y| kinks sit on panel boundaries.
double positive_quadrant(const Fn2& f, double rel_tol = 1e-10);

/// Integral over the rectangle [a,b] x [c,d] restricted to y > x.
double rectangle_above_diagonal(const Fn2& f, double a, double b, double c, double d);

}  // namespace gwish::quad
