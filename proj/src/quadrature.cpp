#include "gwish/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace gwish::quad {

double finite(const Fn1& f, double a, double b, double rel_tol) {
  if (!(b > a)) return 0.0;
  boost::math::quadrature::tanh_sinh<double> ts;
  return ts.integrate(f, a, b, rel_tol);
}

double to_infinity(const Fn1& f, double a, double rel_tol) {
  boost::math::quadrature::exp_sinh<double> es;
  auto shifted = [&](double t) { return f(a + t); };
  return es.integrate(shifted, 0.0, std::numeric_limits<double>::infinity(), rel_tol);
}

double positive_quadrant(const Fn2& f, double rel_tol) {
  auto inner = [&](double x) {
    auto fx = [&](double y) { return f(x, y); };
    return finite(fx, 0.0, x, rel_tol) + to_infinity(fx, x, rel_tol);
  };
  return finite(inner, 0.0, 1.0, rel_tol) + to_infinity(inner, 1.0, rel_tol);
}

double rectangle_above_diagonal(const Fn2& f, double a, double b, double c, double d) {
  using Rule = boost::math::quadrature::gauss<double, 30>;
  auto inner = [&](double x) {
    const double lo = std::max(c, x);
    if (!(d > lo)) return 0.0;
    return Rule::integrate([&](double y) { return f(x, y); }, lo, d);
  };
  // inner(x) has a kink at x = c when the cell straddles the diagonal.
  const double mid = std::clamp(c, a, b);
  double total = 0.0;
  if (mid > a) total += Rule::integrate(inner, a, mid);
  if (b > mid) total += Rule::integrate(inner, mid, b);
  return total;
}

}  // namespace gwish::quad
