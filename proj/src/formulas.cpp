#include "gwish/formulas.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "gwish/errors.hpp"
#include "gwish/zonal.hpp"

namespace gwish {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
const double kLn2 = std::log(2.0);
const double kLnPi = std::log(std::numbers::pi);

void require_alpha_domain(const AlphaSpec& alpha) {
  for (double a : alpha.values())
    if (!(a > -1.0)) throw DomainError("alpha entries must exceed -1");
}

template <class Scalar>
void require_square_matching(const Matrix<Scalar>& w, const AlphaSpec& alpha, const char* who) {
  if (w.rows() != w.cols()) throw ShapeError(std::string(who) + ": matrix is not square");
  if (w.rows() != alpha.size()) {
    throw ParameterError(std::string(who) + ": matrix size " + std::to_string(w.rows()) + " does not match N = " +
                         std::to_string(alpha.size()));
  }
}

template <class Scalar>
double real_trace(const Matrix<Scalar>& m) {
  return std::real(m.trace());
}

double log_vandermonde_abs(const std::vector<double>& x) {
  double s = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j)
    for (std::size_t k = j + 1; k < x.size(); ++k) s += std::log(std::abs(x[k] - x[j]));
  return s;
}

bool all_positive(const std::vector<double>& x) {
  return std::all_of(x.begin(), x.end(), [](double v) { return v > 0.0; });
}

}  // namespace

double norm_const_real(const AlphaSpec& alpha) {
  require_alpha_domain(alpha);
  const double n = alpha.size();
  double s = n * (n - 1.0) / 4.0 * std::log(2.0 * std::numbers::pi);
  for (double a : alpha.values()) s += 0.5 * (a + 1.0) * kLn2 + std::lgamma(0.5 * (a + 1.0));
  return s;
}

double norm_const_complex(const AlphaSpec& alpha) {
  require_alpha_domain(alpha);
  const double n = alpha.size();
  double s = n * (n - 1.0) / 2.0 * kLnPi;
  for (double a : alpha.values()) s += std::lgamma(a + 1.0);
  return s;
}

double norm_const(const AlphaSpec& alpha, FieldTag field) {
  return field == FieldTag::Real ? norm_const_real(alpha) : norm_const_complex(alpha);
}

std::vector<double> q_exponents(const AlphaSpec& alpha, FieldTag field) {
  const int n = alpha.size();
  std::vector<double> e(static_cast<std::size_t>(n));
  for (int i = 0; i + 1 < n; ++i) e[i] = alpha[i] - alpha[i + 1] - 1.0;
  e[n - 1] = field == FieldTag::Real ? alpha[n - 1] - 1.0 : alpha[n - 1];
  if (field == FieldTag::Real)
    for (double& v : e) v *= 0.5;
  return e;
}

template <class Scalar>
DensityValue power_function(const Matrix<Scalar>& w, const std::vector<double>& exponents) {
  if (w.rows() != w.cols()) throw ShapeError("power_function: matrix is not square");
  if (static_cast<std::size_t>(w.rows()) != exponents.size()) throw ParameterError("power_function: size mismatch");
  const auto minors = leading_minor_dets(w);
  double s = 0.0;
  for (std::size_t i = 0; i < minors.size(); ++i) {
    const double d = std::real(minors[i]);
    if (!(d > 0.0)) return DensityValue::outside();
    if (exponents[i] != 0.0) s += exponents[i] * std::log(d);
  }
  return DensityValue::at(s);
}

template <class Scalar>
DensityValue q_factor(const Matrix<Scalar>& w, const AlphaSpec& alpha) {
  require_square_matching(w, alpha, "q_factor");
  return power_function(w, q_exponents(alpha, field_of_v<Scalar>));
}

template <class Scalar>
DensityValue element_pdf(const Matrix<Scalar>& w, const AlphaSpec& alpha) {
  const DensityValue q = q_factor(w, alpha);
  if (!q.in_support) return q;
  constexpr double r = field_of_v<Scalar> == FieldTag::Real ? 2.0 : 1.0;
  return DensityValue::at(q.log_density - real_trace(w) / r - norm_const(alpha, field_of_v<Scalar>));
}

double correlation_log_constant(const AlphaSpec& alpha, FieldTag field, ConstantMode mode) {
  double s = -norm_const(alpha, field);
  for (int l = 1; l <= alpha.size(); ++l) {
    const double a = alpha[l - 1] + l;
    if (field == FieldTag::Real) {
      s += std::lgamma(0.5 * a);
      if (mode == ConstantMode::Audited) s += 0.5 * a * kLn2;
    } else {
      s += std::lgamma(a);
    }
  }
  return s;
}

template <class Scalar>
DensityValue correlation_pdf(const Matrix<Scalar>& c, const AlphaSpec& alpha, ConstantMode mode) {
  require_square_matching(c, alpha, "correlation_pdf");
  for (Eigen::Index i = 0; i < c.rows(); ++i) {
    if (std::abs(c(i, i) - Scalar(1.0)) > 1e-12) throw DomainError("correlation_pdf: diagonal entries must be 1");
  }
  const DensityValue q = q_factor(c, alpha);
  if (!q.in_support) return q;
  return DensityValue::at(q.log_density + correlation_log_constant(alpha, field_of_v<Scalar>, mode));
}

template <class Scalar>
DensityValue transformed_pdf(const Matrix<Scalar>& x, const AlphaSpec& alpha, const Matrix<Scalar>& l,
                             ConstantMode mode) {
  require_lower_triangular_invertible(l);
  require_square_matching(x, alpha, "transformed_pdf");
  if (l.rows() != x.rows()) throw ShapeError("transformed_pdf: L has the wrong size");
  const int n = alpha.size();
  constexpr FieldTag field = field_of_v<Scalar>;
  const double r = field == FieldTag::Real ? 2.0 : 1.0;

  const DensityValue q = q_factor(x, alpha);
  if (!q.in_support) return q;

  const Matrix<Scalar> llh = l * l.adjoint();
  const Matrix<Scalar> m = mode == ConstantMode::AsPrinted ? llh : Matrix<Scalar>(l.adjoint() * l);
  auto log_bottom_det = [&](int k) {
    const Matrix<Scalar> b = m.bottomRightCorner(k, k);
    return std::log(std::abs(b.determinant()));
  };
  double s = q.log_density - norm_const(alpha, field);
  for (int i = 1; i < n; ++i) s += (alpha[i - 1] - alpha[i] - 1.0) / r * log_bottom_det(n - i);
  s -= (alpha[0] + 1.0) / r * log_bottom_det(n);

  // tr(X (L L^dagger)^{-1}) = tr(L^{-1} X L^{-dagger}); solve instead of inverting.
  const auto tl = l.template triangularView<Eigen::Lower>();
  Matrix<Scalar> z = tl.solve(x);
  z = tl.solve(Matrix<Scalar>(z.adjoint()));
  s -= real_trace(z) / r;
  return DensityValue::at(s);
}

double log_alternant(std::vector<double> x, std::vector<double> a) {
  if (x.size() != a.size()) throw ParameterError("log_alternant: size mismatch");
  std::sort(x.begin(), x.end(), std::greater<>());
  std::sort(a.begin(), a.end(), std::greater<>());
  const auto n = static_cast<Eigen::Index>(x.size());
  // Scale row j and column k by x_j^{-a_j/2} and x_k^{-a_k/2} so the
  // diagonal is 1 and the dominant term of the expansion is O(1); long double
  // keeps the remaining off-diagonal range well inside its exponent.
  std::vector<double> lx(x.size());
  double shift = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (!(x[j] > 0.0)) throw DomainError("log_alternant: x must be positive");
    lx[j] = std::log(x[j]);
    shift += a[j] * lx[j];
  }
  Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic> alt(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k)
      alt(j, k) = std::exp(static_cast<long double>(a[k] * lx[j]) - 0.5L * a[j] * lx[j] - 0.5L * a[k] * lx[k]);
  const long double det = alt.partialPivLu().determinant();
  if (!(det > 0.0L)) return -std::numeric_limits<double>::infinity();
  return shift + static_cast<double>(std::log(det));
}

DensityValue eig_pdf_complex(const std::vector<double>& x, const AlphaSpec& alpha) {
  const int n = alpha.size();
  if (static_cast<int>(x.size()) != n) throw ParameterError("eig_pdf_complex: need N eigenvalues");
  if (!all_positive(x)) return DensityValue::outside();
  std::vector<double> a = alpha.values();
  std::sort(a.begin(), a.end(), std::greater<>());
  for (int k = 1; k < n; ++k) {
    if (a[k - 1] == a[k]) {
      throw DegeneracyError("eig_pdf_complex: repeated alpha; use mb_eig_pdf for the confluent case");
    }
  }
  std::vector<double> xs = x;
  std::sort(xs.begin(), xs.end(), std::greater<>());
  const double la = log_alternant(xs, a);
  if (std::isinf(la)) return DensityValue::outside();
  double s = la + log_vandermonde_abs(xs) - std::lgamma(n + 1.0);
  for (int j = 0; j < n; ++j) {
    s -= xs[j] + std::lgamma(a[j] + 1.0);
    for (int k = j + 1; k < n; ++k) s -= std::log(a[j] - a[k]);
  }
  return DensityValue::at(s);
}

DensityValue mb_eig_pdf(const std::vector<double>& x, const MBParams& p, ConstantMode mode) {
  if (!(p.theta >= 0.0) || !(p.c > -1.0) || p.N < 1) throw DomainError("mb_eig_pdf: need theta >= 0, c > -1");
  if (static_cast<int>(x.size()) != p.N) throw ParameterError("mb_eig_pdf: need N eigenvalues");
  if (p.theta == 0.0 && p.N >= 2) throw DegeneracyError("mb_eig_pdf: theta = 0 makes the density vanish for N >= 2");
  if (!all_positive(x)) return DensityValue::outside();
  const int n = p.N;
  double s = 0.0;
  for (int j = 0; j < n; ++j) {
    s += p.c * std::log(x[j]) - x[j];
    for (int k = j + 1; k < n; ++k) {
      const double hi = std::max(x[j], x[k]), lo = std::min(x[j], x[k]);
      if (hi == lo) return DensityValue::outside();
      // log(hi - lo) + log(hi^theta - lo^theta) without overflow.
      const double lr = std::log(lo / hi);
      s += (1.0 + p.theta) * std::log(hi) + std::log1p(-lo / hi) +
           std::log(-std::expm1(p.theta * lr));
    }
  }
  for (int l = 1; l <= n; ++l) s -= std::lgamma(l + 1.0) + std::lgamma(p.theta * (l - 1) + p.c + 1.0);
  if (mode == ConstantMode::Audited) s -= 0.5 * n * (n - 1.0) * std::log(p.theta);
  return DensityValue::at(s);
}

double c_N_constant(int n) {
  if (n < 1) throw ParameterError("c_N_constant: N must be >= 1");
  double s = -0.5 * n * (n + 1.0) * kLn2;
  for (int j = 1; j <= n; ++j) s += std::lgamma(1.5) - std::lgamma(1.0 + 0.5 * j);
  return std::exp(s);
}

DensityValue eig_pdf_real_zonal(const std::vector<double>& x, const GammaSpec& g) {
  const int n = g.size();
  if (static_cast<int>(x.size()) != n) throw ParameterError("eig_pdf_real_zonal: need N eigenvalues");
  if (!all_positive(x)) return DensityValue::outside();
  const auto alpha = g.alpha_ints();
  double s = std::log(c_N_constant(n));
  for (int j = 0; j < n; ++j) s -= 0.5 * (g.gamma()[j] - 1.0) * kLn2 + std::lgamma(0.5 * (alpha[j] + 1.0));
  // Homogeneity keeps the zonal evaluation in range for large x.
  const Partition kappa = g.kappa();
  const double top = *std::max_element(x.begin(), x.end());
  std::vector<double> scaled(x);
  for (double& v : scaled) v /= top;
  const double ratio = zonal_ratio(kappa, scaled);
  if (!(ratio > 0.0)) return DensityValue::outside();
  s += std::log(ratio) + kappa.size() * std::log(top);
  for (int j = 0; j < n; ++j) s -= 0.5 * g.s() * std::log(x[j]) + 0.5 * x[j];
  const double lv = log_vandermonde_abs(x);
  if (std::isinf(lv)) return DensityValue::outside();
  return DensityValue::at(s + lv);
}

double Polynomial::operator()(double x) const {
  double v = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * x + *it;
  return v;
}

Polynomial avg_charpoly(const AlphaSpec& alpha) {
  const int n = alpha.size();
  std::vector<double> prod(static_cast<std::size_t>(n + 1), 1.0);
  for (int k = 0; k <= n; ++k)
    for (double a : alpha.values()) prod[k] *= a + k + 1.0;
  Polynomial p;
  p.coeffs.assign(static_cast<std::size_t>(n + 1), 0.0);
  for (int nu = 0; nu <= n; ++nu) {
    double c = 0.0;
    for (int k = 0; k <= nu; ++k) {
      const double sign = (n - k) % 2 == 0 ? 1.0 : -1.0;
      c += sign * prod[k] / (std::tgamma(nu - k + 1.0) * std::tgamma(k + 1.0));
    }
    p.coeffs[nu] = c;
  }
  return p;
}

double fuss_catalan_moment(double theta, int k) {
  if (!(theta >= 0.0)) throw ParameterError("fuss_catalan_moment: theta must be >= 0");
  if (k < 0) throw ParameterError("fuss_catalan_moment: k must be >= 0");
  if (k <= 1) return 1.0;
  const double tk = theta * k;
  return std::exp(std::lgamma(tk + k + 1.0) - std::lgamma(tk + 2.0) - std::lgamma(k + 1.0));
}

template <class Scalar>
Residual bordered_charpoly_identity(const Matrix<Scalar>& y, double x) {
  const Eigen::Index n = y.rows(), big_n = y.cols();
  if (n < big_n) throw ShapeError("bordered_charpoly_identity: need n >= N");
  Matrix<Scalar> b = Matrix<Scalar>::Zero(n + big_n, n + big_n);
  b.topRightCorner(n, big_n) = -y;
  b.bottomLeftCorner(big_n, n) = -y.adjoint();
  b.diagonal().setConstant(Scalar(x));
  const double lhs = std::real(b.partialPivLu().determinant());
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Matrix<Scalar>>(y).singularValues();
  double rhs = std::pow(x, static_cast<double>(n - big_n));
  double scale = std::pow(std::abs(x), static_cast<double>(n - big_n));
  for (Eigen::Index l = 0; l < sv.size(); ++l) {
    rhs *= x * x - sv[l] * sv[l];
    scale *= x * x + sv[l] * sv[l];
  }
  Residual r;
  r.abs = std::abs(lhs - rhs);
  r.rel = scale > 0.0 ? r.abs / scale : r.abs;
  return r;
}

#define GWISH_INSTANTIATE(S)                                                                          \
  template DensityValue power_function<S>(const Matrix<S>&, const std::vector<double>&);              \
  template DensityValue q_factor<S>(const Matrix<S>&, const AlphaSpec&);                              \
  template DensityValue element_pdf<S>(const Matrix<S>&, const AlphaSpec&);                           \
  template DensityValue correlation_pdf<S>(const Matrix<S>&, const AlphaSpec&, ConstantMode);         \
  template DensityValue transformed_pdf<S>(const Matrix<S>&, const AlphaSpec&, const Matrix<S>&,      \
                                           ConstantMode);                                             \
  template Residual bordered_charpoly_identity<S>(const Matrix<S>&, double);

GWISH_INSTANTIATE(double)
GWISH_INSTANTIATE(cplx)
#undef GWISH_INSTANTIATE

}  // namespace gwish
