#include "gwish/special.hpp"

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "gwish/errors.hpp"

namespace gwish {

double legendre_P(int rho, double u) {
  if (rho < 0) throw ParameterError("legendre_P: degree must be non-negative");
  const double z = 0.5 * (1.0 - u);
  double term = 1.0;
  double sum = 1.0;
  for (int j = 0; j < rho; ++j) {
    term *= (rho + 1.0 + j) * (-rho + j) / ((j + 1.0) * (j + 1.0)) * z;
    sum += term;
  }
  return sum;
}

double zonal_ratio_n2(int kappa1, int kappa2, double x1, double x2) {
  if (kappa2 < 0 || kappa1 < kappa2) throw ParameterError("zonal_ratio_n2: need kappa1 >= kappa2 >= 0");
  if (!(x1 > 0.0) || !(x2 > 0.0)) throw DomainError("zonal_ratio_n2: arguments must be positive");
  const double g = std::sqrt(x1 * x2);
  return std::pow(g, kappa1 + kappa2) * legendre_P(kappa1 - kappa2, 0.5 * (x1 + x2) / g);
}

namespace {

// Complete homogeneous symmetric polynomials h_0..h_d.
std::vector<double> complete_homogeneous(const std::vector<double>& x, int d) {
  std::vector<double> h(static_cast<std::size_t>(d + 1), 0.0);
  h[0] = 1.0;
  for (double v : x)
    for (int k = 1; k <= d; ++k) h[k] += v * h[k - 1];
  return h;
}

}  // namespace

double schur_eval(const Partition& kappa, const std::vector<double>& x) {
  const int len = kappa.length();
  if (len == 0) return 1.0;
  if (len > static_cast<int>(x.size())) return 0.0;
  const int d = kappa[0] + len;
  const auto h = complete_homogeneous(x, d);
  Eigen::MatrixXd m(len, len);
  for (int i = 0; i < len; ++i)
    for (int j = 0; j < len; ++j) {
      const int k = kappa[i] - i + j;
      m(i, j) = k < 0 ? 0.0 : h[k];
    }
  return m.determinant();
}

Rational schur_at_ones(const Partition& kappa, int nvars) {
  if (kappa.length() > nvars) return 0;
  Rational r = 1;
  for (int i = 0; i < nvars; ++i)
    for (int j = i + 1; j < nvars; ++j) r *= Rational(kappa[i] - kappa[j] + j - i, j - i);
  return r;
}

GammaSpec::GammaSpec(std::vector<int> gamma) : gamma_(std::move(gamma)) {
  if (gamma_.empty()) throw ParameterError("gamma must have at least one part");
  for (std::size_t i = 0; i < gamma_.size(); ++i) {
    if (gamma_[i] < 0) throw ParameterError("gamma parts must be non-negative");
    if (i > 0 && gamma_[i] > gamma_[i - 1]) throw ParameterError("gamma must be weakly decreasing");
  }
  const int p = gamma_[0] % 2;
  for (int g : gamma_) {
    if (g % 2 != p) throw ParameterError("gamma parts must all be odd or all be even");
  }
  parity_ = p == 1 ? Parity::AllOdd : Parity::AllEven;
}

std::vector<int> GammaSpec::alpha_ints() const {
  const int n = size();
  std::vector<int> a(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) a[k - 1] = gamma_[n - k] + k - 1;
  return a;
}

AlphaSpec GammaSpec::alpha() const {
  const auto a = alpha_ints();
  return AlphaSpec::general(std::vector<double>(a.begin(), a.end()));
}

Partition GammaSpec::kappa() const {
  std::vector<int> k(gamma_.size());
  for (std::size_t i = 0; i < gamma_.size(); ++i) k[i] = (gamma_[i] - 1 + s()) / 2;
  return Partition(std::move(k));
}

}  // namespace gwish
