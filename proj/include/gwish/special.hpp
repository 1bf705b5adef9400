#pragma once

#include <vector>

#include "gwish/ensembles.hpp"
#include "gwish/partition.hpp"

namespace gwish {

/// Legendre polynomial P_rho(u) from the terminating sum
/// 2F1(rho+1, -rho; 1; (1-u)/2). ParameterError for rho < 0.
double legendre_P(int rho, double u);

/// Two-variable zonal ratio Y_kappa(x1,x2)/Y_kappa(1,1) in closed form:
/// (x1 x2)^{(k1+k2)/2} P_{k1-k2}((x1+x2) / (2 sqrt(x1 x2))). Needs x1, x2 > 0.
double zonal_ratio_n2(int kappa1, int kappa2, double x1, double x2);

/// Schur polynomial s_kappa(x) via the Jacobi–Trudi determinant.
double schur_eval(const Partition& kappa, const std::vector<double>& x);

/// s_kappa(1^N) = prod_{i<j} (kappa_i - kappa_j + j - i) / (j - i).
Rational schur_at_ones(const Partition& kappa, int nvars);

/// A partition gamma of length N (zeros allowed) whose parts share a parity.
/// It indexes the integer alphas alpha_k = gamma_{N+1-k} + k - 1 for which the
/// real eigenvalue density and real spherical integral reduce to zonal
/// polynomials of the half partition kappa = (gamma - 1 + s) / 2.
class GammaSpec {
 public:
  enum class Parity { AllOdd, AllEven };

  /// Throws ParameterError unless gamma is non-empty, weakly decreasing,
  /// non-negative and of a single parity (zero counts as even).
  explicit GammaSpec(std::vector<int> gamma);

  int size() const noexcept { return static_cast<int>(gamma_.size()); }
  const std::vector<int>& gamma() const noexcept { return gamma_; }
  Parity parity() const noexcept { return parity_; }
  /// 0 for odd parts, 1 for even parts.
  int s() const noexcept { return parity_ == Parity::AllOdd ? 0 : 1; }
  /// Strictly increasing non-negative integers.
  std::vector<int> alpha_ints() const;
  AlphaSpec alpha() const;
  Partition kappa() const;

 private:
  std::vector<int> gamma_;
  Parity parity_;
};

}  // namespace gwish
