#pragma once

#include <map>
#include <vector>

#include "gwish/partition.hpp"

namespace gwish {

/// Homogeneous symmetric polynomial in `nvars` variables, stored as exact
/// rational coefficients over the monomial basis m_mu. Zero coefficients are
/// never stored.
class RationalSymPoly {
 public:
  RationalSymPoly(int degree, int nvars) : degree_(degree), nvars_(nvars) {}

  static RationalSymPoly monomial(const Partition& mu, int nvars);

  int degree() const noexcept { return degree_; }
  int nvars() const noexcept { return nvars_; }
  const std::map<Partition, Rational>& coeffs() const noexcept { return coeffs_; }
  Rational coeff(const Partition& mu) const;

  /// Adds c * m_mu. ParameterError if |mu| != degree or l(mu) > nvars.
  void add(const Partition& mu, const Rational& c);
  RationalSymPoly& operator+=(const RationalSymPoly& other);
  RationalSymPoly& operator-=(const RationalSymPoly& other);
  RationalSymPoly& operator*=(const Rational& s);
  bool is_zero() const noexcept { return coeffs_.empty(); }

  double eval(const std::vector<double>& x) const;
  Rational at_ones() const;

  bool operator==(const RationalSymPoly& o) const {
    return degree_ == o.degree_ && nvars_ == o.nvars_ && coeffs_ == o.coeffs_;
  }

 private:
  int degree_;
  int nvars_;
  std::map<Partition, Rational> coeffs_;
};

RationalSymPoly operator*(RationalSymPoly p, const Rational& s);
RationalSymPoly operator-(RationalSymPoly a, const RationalSymPoly& b);

/// p_1^k = (x_1 + ... + x_N)^k in the monomial basis (multinomial coefficients).
RationalSymPoly power_sum_power(int k, int nvars);

/// Image of p under
///   D* = sum_j x_j^2 d^2/dx_j^2 + sum_{i != j} x_i^2 / (x_i - x_j) d/dx_i,
/// computed without division: for each pair of swapped monomials the second
/// term collapses to finite geometric sums. Exact.
RationalSymPoly operator_apply(const RationalSymPoly& p);

}  // namespace gwish
