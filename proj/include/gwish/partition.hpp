#pragma once

#include <compare>
#include <initializer_list>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace gwish {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Weakly decreasing non-negative parts with trailing zeros trimmed.
class Partition {
 public:
  Partition() = default;
  /// Sorts nothing: throws ParameterError unless `parts` is weakly decreasing
  /// and non-negative. Trailing zeros are dropped.
  explicit Partition(std::vector<int> parts);
  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

  const std::vector<int>& parts() const noexcept { return parts_; }
  int length() const noexcept { return static_cast<int>(parts_.size()); }
  int size() const noexcept;
  /// Part i (0-based), zero past the end.
  int operator[](int i) const { return i < length() ? parts_[static_cast<std::size_t>(i)] : 0; }
  /// Parts padded with zeros to exactly n entries (n >= length()).
  std::vector<int> padded(int n) const;

  /// Lexicographic order on the parts.
  auto operator<=>(const Partition&) const = default;

  /// "[2,1]"; the empty partition is "[]".
  std::string to_string() const;

 private:
  std::vector<int> parts_;
};

/// Partitions of d with at most max_len parts, descending lexicographic order.
std::vector<Partition> partitions_of(int d, int max_len);

/// mu <= kappa in dominance order. ParameterError on unequal sizes.
bool dominance_leq(const Partition& mu, const Partition& kappa);

/// m_mu(x): sum over distinct permutations of the exponent vector. Zero if mu
/// has more parts than x has entries.
double monomial_eval(const Partition& mu, const std::vector<double>& x);

/// m_mu(1^N) = N! / (prod_j mult_j! (N - l(mu))!).
BigInt monomial_at_ones(const Partition& mu, int n);

}  // namespace gwish
