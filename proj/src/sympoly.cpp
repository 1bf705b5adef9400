#include "gwish/sympoly.hpp"

#include <algorithm>
#include <cmath>

#include "gwish/errors.hpp"

namespace gwish {

RationalSymPoly RationalSymPoly::monomial(const Partition& mu, int nvars) {
  RationalSymPoly p(mu.size(), nvars);
  p.add(mu, 1);
  return p;
}

Rational RationalSymPoly::coeff(const Partition& mu) const {
  auto it = coeffs_.find(mu);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

void RationalSymPoly::add(const Partition& mu, const Rational& c) {
  if (mu.size() != degree_) throw ParameterError("RationalSymPoly: term of wrong degree " + mu.to_string());
  if (mu.length() > nvars_) throw ParameterError("RationalSymPoly: too many parts for nvars " + mu.to_string());
  if (c == 0) return;
  auto [it, inserted] = coeffs_.try_emplace(mu, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) coeffs_.erase(it);
  }
}

RationalSymPoly& RationalSymPoly::operator+=(const RationalSymPoly& other) {
  if (other.degree_ != degree_ || other.nvars_ != nvars_) throw ParameterError("RationalSymPoly: shape mismatch");
  for (const auto& [mu, c] : other.coeffs_) add(mu, c);
  return *this;
}

RationalSymPoly& RationalSymPoly::operator-=(const RationalSymPoly& other) {
  if (other.degree_ != degree_ || other.nvars_ != nvars_) throw ParameterError("RationalSymPoly: shape mismatch");
  for (const auto& [mu, c] : other.coeffs_) add(mu, -c);
  return *this;
}

RationalSymPoly& RationalSymPoly::operator*=(const Rational& s) {
  if (s == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [mu, c] : coeffs_) c *= s;
  return *this;
}

RationalSymPoly operator*(RationalSymPoly p, const Rational& s) { return p *= s; }
RationalSymPoly operator-(RationalSymPoly a, const RationalSymPoly& b) { return a -= b; }

double RationalSymPoly::eval(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != nvars_) throw ParameterError("RationalSymPoly::eval: wrong number of variables");
  double total = 0.0;
  for (const auto& [mu, c] : coeffs_) total += static_cast<double>(c) * monomial_eval(mu, x);
  return total;
}

Rational RationalSymPoly::at_ones() const {
  Rational total = 0;
  for (const auto& [mu, c] : coeffs_) total += c * Rational(monomial_at_ones(mu, nvars_));
  return total;
}

RationalSymPoly power_sum_power(int k, int nvars) {
  RationalSymPoly p(k, nvars);
  BigInt kfact = 1;
  for (int i = 2; i <= k; ++i) kfact *= i;
  for (const auto& mu : partitions_of(k, nvars)) {
    BigInt denom = 1;
    for (int part : mu.parts())
      for (int i = 2; i <= part; ++i) denom *= i;
    p.add(mu, Rational(kfact, denom));
  }
  return p;
}

namespace {

using Exponents = std::vector<int>;

// Only exponent vectors that are weakly decreasing are kept: they carry the
// coefficient of the corresponding m_mu in a symmetric result.
struct DominantCollector {
  std::map<Exponents, Rational> terms;
  void add(const Exponents& e, const Rational& c) {
    if (!std::is_sorted(e.begin(), e.end(), std::greater<int>())) return;
    terms[e] += c;
  }
};

}  // namespace

RationalSymPoly operator_apply(const RationalSymPoly& p) {
  const int n = p.nvars();
  RationalSymPoly out(p.degree(), n);
  DominantCollector acc;
  for (const auto& [lambda, coeff] : p.coeffs()) {
    Exponents a = lambda.padded(n);
    std::sort(a.begin(), a.end());
    do {
      // sum_j a_j (a_j - 1) x^a
      Rational diag = 0;
      for (int j = 0; j < n; ++j) diag += a[j] * (a[j] - 1);
      if (diag != 0) acc.add(a, coeff * diag);
      // Pair terms. For a_i > a_j the monomial is combined with its (i j)
      // swap, which carries the same coefficient:
      //   x_i^q x_j^q [p sum_{t=0}^{r} x_i^t x_j^{r-t}
      //               - q x_i x_j sum_{t=0}^{r-2} x_i^t x_j^{r-2-t}],  r = p - q.
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          const int pi = a[i], qj = a[j];
          if (pi == qj) {
            if (pi != 0) acc.add(a, coeff * pi);
            continue;
          }
          const int hi = std::max(pi, qj), lo = std::min(pi, qj);
          // Each unordered swap pair is visited once: from the member with the
          // larger exponent in slot i.
          if (pi < qj) continue;
          const int r = hi - lo;
          Exponents e = a;
          for (int t = 0; t <= r; ++t) {
            e[i] = lo + t;
            e[j] = lo + r - t;
            acc.add(e, coeff * hi);
          }
          if (lo > 0) {
            for (int t = 0; t <= r - 2; ++t) {
              e[i] = lo + 1 + t;
              e[j] = lo + 1 + r - 2 - t;
              acc.add(e, -coeff * lo);
            }
          }
        }
      }
    } while (std::next_permutation(a.begin(), a.end()));
  }
  for (const auto& [e, c] : acc.terms) {
    if (c != 0) out.add(Partition(e), c);
  }
  return out;
}

}  // namespace gwish
