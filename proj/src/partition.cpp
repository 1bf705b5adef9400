#include "gwish/partition.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "gwish/errors.hpp"

namespace gwish {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] < 0) throw ParameterError("partition parts must be non-negative");
    if (i > 0 && parts_[i] > parts_[i - 1]) throw ParameterError("partition parts must be weakly decreasing");
  }
  while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
}

int Partition::size() const noexcept {
  int s = 0;
  for (int p : parts_) s += p;
  return s;
}

std::vector<int> Partition::padded(int n) const {
  std::vector<int> out(parts_);
  out.resize(static_cast<std::size_t>(std::max(n, length())), 0);
  return out;
}

std::string Partition::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(parts_[i]);
  }
  return s + "]";
}

std::vector<Partition> partitions_of(int d, int max_len) {
  std::vector<Partition> out;
  if (d < 0) throw ParameterError("partitions_of: negative size");
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int remaining, int cap) {
    if (remaining == 0) {
      out.emplace_back(cur);
      return;
    }
    if (static_cast<int>(cur.size()) == max_len) return;
    for (int p = std::min(remaining, cap); p >= 1; --p) {
      cur.push_back(p);
      rec(remaining - p, p);
      cur.pop_back();
    }
  };
  rec(d, d);
  return out;
}

bool dominance_leq(const Partition& mu, const Partition& kappa) {
  if (mu.size() != kappa.size()) throw ParameterError("dominance_leq: partitions of different sizes");
  int sm = 0, sk = 0;
  const int len = std::max(mu.length(), kappa.length());
  for (int i = 0; i < len; ++i) {
    sm += mu[i];
    sk += kappa[i];
    if (sm > sk) return false;
  }
  return true;
}

double monomial_eval(const Partition& mu, const std::vector<double>& x) {
  const int n = static_cast<int>(x.size());
  if (mu.length() > n) return 0.0;
  std::vector<int> e = mu.padded(n);
  std::sort(e.begin(), e.end());
  double total = 0.0;
  do {
    double term = 1.0;
    for (int i = 0; i < n; ++i)
      if (e[i]) term *= std::pow(x[i], e[i]);
    total += term;
  } while (std::next_permutation(e.begin(), e.end()));
  return total;
}

BigInt monomial_at_ones(const Partition& mu, int n) {
  if (mu.length() > n) return 0;
  auto fact = [](int k) {
    BigInt f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
  };
  BigInt denom = fact(n - mu.length());
  const auto& p = mu.parts();
  for (std::size_t i = 0; i < p.size();) {
    std::size_t j = i;
    while (j < p.size() && p[j] == p[i]) ++j;
    denom *= fact(static_cast<int>(j - i));
    i = j;
  }
  return fact(n) / denom;
}

}  // namespace gwish
