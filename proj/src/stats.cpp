#include "gwish/stats.hpp"

#include <cmath>
#include <limits>

#include "gwish/errors.hpp"

namespace gwish {

namespace {

struct Welford {
  std::size_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;
  void push(double x) {
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }
  MCEstimate finish() const {
    if (n < 2) throw ParameterError("estimate: need at least two replications");
    const double var = m2 / static_cast<double>(n - 1);
    return {mean, std::sqrt(var / static_cast<double>(n)), n};
  }
};

double ratio_or_zero(double diff, double se) {
  if (se > 0.0) return diff / se;
  return diff == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), diff);
}

}  // namespace

MCEstimate estimate(std::span<const double> values) {
  Welford w;
  for (double v : values) w.push(v);
  return w.finish();
}

std::vector<MCEstimate> estimate_columns(std::span<const double> table, std::size_t k) {
  std::vector<Welford> acc(k);
  const std::size_t rows = k == 0 ? 0 : table.size() / k;
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t j = 0; j < k; ++j) acc[j].push(table[r * k + j]);
  std::vector<MCEstimate> out;
  out.reserve(k);
  for (const auto& w : acc) out.push_back(w.finish());
  return out;
}

double z_score(const MCEstimate& a, const MCEstimate& b) {
  return ratio_or_zero(a.mean - b.mean, std::hypot(a.std_err, b.std_err));
}

double z_score(const MCEstimate& est, double target) {
  return ratio_or_zero(est.mean - target, est.std_err);
}

}  // namespace gwish
