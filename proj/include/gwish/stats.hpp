#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace gwish {

/// Monte Carlo mean with standard error sd / sqrt(reps).
struct MCEstimate {
  double mean = 0.0;
  double std_err = 0.0;
  std::size_t reps = 0;
};

/// Welford accumulation in index order, so results never depend on threading.
MCEstimate estimate(std::span<const double> values);

/// Column-wise estimates of a reps x k table stored row-major.
std::vector<MCEstimate> estimate_columns(std::span<const double> table, std::size_t k);

/// (a - b) / sqrt(se_a^2 + se_b^2); 0 when both errors vanish and means agree.
double z_score(const MCEstimate& a, const MCEstimate& b);

/// (est - target) / se, with the same zero convention.
double z_score(const MCEstimate& est, double target);

}  // namespace gwish
