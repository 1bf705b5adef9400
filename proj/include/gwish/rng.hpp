#pragma once

#include <cstdint>
#include <random>

namespace gwish {

/// Deterministic random stream identified by (master seed, stream index).
///
/// Two streams built from the same pair produce the same sequence; distinct
/// pairs are decorrelated by a SplitMix64 hash before seeding the engine.
/// Sampling code derives one stream per sample index via `substream`, which
/// is what makes parallel Monte Carlo independent of the worker count.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

  std::uint64_t master_seed() const noexcept { return seed_; }
  std::uint64_t stream_index() const noexcept { return index_; }

  /// Child stream `k` of this stream; independent of the parent and siblings.
  RngStream substream(std::uint64_t k) const;

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  double normal() { return normal_(engine_); }
  /// Uniform on the open interval (0, 1).
  double uniform_open();

 private:
  std::uint64_t seed_;
  std::uint64_t index_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace gwish
