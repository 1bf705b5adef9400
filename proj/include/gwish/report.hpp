#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

namespace gwish {

using Json = nlohmann::ordered_json;

enum class Status { Pass, Fail, Warn };

const char* to_string(Status s);

/// Outcome of one named verification check. `Fail` iff the statistic exceeds
/// the threshold (or is NaN); `Warn` marks a passing statistic that came with
/// a numerical caveat recorded under details["warnings"].
struct CheckReport {
  std::string name;
  Status status = Status::Fail;
  double statistic = 0.0;
  double threshold = 0.0;
  std::uint64_t reps = 0;
  std::uint64_t seed = 0;
  Json params = Json::object();
  Json details = Json::object();

  bool passed() const noexcept { return status != Status::Fail; }
  /// Sets status from statistic and threshold, then downgrades a pass to
  /// Warn if any warnings were recorded.
  void decide();
  void warn(const std::string& message);

  Json to_json() const;
  /// Single-line JSON for NDJSON streams.
  std::string to_ndjson() const { return to_json().dump(); }
};

}  // namespace gwish
