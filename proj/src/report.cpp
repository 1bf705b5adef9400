#include "gwish/report.hpp"

#include <cmath>

namespace gwish {

const char* to_string(Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
    case Status::Warn:
      return "warn";
  }
  return "fail";
}

void CheckReport::decide() {
  const bool ok = !std::isnan(statistic) && statistic <= threshold;
  if (!ok) {
    status = Status::Fail;
  } else {
    status = details.contains("warnings") ? Status::Warn : Status::Pass;
  }
}

void CheckReport::warn(const std::string& message) {
  if (!details.contains("warnings")) details["warnings"] = Json::array();
  details["warnings"].push_back(message);
}

Json CheckReport::to_json() const {
  Json j;
  j["name"] = name;
  j["status"] = to_string(status);
  j["statistic"] = statistic;
  j["threshold"] = threshold;
  j["reps"] = reps;
  j["seed"] = seed;
  j["params"] = params;
  j["details"] = details;
  return j;
}

}  // namespace gwish
