#pragma once

#include <iosfwd>

namespace gwish {

/// Entry point of the `gwish` command line. Returns the process exit code:
/// 0 success / all checks passed, 1 a check failed, 2 usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gwish
