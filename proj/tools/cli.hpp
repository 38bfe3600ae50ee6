#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace scsamp::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,
  kNumeric = 3,
};

// "start:stop:step" with start <= stop and step > 0. Points are start + i*step
// up to and including stop (to 1e-9 of a step).
struct Range {
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  std::vector<double> values() const;
};

// Throws std::invalid_argument on malformed input.
Range parse_range(std::string_view text);

// Entry point shared by the binary and the tests.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace scsamp::cli
