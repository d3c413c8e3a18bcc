// omega-trans command line. Kept in a library so tests can drive it with
// string streams.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace omegatrans::cli {

enum ExitCode : int {
  kOk = 0,
  kViolation = 1,     // disagreement, invalid machine, failed precondition
  kInconclusive = 2,  // some evaluation ran out of budget
  kUsage = 3,         // bad flags or unreadable input
};

// args excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace omegatrans::cli
