#pragma once

#include <iosfwd>

namespace mhd::cli {

enum ExitCode : int { kSuccess = 0, kCheckFailure = 1, kConfigError = 2, kRuntimeFailure = 3 };

/// Entry point shared by the executable and the tests.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mhd::cli
