#pragma once

#include "equistab/errors.hpp"

#include <iosfwd>

namespace equistab::cli {

enum ExitCode : int { Ok = 0, Internal = 1, ParseFailure = 2, ValidationFailure = 3, NumericFailure = 4, BracketFailure = 5 };

int exit_code_for(ErrorCategory category);

/// Entry point shared by the executable and the tests. Never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace equistab::cli
