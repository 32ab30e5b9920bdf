#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace stk {

enum ExitCode : int { kOk = 0, kFalse = 1, kInputError = 2, kResourceLimit = 3 };

// Runs one invocation; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stk
