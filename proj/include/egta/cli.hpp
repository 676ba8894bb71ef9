#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace egta::cli {

// Exit codes: 0 success, 2 input error, 3 numerical warning (degeneracy).
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitNumericalWarning = 3;

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace egta::cli
