#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ude::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitEvaluator = 3;

// Benchmark harness entry point. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ude::cli
