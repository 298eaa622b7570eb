#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lctrs::cli {

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kUnknown = 2;
constexpr int kUsage = 64;

/// Runs the command line `args` (without the program name).
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lctrs::cli
