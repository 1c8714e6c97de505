#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rncg::cli {

/// Environment variable naming the default output directory.
inline constexpr const char* kOutDirEnv = "RNCG_OUT_DIR";

/// Parses and runs one command line (without the program name) and returns
/// the process exit code: 0 success, 1 failed checks or I/O, 2 usage or
/// domain errors, 3 numerical non-convergence.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rncg::cli
