#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace divapport::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitMismatch = 3;

/// Runs the command line front end; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace divapport::cli
