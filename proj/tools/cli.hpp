#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace entropica::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFails = 1;
inline constexpr int kUnknown = 2;
inline constexpr int kUsage = 64;

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct VerifyCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// The checklist behind `paper-verify`.
std::vector<VerifyCheck> verify_checks();

}  // namespace entropica::cli
