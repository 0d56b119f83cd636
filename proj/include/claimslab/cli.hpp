// Command runner behind the claimslab executable. Exit codes: 0 success,
// 1 a violation or witness was found, 2 input error.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace claimslab::cli {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr std::uint64_t kDefaultSeed = 42;

enum ExitCode : int { kSuccess = 0, kFinding = 1, kInputError = 2 };

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// CLAIMSLAB_SEED when set and numeric, kDefaultSeed otherwise.
std::uint64_t default_seed();

}  // namespace claimslab::cli
