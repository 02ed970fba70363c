#pragma once

// Command-line front end. Every subcommand reads one JSON document (see document.hpp)
// and prints a report, either for people or as canonical JSON.
//
// Exit codes: 0 when every check passes or the computation succeeded, 1 when a check
// fails or the input violates a mathematical precondition, 2 on usage and parse errors.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace hlie::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;

/// Version of the machine report layout; bumped together with the input schema.
inline constexpr const char* kReportSchemaVersion = "1";

/// args excludes the program name, e.g. {"cohomology", "d2.json", "--degree", "0"}.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// FNV-1a, 64 bit.
std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);

} // namespace hlie::cli
