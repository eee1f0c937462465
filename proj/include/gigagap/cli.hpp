#pragma once

#include <ostream>

namespace gigagap::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitEnvironment = 2;

/// Entry point of the gigagap tool; subcommands validate, run, compare and
/// breakdown. Returns the process exit code.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace gigagap::cli
