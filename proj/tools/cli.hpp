#pragma once

// Command-line front end, callable in-process so tests can drive it with
// string streams.

#include <iosfwd>

namespace hankel::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;         // domain, validation and usage errors
inline constexpr int kExitNonConvergence = 2;  // a solver gave up

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace hankel::cli
