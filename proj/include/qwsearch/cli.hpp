// cli.hpp
// Entry point of the qwsearch command-line tool.
//
//   qwsearch simulate --n N --gamma <real|repulsive|attractive> [--lambda L]
//                     [--marked M] [--tmax T] [--dt DT] [--sample-every K]
//                     [--observables h0,gp,heff,rescaled] [--space subspace|full]
//                     [--out FILE] [--manifest FILE]
//   qwsearch figure   --id fig2a|fig2b|fig3|fig4 --n N [--out-dir DIR]
//                     [--sample-every K] [--horizon T]
//   qwsearch critical --n N --mode gamma|lambda [--resolution R] [--target P]
//                     [--horizon T] [--manifest FILE]
//
// Exit codes: 0 success, 1 I/O failure, 2 usage error, 3 numeric failure.

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace qwsearch::cli {

inline constexpr std::string_view kToolVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kIoError = 1, kUsage = 2, kNumeric = 3 };

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qwsearch::cli
