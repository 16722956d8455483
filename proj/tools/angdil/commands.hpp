#pragma once

// Subcommand pipelines behind the angdil executable.
//
// Exit codes: 0 success, 1 a check / regularity / self-test failure,
// 2 usage or configuration error, 3 runtime error (hypothesis violation,
// numerical failure, I/O).

#include <iosfwd>

#include "angdil/config.hpp"

namespace angdil::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitRuntime = 3;

/// profile.csv / profile.json: p, r, L, S_green, S_jacobian, S_prime,
/// delta_p, delta_p_error, theorem1_rhs. Plot: area_bound.svg.
int run_profile(const RunConfig& cfg, std::ostream& out);

/// checks.csv / checks.json, one row per (inequality, p, radius or pair),
/// preceded by a regularity row when J_f <= 0 is found. Plot: margins.svg.
int run_check(const RunConfig& cfg, std::ostream& out);

/// schwarz.csv / schwarz.json and schwarz_proxy.csv. Plot: schwarz.svg.
int run_schwarz(const RunConfig& cfg, std::ostream& out);

/// Parses a sampled map and writes regularity.csv / regularity.json.
int run_ingest_verify(const RunConfig& cfg, std::ostream& out);

/// Closed-form oracle suite; prints one line per case.
int run_selftest(std::ostream& out);

/// Full command line: argv[1] is the subcommand.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace angdil::cli
