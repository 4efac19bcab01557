// Batch command-line front end.
//
//   kfree_cli identities | consts | variance | scan | perron | diagnose-osc | sieve-count [flags]
//
// Output is CSV with a header row or a JSON array.  Every row carries a
// status of PASS, FAIL or INFO.  Exit codes: 0 success, 1 when any row is
// FAIL, 2 on usage errors.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "kfree/constants.hpp"

namespace kfree {

enum class OutputFormat { csv, json };

struct RunConfig {
  std::string command;
  unsigned k = 2;
  std::uint64_t x = 1'000'000;
  std::vector<std::uint64_t> q_list;  // empty selects 1..q_max
  std::uint64_t q_max = 200;
  unsigned precision = kDefaultPrecisionDigits;
  std::uint64_t prime_cutoff = kDefaultPrimeCutoff;
  std::uint64_t D = 100;
  double eps = 0.05;
  double T = 200;       // Perron height; the range L for diagnose-osc
  double Q = 100.5;
  double delta = 0;     // diagnose-osc; 0 selects 1/(2k)
  std::string out;      // empty writes to the output stream
  OutputFormat format = OutputFormat::csv;
  int threads = 0;      // 0 keeps the OpenMP default
  std::uint64_t seed = 1;
  unsigned samples = 100;  // sieve-count spot checks
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// Accepts plain integers and scientific notation ("1e6") for exact integers.
std::uint64_t parse_count(const std::string& text);

/// Comma-separated list of parse_count values.
std::vector<std::uint64_t> parse_count_list(const std::string& text);

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv and runs; usage problems print guidance to err and return 2.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kfree
