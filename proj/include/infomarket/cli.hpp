#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "infomarket/io.hpp"

namespace infomarket::cli {

// Exit codes. Verdict commands use 0/1/2; everything above 2 is an error.
inline constexpr int kPositive = 0;
inline constexpr int kNegative = 1;
inline constexpr int kUndetermined = 2;
inline constexpr int kInvalidInput = 3;
inline constexpr int kInfeasible = 4;
inline constexpr int kPrecondition = 5;

struct Options {
  std::string command;  // check | simulate | design | witness-search | counterexample | reduce-setcover
  std::string design_kind;  // complete | single | quotient | lower-bound | minimal | greedy
  std::string input;        // scenario file (set-cover file for reduce-setcover)
  std::optional<std::string> true_state;
  std::optional<std::size_t> max_rounds;
  std::vector<std::string> events;
  std::vector<std::string> candidates;
  std::size_t budget = 1000;
  std::optional<std::uint64_t> seed;
  unsigned base = 10;
  bool json = false;
  bool timing = false;
};

struct RunReport {
  int exit_code = kPositive;
  Json body;          // machine-readable report
  std::string human;  // compact summary
};

// Dispatches a parsed command against an already-loaded scenario.
RunReport run(const Options& options, const Scenario& scenario);
// reduce-setcover on an already-loaded instance.
RunReport run(const Options& options, const SetCoverInstance& set_cover);
// Loads `options.input` and dispatches; reduce-setcover reads a set-cover
// document instead of a scenario.
RunReport run(const Options& options);

// Full command line entry point: parses argv, runs, prints the report and
// returns the exit code. Errors are reported on `err`.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace infomarket::cli
