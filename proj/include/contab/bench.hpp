// Benchmark harness: named strategy presets, single-problem runs with
// in-process proof verification, and a multi-threaded suite runner with
// CSV/JSON reporting.
//
// The harness never prints; it returns records and formatted reports so the
// command-line front end (and the tests) control all output.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "contab/clausify.hpp"
#include "contab/engine.hpp"
#include "contab/trace.hpp"

namespace contab {

// Named strategy presets.  `comp7` is an alias for `cut-comp`.
//   cut-comp : cut + scut, complete restart at path limit 7 (default)
//   nocut    : complete search, no restrictions
//   cut      : cut + scut, no restart (incomplete)
//   cut-conj : cut + scut, start from conjecture clauses
// Throws std::invalid_argument for unknown names.
StrategySet preset_strategy(const std::string& name);
const std::vector<std::string>& preset_names();

// Parse a TPTP problem file and clausify it.  `start` overrides the
// automatic start-clause selection when set.  Include directives resolve
// against the problem's own directory, then `include_dirs`, then $TPTP.
// Throws ParseError / std::runtime_error on bad input.
Matrix load_problem(const std::string& path, ClausifyMode mode,
                    std::optional<StartMode> start,
                    const std::vector<std::string>& include_dirs);

// Outcome of one prover run, including verification of any proof found.
struct ProblemResult {
  SearchOutcome outcome;
  double wall_time = 0.0;  // seconds, search + check
  bool checked = false;    // outcome was Theorem and the trace verified
  CheckVerdict verdict;    // populated when a trace was checked
};

// Run the search and, on success, check the resulting trace against the
// matrix.  A Theorem with checked == false indicates an internal defect.
ProblemResult run_problem(const Matrix& matrix, const StrategySet& strategy,
                          const SearchLimits& limits);

// One row of a suite report.  `outcome` is the SearchOutcome tag, or
// "error" when the run threw (unreadable file, bad syntax, ...).
struct RunRecord {
  std::string problem;
  std::string strategy;
  std::string outcome;
  double wall_time = 0.0;
  int final_path_limit = 0;
  long long nodes = 0;
  bool checked = false;
};

struct SuiteOptions {
  std::vector<std::string> presets;  // preset names, run in order
  SearchLimits limits;
  int workers = 1;
  ClausifyMode clausify = ClausifyMode::Def;
  std::optional<StartMode> start;        // overrides preset start choice
  std::optional<int> comp_override;      // overrides preset comp limit
  std::vector<std::string> include_dirs;
};

// All *.p files directly under `dir`, sorted by name.
std::vector<std::string> list_problem_files(const std::string& dir);

// Run every (problem, preset) pair with at most `workers` concurrent runs.
// Row order is deterministic (problems sorted, presets in given order)
// regardless of scheduling; a failed run becomes an "error" row.
std::vector<RunRecord> run_suite(const std::vector<std::string>& problems,
                                 const SuiteOptions& options);

// CSV report: header, one row per record, then a summary block of `# `
// comment lines with per-strategy solved/unique counts and the union of
// problems solved by at least one strategy.
std::string format_csv(const std::vector<RunRecord>& rows);

// Same content as JSON for machine ingestion.
std::string format_json(const std::vector<RunRecord>& rows);

}  // namespace contab
