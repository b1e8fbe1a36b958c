// contab: connection-tableau prover for first-order TPTP problems.
//
// Single-problem mode prints one `% SZS status <S>` line and exits 0 when a
// proof was found (and verified in-process), 1 otherwise, 2 on input errors.
// Pointing it at a directory runs the benchmark suite over every *.p file
// and emits a CSV report instead.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "contab/bench.hpp"
#include "contab/tptp.hpp"

namespace {

namespace fs = std::filesystem;
using namespace contab;

struct Options {
  std::string input;
  std::vector<std::string> strategies;
  bool cut = false;
  bool nocut = false;
  bool scut = false;
  std::optional<int> comp;
  bool conj = false;
  bool pos = false;
  bool nodef = false;
  double timeout = 10.0;
  std::optional<int> max_depth;
  std::string proof_file;
  std::string check_file;
  std::vector<std::string> include_dirs;
  bool stats = false;
  std::string csv_file;
  int workers = 1;
  bool json = false;
  bool dump_matrix = false;
};

// Layer explicit flags over the chosen preset.  --nocut means the fully
// complete search, so it also clears scut and the comp restart.
StrategySet resolve_strategy(const Options& o) {
  StrategySet s = preset_strategy(o.strategies.empty() ? "cut-comp"
                                                       : o.strategies.front());
  if (o.nocut) s = StrategySet{};
  if (o.cut) s.cut = true;
  if (o.scut) s.scut = true;
  if (o.comp) s.comp_limit = *o.comp;
  if (o.conj) s.start_mode = StartMode::Conj;
  if (o.pos) s.start_mode = StartMode::Pos;
  s.clausify_mode = o.nodef ? ClausifyMode::NoDef : ClausifyMode::Def;
  return s;
}

SearchLimits resolve_limits(const Options& o) {
  SearchLimits l;
  if (o.timeout > 0) l.timeout_seconds = o.timeout;
  if (o.max_depth) l.max_path_limit = o.max_depth;
  return l;
}

int check_mode(const Options& o) {
  StrategySet strat = resolve_strategy(o);
  Matrix m = load_problem(o.input, strat.clausify_mode, strat.start_mode,
                          o.include_dirs);
  std::ifstream in(o.check_file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read trace file: " + o.check_file);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  ProofTrace trace = parse_trace(m.symbols, text);
  if (trace.matrix_fingerprint != m.fingerprint()) {
    std::cout << "proof rejected: matrix fingerprint mismatch (trace was "
                 "produced from a different clausification)\n";
    return 1;
  }
  CheckVerdict v = check_proof(m, trace);
  if (v.accepted) {
    std::cout << "proof accepted\n";
    return 0;
  }
  std::cout << "proof rejected at step " << v.step << ": " << to_string(v.reason);
  if (!v.detail.empty()) std::cout << " (" << v.detail << ")";
  std::cout << "\n";
  return 1;
}

int single_mode(const Options& o) {
  StrategySet strat = resolve_strategy(o);
  Matrix m = load_problem(o.input, strat.clausify_mode, strat.start_mode,
                          o.include_dirs);
  if (o.dump_matrix) {
    std::cout << m.dump();
    return 0;
  }
  ProblemResult r = run_problem(m, strat, resolve_limits(o));
  if (r.outcome.kind == OutcomeKind::Theorem && !r.checked) {
    std::cerr << "internal error: proof failed verification at step "
              << r.verdict.step << ": " << to_string(r.verdict.reason) << "\n";
    return 2;
  }
  std::cout << "% SZS status " << to_string(r.outcome.kind) << "\n";
  if (r.outcome.kind == OutcomeKind::Theorem && !o.proof_file.empty()) {
    std::string text = serialize_trace(m.symbols, *r.outcome.trace);
    if (o.proof_file != "-") {
      std::ofstream out(o.proof_file, std::ios::binary);
      out << text;
      if (!out)
        throw std::runtime_error("cannot write proof file: " + o.proof_file);
    }
    std::cout << "% SZS output start Proof\n" << text << "% SZS output end Proof\n";
  }
  if (o.stats) {
    const SearchStats& st = r.outcome.stats;
    std::printf(
        "%% nodes=%lld extensions=%lld reductions=%lld lemma_hits=%lld "
        "max_depth=%d final_path_limit=%d time=%.3f\n",
        st.nodes, st.extensions, st.reductions, st.lemma_hits, st.max_depth,
        st.final_path_limit, r.wall_time);
  }
  return r.outcome.kind == OutcomeKind::Theorem ? 0 : 1;
}

int suite_mode(const Options& o) {
  SuiteOptions so;
  so.presets = o.strategies.empty()
                   ? std::vector<std::string>{"cut-comp", "nocut", "cut", "cut-conj"}
                   : o.strategies;
  so.limits = resolve_limits(o);
  so.workers = o.workers;
  so.clausify = o.nodef ? ClausifyMode::NoDef : ClausifyMode::Def;
  if (o.conj) so.start = StartMode::Conj;
  if (o.pos) so.start = StartMode::Pos;
  so.comp_override = o.comp;
  so.include_dirs = o.include_dirs;

  std::vector<std::string> problems = list_problem_files(o.input);
  std::vector<RunRecord> rows = run_suite(problems, so);
  std::string csv = format_csv(rows);
  if (!o.csv_file.empty()) {
    std::ofstream out(o.csv_file, std::ios::binary);
    out << csv;
    if (!out) throw std::runtime_error("cannot write CSV file: " + o.csv_file);
  }
  if (o.json)
    std::cout << format_json(rows);
  else if (o.csv_file.empty())
    std::cout << csv;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{
      "contab: lean connection-tableau prover with verified proof traces"};
  app.add_option("input", o.input,
                 "TPTP problem file, or a directory of *.p files (suite mode)")
      ->required();
  app.add_option("--strategy", o.strategies,
                 "strategy preset: cut-comp (default), nocut, cut, cut-conj, "
                 "comp7; repeatable in suite mode");
  app.add_flag("--cut", o.cut, "enable restricted backtracking");
  app.add_flag("--nocut", o.nocut,
               "fully complete search (clears cut, scut and comp)");
  app.add_flag("--scut", o.scut, "commit to the first matching start clause");
  app.add_option("--comp", o.comp,
                 "restart complete when the deepening reaches this path limit");
  auto* conj = app.add_flag("--conj", o.conj, "start from conjecture clauses");
  auto* posf = app.add_flag("--pos", o.pos, "start from all-positive clauses");
  posf->excludes(conj);
  auto* deff = app.add_flag("--def", "definitional clausal normal form (default)");
  auto* nodeff =
      app.add_flag("--nodef", o.nodef, "plain distributive clausal normal form");
  nodeff->excludes(deff);
  app.add_option("--timeout", o.timeout,
                 "per-problem wall-clock limit in seconds, 0 disables")
      ->default_val(10.0);
  app.add_option("--max-depth", o.max_depth,
                 "stop deepening beyond this path limit");
  app.add_option("--proof", o.proof_file,
                 "write the verified proof trace here ('-' prints only)");
  app.add_option("--check", o.check_file,
                 "check this proof trace against the problem, do not search");
  app.add_option("--include-dir", o.include_dirs,
                 "extra root for resolving include() directives");
  app.add_flag("--stats", o.stats, "print search statistics");
  app.add_option("--csv", o.csv_file, "suite mode: write the CSV report here");
  app.add_option("--workers", o.workers, "suite mode: concurrent runs")
      ->default_val(1);
  app.add_flag("--json", o.json, "suite mode: print the report as JSON");
  app.add_flag("--dump-matrix", o.dump_matrix,
               "print the clausified matrix and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (!o.check_file.empty()) return check_mode(o);
    if (fs::is_directory(o.input)) return suite_mode(o);
    return single_mode(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
