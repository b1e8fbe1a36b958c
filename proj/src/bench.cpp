#include "contab/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "contab/tptp.hpp"

namespace contab {

namespace fs = std::filesystem;

StrategySet preset_strategy(const std::string& name) {
  StrategySet s;
  if (name == "nocut") return s;
  if (name == "cut") {
    s.cut = s.scut = true;
    return s;
  }
  if (name == "cut-conj") {
    s.cut = s.scut = true;
    s.start_mode = StartMode::Conj;
    return s;
  }
  if (name == "cut-comp" || name == "comp7") {
    s.cut = s.scut = true;
    s.comp_limit = 7;
    return s;
  }
  throw std::invalid_argument("unknown strategy preset '" + name +
                              "' (try: cut-comp, nocut, cut, cut-conj)");
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"cut-comp", "nocut", "cut",
                                                 "cut-conj", "comp7"};
  return names;
}

Matrix load_problem(const std::string& path, ClausifyMode mode,
                    std::optional<StartMode> start,
                    const std::vector<std::string>& include_dirs) {
  std::vector<std::string> roots;
  fs::path parent = fs::path(path).parent_path();
  roots.push_back(parent.empty() ? std::string(".") : parent.string());
  roots.insert(roots.end(), include_dirs.begin(), include_dirs.end());

  std::error_code ec;
  if (!fs::is_regular_file(path, ec))
    throw std::runtime_error("cannot read problem file: " + path);
  std::ifstream in(path, std::ios::binary);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  if (!in) throw std::runtime_error("cannot read problem file: " + path);

  std::vector<AnnotatedFormula> problem =
      parse_problem(text, file_resolver(roots));

  MatrixOptions mopts;
  mopts.mode = mode;
  mopts.start = start;
  return build_matrix(problem, mopts);
}

ProblemResult run_problem(const Matrix& matrix, const StrategySet& strategy,
                          const SearchLimits& limits) {
  ProblemResult r;
  auto t0 = std::chrono::steady_clock::now();
  r.outcome = solve(matrix, strategy, limits);
  if (r.outcome.kind == OutcomeKind::Theorem && r.outcome.trace) {
    r.verdict = check_proof(matrix, *r.outcome.trace);
    r.checked = r.verdict.accepted;
  }
  auto t1 = std::chrono::steady_clock::now();
  r.wall_time = std::chrono::duration<double>(t1 - t0).count();
  return r;
}

std::vector<std::string> list_problem_files(const std::string& dir) {
  std::vector<std::string> files;
  for (const fs::directory_entry& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".p")
      files.push_back(e.path().string());
  std::sort(files.begin(), files.end());
  return files;
}

std::vector<RunRecord> run_suite(const std::vector<std::string>& problems,
                                 const SuiteOptions& options) {
  // Resolve presets up front so a bad name fails the suite, not each row.
  std::vector<StrategySet> strategies;
  strategies.reserve(options.presets.size());
  for (const std::string& name : options.presets) {
    StrategySet s = preset_strategy(name);
    s.clausify_mode = options.clausify;
    if (options.start) s.start_mode = options.start;
    if (options.comp_override && s.comp_limit) s.comp_limit = options.comp_override;
    strategies.push_back(s);
  }

  struct Task {
    std::size_t problem;
    std::size_t preset;
  };
  std::vector<Task> tasks;
  for (std::size_t p = 0; p < problems.size(); ++p)
    for (std::size_t s = 0; s < options.presets.size(); ++s)
      tasks.push_back({p, s});

  std::vector<RunRecord> rows(tasks.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      const Task& t = tasks[i];
      RunRecord& row = rows[i];
      row.problem = problems[t.problem];
      row.strategy = options.presets[t.preset];
      auto t0 = std::chrono::steady_clock::now();
      try {
        const StrategySet& strat = strategies[t.preset];
        Matrix m = load_problem(row.problem, strat.clausify_mode,
                                strat.start_mode, options.include_dirs);
        ProblemResult pr = run_problem(m, strat, options.limits);
        row.outcome = to_string(pr.outcome.kind);
        row.wall_time = pr.wall_time;
        row.final_path_limit = pr.outcome.stats.final_path_limit;
        row.nodes = pr.outcome.stats.nodes;
        row.checked = pr.checked;
      } catch (const std::exception&) {
        row.outcome = "error";
        auto t1 = std::chrono::steady_clock::now();
        row.wall_time = std::chrono::duration<double>(t1 - t0).count();
      }
    }
  };

  int workers = std::max(1, options.workers);
  if (workers == 1 || tasks.size() <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }
  return rows;
}

namespace {

struct Summary {
  std::size_t problems = 0;
  std::vector<std::string> strategies;  // first-appearance order
  std::map<std::string, std::size_t> solved;
  std::map<std::string, std::size_t> unique;
  std::size_t any = 0;
};

Summary summarize(const std::vector<RunRecord>& rows) {
  Summary s;
  std::set<std::string> problems;
  std::map<std::string, std::set<std::string>> solved_by;  // problem -> strategies
  for (const RunRecord& r : rows) {
    problems.insert(r.problem);
    if (std::find(s.strategies.begin(), s.strategies.end(), r.strategy) ==
        s.strategies.end())
      s.strategies.push_back(r.strategy);
    if (r.outcome == "Theorem" && r.checked) solved_by[r.problem].insert(r.strategy);
  }
  s.problems = problems.size();
  for (const std::string& st : s.strategies) s.solved[st] = s.unique[st] = 0;
  for (const auto& [problem, winners] : solved_by) {
    (void)problem;
    if (!winners.empty()) ++s.any;
    for (const std::string& st : winners) ++s.solved[st];
    if (winners.size() == 1) ++s.unique[*winners.begin()];
  }
  return s;
}

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), pattern, v);
  return buf;
}

double percent(std::size_t part, std::size_t whole) {
  return whole == 0 ? 0.0 : 100.0 * static_cast<double>(part) /
                                static_cast<double>(whole);
}

}  // namespace

std::string format_csv(const std::vector<RunRecord>& rows) {
  std::string out = "problem,strategy,outcome,time,final_path_limit,nodes,checked\n";
  for (const RunRecord& r : rows) {
    out += r.problem + ',' + r.strategy + ',' + r.outcome + ',' +
           fmt("%.3f", r.wall_time) + ',' + std::to_string(r.final_path_limit) +
           ',' + std::to_string(r.nodes) + ',' + (r.checked ? "true" : "false") +
           '\n';
  }
  Summary s = summarize(rows);
  out += "# problems: " + std::to_string(s.problems) + '\n';
  for (const std::string& st : s.strategies) {
    out += "# " + st + ": solved " + std::to_string(s.solved[st]) + " (" +
           fmt("%.2f", percent(s.solved[st], s.problems)) + "%), unique " +
           std::to_string(s.unique[st]) + '\n';
  }
  out += "# any: solved " + std::to_string(s.any) + " (" +
         fmt("%.2f", percent(s.any, s.problems)) + "%)\n";
  return out;
}

std::string format_json(const std::vector<RunRecord>& rows) {
  nlohmann::json j;
  j["runs"] = nlohmann::json::array();
  for (const RunRecord& r : rows) {
    j["runs"].push_back({{"problem", r.problem},
                         {"strategy", r.strategy},
                         {"outcome", r.outcome},
                         {"time", r.wall_time},
                         {"final_path_limit", r.final_path_limit},
                         {"nodes", r.nodes},
                         {"checked", r.checked}});
  }
  Summary s = summarize(rows);
  j["summary"]["problems"] = s.problems;
  for (const std::string& st : s.strategies) {
    j["summary"]["strategies"][st] = {
        {"solved", s.solved[st]},
        {"percent", percent(s.solved[st], s.problems)},
        {"unique", s.unique[st]}};
  }
  j["summary"]["any"] = {{"solved", s.any},
                         {"percent", percent(s.any, s.problems)}};
  return j.dump(2) + "\n";
}

}  // namespace contab
