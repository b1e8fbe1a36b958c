// Connection-tableau search over a clausal matrix.
//
// The search mirrors the classic lean Prolog loop: per open subgoal literal
// it tries, in order, a regularity check, the lemma rule, reductions against
// the path, and extensions into the matrix, under iterative deepening on the
// remaining path limit.  Restricted backtracking (cut/scut) prunes
// alternatives after the first success; comp(n) restarts the search complete
// when the deepening reaches n, restoring completeness.
//
// A successful search yields a ProofTrace (see trace.hpp) whose steps were
// recorded as the rules fired and rolled back on backtracking, so the
// surviving sequence is the left-to-right flattening of the closed tableau.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "contab/clausify.hpp"
#include "contab/trace.hpp"

namespace contab {

struct StrategySet {
  bool cut = false;   // prune alternatives after each successful closure
  bool scut = false;  // try only the first start clause for the root goal
  // Restart complete (cut and scut off) when the deepening reaches this
  // limit.  Requires cut or scut to be set, otherwise the restart would be
  // a no-op; solve() rejects such a combination.
  std::optional<int> comp_limit;
  // Forwarded to the clausifier by the driver; the search itself only looks
  // at the flags above.
  std::optional<StartMode> start_mode;
  ClausifyMode clausify_mode = ClausifyMode::Def;
};

struct SearchLimits {
  std::optional<int> max_path_limit;      // give up deepening beyond this
  std::optional<double> timeout_seconds;  // wall clock; unset means none
};

struct SearchStats {
  long long nodes = 0;       // subgoal literals visited
  long long extensions = 0;  // successful extension steps
  long long reductions = 0;  // successful reduction unifications
  long long lemma_hits = 0;  // subgoals closed by the lemma rule
  int max_depth = 0;         // longest path reached
  int final_path_limit = 0;  // limit of the last iteration run
};

enum class OutcomeKind {
  Theorem,           // proof found; trace attached
  CounterSatisfiable,  // complete search exhausted without hitting the limit
  GaveUp,            // incomplete search exhausted without hitting the limit
  Timeout,
  DepthLimitReached,
};

const char* to_string(OutcomeKind k);

struct SearchOutcome {
  OutcomeKind kind = OutcomeKind::GaveUp;
  std::optional<ProofTrace> trace;  // present iff kind == Theorem
  SearchStats stats;
};

// One record per fired rule (not per attempt), in firing order, surviving
// backtracking.  The literal is a snapshot of the goal canonicalized under
// the bindings at firing time (applied fully, variables renumbered from 0 in
// first-occurrence order), which makes logs comparable across runs whose
// renaming offsets diverged.
struct NodeLogEntry {
  StepKind kind = StepKind::Extension;
  std::string literal;
  int clause_id = -1;      // extensions only
  int literal_index = -1;  // extensions only

  bool operator==(const NodeLogEntry& o) const {
    return kind == o.kind && literal == o.literal && clause_id == o.clause_id &&
           literal_index == o.literal_index;
  }
  bool operator<(const NodeLogEntry& o) const {
    if (kind != o.kind) return kind < o.kind;
    if (literal != o.literal) return literal < o.literal;
    if (clause_id != o.clause_id) return clause_id < o.clause_id;
    return literal_index < o.literal_index;
  }
};

using NodeLog = std::vector<NodeLogEntry>;

struct ProveResult {
  bool proved = false;
  bool depth_exceeded = false;  // some candidate was skipped for depth
  std::optional<ProofTrace> trace;
};

// One complete backtracking search at a fixed path limit (>= 1).  Untimed.
// Stats accumulate into *stats when given; *log records fired rules.
ProveResult prove_at_limit(const Matrix& matrix, const StrategySet& strategy,
                           int path_limit, SearchStats* stats = nullptr,
                           NodeLog* log = nullptr);

// Iterative deepening from path limit 1, with the comp restart and the
// outcome mapping: proof -> Theorem; exhaustion without a depth skip ->
// CounterSatisfiable (complete strategy) or GaveUp (cut/scut still on);
// limit/time budget -> DepthLimitReached/Timeout.  Throws
// std::invalid_argument on a StrategySet whose comp_limit lacks cut/scut.
SearchOutcome solve(const Matrix& matrix, const StrategySet& strategy,
                    const SearchLimits& limits = {});

}  // namespace contab
