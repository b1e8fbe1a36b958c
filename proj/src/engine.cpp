#include "contab/engine.hpp"

#include <chrono>
#include <span>
#include <stdexcept>
#include <unordered_map>

namespace contab {

const char* to_string(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::Theorem: return "Theorem";
    case OutcomeKind::CounterSatisfiable: return "CounterSatisfiable";
    case OutcomeKind::GaveUp: return "GaveUp";
    case OutcomeKind::Timeout: return "Timeout";
    case OutcomeKind::DepthLimitReached: return "ResourceOut";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

// Non-local exits of the recursive search.  Solved escapes the whole search
// once the stack empties; Cut unwinds a failed committed subproof to the
// extension that pushed the barrier (matched by remaining-limit value, which
// strictly decreases per extension and so identifies the level uniquely);
// Budget aborts on deadline.
struct SolvedSignal {};
struct CutSignal {
  int level;
};
struct BudgetSignal {};

// Path and lemma lists are persistent cons cells living on the C++ stack of
// the prove() invocation that created them; a cell always outlives the
// subtree that can see it.
struct PathNode {
  const Literal* lit;
  const PathNode* next;
};

struct LemmaNode {
  const Literal* lit;
  const LemmaNode* next;
};

// A suspended continuation: the rest of some subgoal list, to resume once
// the goals pushed above it close.  barrier carries the pushing extension's
// remaining limit when cut is active, -1 otherwise.
struct Frame {
  int barrier;
  const PathNode* path;
  int path_len;
  int lim;
  const LemmaNode* lemmas;
  std::span<const Literal> goals;
};

struct TodoNode {
  Frame frame;
  const TodoNode* next;
};

struct Ctx {
  const Matrix& m;
  const StrategySet& strat;
  Trail trail;
  int offset = 0;
  bool depth_exceeded = false;
  SearchStats stats;
  NodeLog* log = nullptr;
  std::vector<ProofStep> record;
  std::optional<ProofTrace> result;
  std::uint64_t fingerprint = 0;
  std::optional<Clock::time_point> deadline;

  explicit Ctx(const Matrix& matrix, const StrategySet& strategy)
      : m(matrix), strat(strategy), fingerprint(matrix.fingerprint()) {}
};

// Undoes trail bindings and recorded steps on every scope exit: normal
// return (the alternative failed), Cut/Budget unwinds, and the Solved unwind
// (harmless there — the trace was captured at the throw site).
struct Rollback {
  Ctx& ctx;
  Trail::Mark tmark;
  std::size_t rmark;

  explicit Rollback(Ctx& c)
      : ctx(c), tmark(c.trail.mark()), rmark(c.record.size()) {}
  ~Rollback() {
    ctx.trail.undo(tmark);
    ctx.record.resize(rmark);
  }
  Rollback(const Rollback&) = delete;
  Rollback& operator=(const Rollback&) = delete;
};

// Snapshot of a goal literal under the current bindings with variables
// renumbered from 0 in first-occurrence order, so logs from runs with
// different renaming offsets stay comparable.
std::string canonical_literal(const Ctx& ctx, const Literal& lit) {
  Literal applied = apply_full(ctx.trail, lit);
  std::unordered_map<int, int> ids;
  struct Rec {
    std::unordered_map<int, int>& ids;
    Term walk(const Term& t) {
      if (t.is_var()) {
        auto [it, inserted] = ids.emplace(t.var_id(), static_cast<int>(ids.size()));
        return Term::var(it->second);
      }
      std::vector<Term> args;
      args.reserve(t.args().size());
      for (const Term& a : t.args()) args.push_back(walk(a));
      return Term::app(t.symbol(), std::move(args));
    }
  } rec{ids};
  for (Term& a : applied.args) a = rec.walk(a);
  return to_string(ctx.m.symbols, applied);
}

void capture_trace(Ctx& ctx) {
  ProofTrace t;
  t.matrix_fingerprint = ctx.fingerprint;
  t.steps = ctx.record;
  for (auto& [var, value] : ctx.trail.sorted_bindings())
    t.final_subst.emplace_back(var, apply_full(ctx.trail, value));
  ctx.result = std::move(t);
}

void prove(Ctx& ctx, std::span<const Literal> goals, const PathNode* path,
           int path_len, int lim, const LemmaNode* lemmas, const TodoNode* todo);

void pop_and_continue(Ctx& ctx, const TodoNode* todo) {
  if (!todo) {
    capture_trace(ctx);
    throw SolvedSignal{};
  }
  const Frame& f = todo->frame;
  prove(ctx, f.goals, f.path, f.path_len, f.lim, f.lemmas, todo->next);
  if (f.barrier > 0) throw CutSignal{f.barrier};
}

void prove(Ctx& ctx, std::span<const Literal> goals, const PathNode* path,
           int path_len, int lim, const LemmaNode* lemmas, const TodoNode* todo) {
  if (goals.empty()) {
    pop_and_continue(ctx, todo);
    return;
  }

  const Literal& lit = goals.front();
  std::span<const Literal> rest = goals.subspan(1);
  ++ctx.stats.nodes;
  if (path_len > ctx.stats.max_depth) ctx.stats.max_depth = path_len;

  // Regularity: no literal of the open subgoal may repeat a path literal.
  for (const Literal& g : goals)
    for (const PathNode* p = path; p; p = p->next)
      if (substeq(ctx.trail, g, *p->lit)) return;

  const Literal neglit = lit.complement();

  // Lemma rule: first match only, lemmas not re-extended.
  for (const LemmaNode* l = lemmas; l; l = l->next) {
    if (!substeq(ctx.trail, lit, *l->lit)) continue;
    ++ctx.stats.lemma_hits;
    if (ctx.log) ctx.log->push_back({StepKind::Lemma, canonical_literal(ctx, lit), -1, -1});
    {
      Rollback rb(ctx);
      ctx.record.push_back({StepKind::Lemma, lit, -1, -1});
      prove(ctx, rest, path, path_len, lim, lemmas, todo);
    }
    if (ctx.strat.cut) return;
    break;
  }

  // Reductions, in path order (most recent first).  Under cut, the first
  // successful unification commits: once its continuation fails back here,
  // the remaining reductions and all extensions are abandoned.
  for (const PathNode* p = path; p; p = p->next) {
    Rollback rb(ctx);
    if (!unify_literals(ctx.trail, neglit, *p->lit)) continue;
    ++ctx.stats.reductions;
    if (ctx.log) ctx.log->push_back({StepKind::Reduction, canonical_literal(ctx, lit), -1, -1});
    ctx.record.push_back({StepKind::Reduction, lit, -1, -1});
    LemmaNode extended{&lit, lemmas};
    prove(ctx, rest, path, path_len, lim, &extended, todo);
    if (ctx.strat.cut) return;
  }

  // Extensions.  The barrier pushed with each frame makes a later Cut from a
  // failed committed subproof land exactly on this loop.
  const bool root = lit.negated && lit.predicate == SymbolTable::kMarker;
  const std::vector<ContrapositiveEntry>& bucket =
      ctx.m.bucket(neglit.predicate, neglit.negated);
  try {
    for (const ContrapositiveEntry& entry : bucket) {
      if (ctx.deadline && Clock::now() >= *ctx.deadline) throw BudgetSignal{};
      if (!(lim > 0 || entry.ground)) {
        // Depth gate first, before any unification attempt.
        ctx.depth_exceeded = true;
        continue;
      }
      Rollback rb(ctx);
      Literal head = rename(entry.literal, ctx.offset);
      if (!unify_literals(ctx.trail, neglit, head)) continue;
      std::vector<Literal> body = rename_clause(entry.rest, ctx.offset);
      ctx.offset += entry.var_count;
      ++ctx.stats.extensions;
      if (ctx.log)
        ctx.log->push_back({StepKind::Extension, canonical_literal(ctx, lit),
                            entry.clause_id, entry.literal_index});
      ctx.record.push_back(
          {StepKind::Extension, lit, entry.clause_id, entry.literal_index});
      LemmaNode extended{&lit, lemmas};
      Frame frame{ctx.strat.cut ? lim : -1, path, path_len, lim, &extended, rest};
      TodoNode tn{frame, todo};
      PathNode pn{&lit, path};
      prove(ctx, body, &pn, path_len + 1, lim - 1, lemmas, &tn);
      if (root && ctx.strat.scut) break;
    }
  } catch (const CutSignal& c) {
    if (c.level != lim) throw;
  }
}

ProveResult run_iteration(Ctx& ctx, int path_limit) {
  ctx.depth_exceeded = false;
  ctx.trail = Trail();
  ctx.offset = 0;
  ctx.record.clear();
  ctx.result.reset();
  const Literal root_goal[1] = {ctx.m.start_goal};
  ProveResult r;
  try {
    prove(ctx, root_goal, nullptr, 0, path_limit, nullptr, nullptr);
  } catch (const SolvedSignal&) {
    r.proved = true;
    r.trace = std::move(ctx.result);
  }
  r.depth_exceeded = ctx.depth_exceeded;
  return r;
}

void accumulate(SearchStats& total, const SearchStats& it) {
  total.nodes += it.nodes;
  total.extensions += it.extensions;
  total.reductions += it.reductions;
  total.lemma_hits += it.lemma_hits;
  if (it.max_depth > total.max_depth) total.max_depth = it.max_depth;
}

}  // namespace

ProveResult prove_at_limit(const Matrix& matrix, const StrategySet& strategy,
                           int path_limit, SearchStats* stats, NodeLog* log) {
  if (path_limit < 1) throw std::invalid_argument("path limit must be >= 1");
  Ctx ctx(matrix, strategy);
  ctx.log = log;
  ProveResult r = run_iteration(ctx, path_limit);
  if (stats) {
    accumulate(*stats, ctx.stats);
    stats->final_path_limit = path_limit;
  }
  return r;
}

SearchOutcome solve(const Matrix& matrix, const StrategySet& strategy,
                    const SearchLimits& limits) {
  if (strategy.comp_limit) {
    if (*strategy.comp_limit < 1)
      throw std::invalid_argument("comp limit must be positive");
    if (!strategy.cut && !strategy.scut)
      throw std::invalid_argument(
          "comp limit requires cut or scut (restart would change nothing)");
  }
  if (limits.max_path_limit && *limits.max_path_limit < 1)
    throw std::invalid_argument("max path limit must be >= 1");

  StrategySet strat = strategy;  // mutable: the comp restart clears cut/scut
  std::optional<Clock::time_point> deadline;
  if (limits.timeout_seconds)
    deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                  std::chrono::duration<double>(*limits.timeout_seconds));

  SearchOutcome out;
  int limit = 1;
  for (;;) {
    if (strat.comp_limit && (strat.cut || strat.scut) &&
        limit >= *strat.comp_limit) {
      strat.cut = false;
      strat.scut = false;
      limit = 1;
    }
    if (deadline && Clock::now() >= *deadline) {
      out.kind = OutcomeKind::Timeout;
      out.stats.final_path_limit = limit;
      return out;
    }
    Ctx ctx(matrix, strat);
    ctx.deadline = deadline;
    bool timed_out = false;
    ProveResult r;
    try {
      r = run_iteration(ctx, limit);
    } catch (const BudgetSignal&) {
      timed_out = true;
    }
    accumulate(out.stats, ctx.stats);
    out.stats.final_path_limit = limit;
    if (timed_out) {
      out.kind = OutcomeKind::Timeout;
      return out;
    }
    if (r.proved) {
      out.kind = OutcomeKind::Theorem;
      out.trace = std::move(r.trace);
      return out;
    }
    if (!r.depth_exceeded) {
      out.kind = (strat.cut || strat.scut) ? OutcomeKind::GaveUp
                                           : OutcomeKind::CounterSatisfiable;
      return out;
    }
    ++limit;
    if (limits.max_path_limit && limit > *limits.max_path_limit) {
      out.kind = OutcomeKind::DepthLimitReached;
      return out;
    }
  }
}

}  // namespace contab
