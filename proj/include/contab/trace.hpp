// Proof traces, their line-based serialization, and an independent checker.
//
// A trace is the left-to-right flattening of a closed connection tableau:
// one step per closed subgoal, in depth-first order, plus the final
// substitution.  The checker replays the trace against the matrix alone —
// it shares term syntax with the engine but none of its search machinery —
// and either accepts or points at the first step that does not follow.
//
// File format, one record per line:
//   matrix <16 hex digits>           fingerprint of the matrix searched
//   lem <literal>                    subgoal closed by the lemma rule
//   pat <literal>                    subgoal closed against the path
//   res <literal> <clause> <index>   subgoal closed by extending a clause
//   subst                            optional; then one `V<n> = <term>` line
//                                    per bound variable
// Literals are spaceless TPTP atoms (`-` for negation, infix `=`/`!=`, `#`
// for the start marker); variables print as V<n>.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "contab/clausify.hpp"
#include "contab/fol.hpp"

namespace contab {

enum class StepKind {
  Lemma,      // lem: goal repeats an already-closed literal
  Reduction,  // pat: goal is complementary to a path literal
  Extension,  // res: goal resolved against a matrix clause literal
};

struct ProofStep {
  StepKind kind = StepKind::Extension;
  Literal literal;         // the closed subgoal, as recorded during search
  int clause_id = -1;      // Extension only
  int literal_index = -1;  // Extension only

  bool operator==(const ProofStep& o) const {
    return kind == o.kind && literal == o.literal && clause_id == o.clause_id &&
           literal_index == o.literal_index;
  }
  bool operator!=(const ProofStep& o) const { return !(*this == o); }
};

struct ProofTrace {
  std::uint64_t matrix_fingerprint = 0;
  std::vector<ProofStep> steps;  // first step closes the start goal -#
  // Bindings live at the end of the search, sorted by variable id, with the
  // substitution fully applied to each value.
  std::vector<std::pair<int, Term>> final_subst;

  bool operator==(const ProofTrace& o) const {
    return matrix_fingerprint == o.matrix_fingerprint && steps == o.steps &&
           final_subst == o.final_subst;
  }
  bool operator!=(const ProofTrace& o) const { return !(*this == o); }
};

enum class CheckFailureReason {
  None,
  LemmaMiss,      // lem step's literal is not an available lemma
  PathMiss,       // pat step's complement is not on the path
  ClauseMismatch, // res step does not fit the referenced clause instance
  TrailingSteps,  // steps remain after the root goal closed
  MissingSteps,   // trace ended with subgoals still open
  RootMismatch,   // first step closes something other than -#
};

const char* to_string(CheckFailureReason r);

struct CheckVerdict {
  bool accepted = false;
  int step = 0;  // 1-based index of the offending step; 0 when accepted
  CheckFailureReason reason = CheckFailureReason::None;
  std::string detail;
};

// Replays `trace` against `matrix`.  The caller is responsible for checking
// that trace.matrix_fingerprint matches the matrix; the verdict only reports
// on the steps themselves.  Pure: no state is shared or modified.
//
// Lemmas available at a node are the closed earlier siblings of the node and
// of its ancestors — exactly the literals whose own subproof ran under a
// prefix of the current path, so reusing them is always sound.  This matches
// what the search emits; a lemma reference into an unrelated branch is
// rejected.
CheckVerdict check_proof(const Matrix& matrix, const ProofTrace& trace);

std::string serialize_trace(const SymbolTable& syms, const ProofTrace& trace);

// Inverse of serialize_trace; interns trace symbols into `syms` (pass the
// symbol table of the matrix the trace belongs to).  Throws
// std::runtime_error with a line number on malformed input.
ProofTrace parse_trace(SymbolTable& syms, std::string_view text);

}  // namespace contab
