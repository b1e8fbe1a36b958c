// Translation from parsed problems to the clausal matrix searched by the
// engine.
//
// Pipeline per input formula: universal closure of free variables,
// polarity-driven negation normal form, Skolemization, then clausification
// (either plain distribution or definitional naming of subformulas whose
// expansion would blow up the clause count).  The negated conjecture enters
// the matrix alongside the axioms.  When equality occurs anywhere, the
// standard equality axioms (reflexivity, symmetry, transitivity and
// substitutivity for every function and predicate) are appended.
//
// Start clauses carry a propositional marker literal '#' as their final
// literal; the search begins from the single subgoal '-#', so the first
// extension step necessarily picks a start clause.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "contab/fol.hpp"
#include "contab/tptp.hpp"

namespace contab {

enum class ClausifyMode {
  Def,    // name subformulas when naming yields fewer clauses
  NoDef,  // distribute disjunctions over conjunctions unconditionally
};

enum class StartMode {
  Pos,   // start from clauses whose stored literals are all positive
  Conj,  // start from clauses derived from the conjecture
};

enum class ClauseOrigin {
  AxiomSide,       // axioms, hypotheses, lemmas, definitions, theorems
  ConjectureSide,  // clauses of the negated conjecture
  Definition,      // clauses introduced by definitional naming
  EqualityAxiom,
};

struct Clause {
  int id = 0;
  std::vector<Literal> literals;  // start clauses end with the marker literal
  ClauseOrigin origin = ClauseOrigin::AxiomSide;
  int var_count = 0;  // variables are renumbered 0..var_count-1 per clause
  bool ground() const { return var_count == 0; }
};

// One indexed way of entering a clause: `literal` is the entry literal and
// `rest` the remaining literals in stored order.  The engine unifies the
// complement of a subgoal against `literal` and spawns `rest` as subgoals.
struct ContrapositiveEntry {
  int clause_id = 0;
  int literal_index = 0;
  Literal literal;
  std::vector<Literal> rest;
  bool ground = false;  // true when the whole clause has no variables
  int var_count = 0;
};

class Matrix {
public:
  SymbolTable symbols;
  std::vector<Clause> clauses;     // clauses[i].id == i
  std::vector<int> start_clauses;  // ids of marker-bearing clauses, ascending
  Literal start_goal;              // the initial subgoal -#

  // Entries whose head literal has the given predicate and sign, in clause
  // order.  Returns an empty list for unindexed keys.
  const std::vector<ContrapositiveEntry>& bucket(int predicate, bool negated) const;

  // One line per clause, "id: lit | lit | ...".  Stable across runs for the
  // same problem and options; fingerprint() hashes it.
  std::string dump() const;
  std::uint64_t fingerprint() const;

  // Rebuilds the contrapositive index from `clauses`.  build_matrix calls
  // this; callers only need it after editing clauses by hand (tests do).
  void index_clauses();

private:
  static std::uint64_t key(int predicate, bool negated) {
    return (static_cast<std::uint64_t>(predicate) << 1) | (negated ? 1u : 0u);
  }
  std::unordered_map<std::uint64_t, std::vector<ContrapositiveEntry>> index_;
};

struct MatrixOptions {
  ClausifyMode mode = ClausifyMode::Def;
  // When unset: Conj if the problem has a conjecture (or negated conjecture),
  // Pos otherwise.
  std::optional<StartMode> start;
};

// Builds the searchable matrix for a parsed problem.  Throws
// std::runtime_error on symbol arity clashes.
Matrix build_matrix(const std::vector<AnnotatedFormula>& problem,
                    const MatrixOptions& options = {});

}  // namespace contab
