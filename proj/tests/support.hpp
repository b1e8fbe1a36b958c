// Shared helpers for the unit tests: tiny term/literal builders, problem
// loading, random generators with fixed seeds, and a truth-table oracle for
// small propositional matrices.
#pragma once

#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "contab/bench.hpp"
#include "contab/clausify.hpp"
#include "contab/engine.hpp"
#include "contab/fol.hpp"
#include "contab/tptp.hpp"
#include "contab/trace.hpp"

namespace testkit {

using namespace contab;

inline Term V(int id) { return Term::var(id); }

inline Term C(SymbolTable& syms, const std::string& name) {
  return Term::app(syms.intern(name, 0));
}

inline Term F(SymbolTable& syms, const std::string& name, std::vector<Term> args) {
  // Take the arity before args is moved from; argument evaluation order is
  // unspecified, so a one-liner could intern with size 0.
  const int arity = static_cast<int>(args.size());
  return Term::app(syms.intern(name, arity), std::move(args));
}

inline Literal L(SymbolTable& syms, const std::string& pred, std::vector<Term> args,
                 bool negated = false) {
  Literal l;
  l.negated = negated;
  l.predicate = syms.intern(pred, static_cast<int>(args.size()));
  l.args = std::move(args);
  return l;
}

inline std::string corpus_path(const std::string& name) {
  return std::string(CONTAB_CORPUS_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Parse inline problem text and clausify it.
inline Matrix matrix_of(const std::string& text, MatrixOptions opts = {}) {
  return build_matrix(parse_problem(text), opts);
}

// ---------------------------------------------------------------------------
// Random propositional problems and a truth-table oracle.
//
// A problem is a CNF clause set over atoms 0..n-1; a literal is the atom
// index, negative literals offset by n in the sign bit representation below
// (+1-based signed integers: +k / -k for atom k-1).

struct PropProblem {
  int atoms = 0;
  std::vector<std::vector<int>> clauses;  // signed 1-based atom indices
};

inline PropProblem random_prop_problem(std::mt19937& rng) {
  PropProblem p;
  p.atoms = std::uniform_int_distribution<int>(1, 4)(rng);
  int nclauses = std::uniform_int_distribution<int>(1, 6)(rng);
  for (int c = 0; c < nclauses; ++c) {
    int width = std::uniform_int_distribution<int>(1, 3)(rng);
    std::vector<int> clause;
    for (int i = 0; i < width; ++i) {
      int atom = std::uniform_int_distribution<int>(1, p.atoms)(rng);
      bool neg = std::uniform_int_distribution<int>(0, 1)(rng) != 0;
      clause.push_back(neg ? -atom : atom);
    }
    p.clauses.push_back(std::move(clause));
  }
  return p;
}

inline bool oracle_unsat(const PropProblem& p) {
  for (int assign = 0; assign < (1 << p.atoms); ++assign) {
    bool all = true;
    for (const std::vector<int>& clause : p.clauses) {
      bool sat = false;
      for (int lit : clause) {
        int atom = std::abs(lit) - 1;
        bool value = (assign >> atom) & 1;
        if (lit > 0 ? value : !value) {
          sat = true;
          break;
        }
      }
      if (!sat) {
        all = false;
        break;
      }
    }
    if (all) return false;  // satisfying assignment found
  }
  return true;
}

// Renders the clause set as TPTP cnf() axioms (atom k-1 -> predicate a<k>).
inline std::string prop_to_tptp(const PropProblem& p) {
  std::ostringstream out;
  for (std::size_t c = 0; c < p.clauses.size(); ++c) {
    out << "cnf(c" << c << ", axiom, (";
    for (std::size_t i = 0; i < p.clauses[c].size(); ++i) {
      if (i) out << " | ";
      int lit = p.clauses[c][i];
      if (lit < 0) out << "~";
      out << "a" << std::abs(lit);
    }
    out << ")).\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Random FOF formulas for parse/print round-trip checks.

inline FormulaRef random_formula(std::mt19937& rng, int depth, int next_bound,
                                 std::vector<std::string>& scope) {
  auto pick = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  if (depth <= 0 || pick(0, 5) == 0) {
    // Atom over constants c1/c2, a scoped variable when available, or equality.
    auto term = [&]() -> FofTerm {
      if (!scope.empty() && pick(0, 1) == 0) {
        FofTerm t;
        t.is_variable = true;
        t.name = scope[static_cast<std::size_t>(pick(0, static_cast<int>(scope.size()) - 1))];
        return t;
      }
      FofTerm t;
      t.name = pick(0, 1) == 0 ? "c1" : "c2";
      return t;
    };
    if (pick(0, 3) == 0) return Formula::atom("=", {term(), term()});
    int arity = pick(0, 2);
    std::vector<FofTerm> args;
    for (int i = 0; i < arity; ++i) args.push_back(term());
    return Formula::atom(arity == 0 ? "p0" : (arity == 1 ? "p1" : "p2"),
                         std::move(args));
  }
  switch (pick(0, 6)) {
    case 0:
      return Formula::negate(random_formula(rng, depth - 1, next_bound, scope));
    case 1:
    case 2: {
      auto l = random_formula(rng, depth - 1, next_bound, scope);
      auto r = random_formula(rng, depth - 1, next_bound, scope);
      return Formula::binary(pick(0, 1) ? Formula::Kind::And : Formula::Kind::Or,
                             std::move(l), std::move(r));
    }
    case 3: {
      auto l = random_formula(rng, depth - 1, next_bound, scope);
      auto r = random_formula(rng, depth - 1, next_bound, scope);
      return Formula::binary(Formula::Kind::Implies, std::move(l), std::move(r));
    }
    case 4: {
      auto l = random_formula(rng, depth - 1, next_bound, scope);
      auto r = random_formula(rng, depth - 1, next_bound, scope);
      return Formula::binary(Formula::Kind::Iff, std::move(l), std::move(r));
    }
    default: {
      std::string name = "X" + std::to_string(next_bound);
      scope.push_back(name);
      auto body = random_formula(rng, depth - 1, next_bound + 1, scope);
      scope.pop_back();
      return Formula::quantify(
          pick(0, 1) != 0 ? Formula::Kind::Forall : Formula::Kind::Exists,
          {name}, std::move(body));
    }
  }
}

inline FormulaRef random_formula(std::mt19937& rng, int depth = 4) {
  std::vector<std::string> scope;
  return random_formula(rng, depth, 1, scope);
}

// ---------------------------------------------------------------------------
// Random proof traces for serialize/parse round-trips (content is arbitrary;
// only the format must survive).

inline Term random_term(std::mt19937& rng, SymbolTable& syms, int depth) {
  auto pick = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  if (depth <= 0 || pick(0, 2) == 0) {
    if (pick(0, 1) == 0) return Term::var(pick(0, 9));
    return C(syms, pick(0, 1) == 0 ? "a" : "b");
  }
  std::vector<Term> args;
  int arity = pick(1, 2);
  for (int i = 0; i < arity; ++i) args.push_back(random_term(rng, syms, depth - 1));
  return F(syms, arity == 1 ? "f" : "g2", std::move(args));
}

inline ProofTrace random_trace(std::mt19937& rng, SymbolTable& syms) {
  auto pick = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  ProofTrace t;
  t.matrix_fingerprint = (static_cast<std::uint64_t>(rng()) << 32) ^ rng();
  int steps = pick(1, 8);
  for (int i = 0; i < steps; ++i) {
    ProofStep s;
    int kind = pick(0, 2);
    s.kind = kind == 0 ? StepKind::Lemma
                       : (kind == 1 ? StepKind::Reduction : StepKind::Extension);
    if (pick(0, 7) == 0) {
      Literal l;
      l.negated = pick(0, 1) != 0;
      l.predicate = SymbolTable::kMarker;
      s.literal = l;
    } else if (pick(0, 5) == 0) {
      s.literal = L(syms, "=",
                    {random_term(rng, syms, 1), random_term(rng, syms, 1)},
                    pick(0, 1) != 0);
      s.literal.predicate = SymbolTable::kEq;
    } else {
      std::vector<Term> args;
      int arity = pick(0, 2);
      for (int a = 0; a < arity; ++a) args.push_back(random_term(rng, syms, 2));
      Literal l;
      l.negated = pick(0, 1) != 0;
      l.predicate = syms.intern("q" + std::to_string(arity), arity);
      l.args = std::move(args);
      s.literal = l;
    }
    if (s.kind == StepKind::Extension) {
      s.clause_id = pick(0, 30);
      s.literal_index = pick(0, 5);
    }
    t.steps.push_back(std::move(s));
  }
  int nsubst = pick(0, 3);
  for (int i = 0; i < nsubst; ++i)
    t.final_subst.emplace_back(20 + i, random_term(rng, syms, 2));
  return t;
}

}  // namespace testkit
