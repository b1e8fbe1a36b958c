#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "support.hpp"

using namespace contab;

namespace {

// Strips marker literals, recovering the clause set before start marking.
std::vector<std::vector<Literal>> stripped_clauses(const Matrix& m) {
  std::vector<std::vector<Literal>> out;
  for (const Clause& c : m.clauses) {
    std::vector<Literal> lits;
    for (const Literal& l : c.literals)
      if (l.predicate != SymbolTable::kMarker) lits.push_back(l);
    out.push_back(std::move(lits));
  }
  return out;
}

// Propositional satisfiability of a ground matrix by assignment enumeration.
bool matrix_sat(const Matrix& m) {
  std::vector<int> atoms;
  for (int s = 0; s < m.symbols.size(); ++s)
    if (s != SymbolTable::kEq && s != SymbolTable::kMarker &&
        m.symbols.arity(s) == 0)
      atoms.push_back(s);
  auto clauses = stripped_clauses(m);
  for (const auto& c : clauses)
    for (const Literal& l : c) {
      REQUIRE(l.args.empty());  // test helper only handles ground 0-ary atoms
      REQUIRE(std::find(atoms.begin(), atoms.end(), l.predicate) != atoms.end());
    }
  REQUIRE(atoms.size() <= 16);
  for (std::uint32_t bits = 0; bits < (1u << atoms.size()); ++bits) {
    auto value = [&](int pred) {
      std::size_t i = std::find(atoms.begin(), atoms.end(), pred) - atoms.begin();
      return (bits >> i) & 1u;
    };
    bool all = true;
    for (const auto& c : clauses) {
      bool any = false;
      for (const Literal& l : c) any |= (value(l.predicate) != 0) != l.negated;
      if (!any) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

// Evaluates a closed propositional formula under an atom assignment.
bool eval_formula(const FormulaRef& f, const std::map<std::string, bool>& env) {
  switch (f->kind) {
    case Formula::Kind::Atom:
      if (f->predicate == "$true") return true;
      if (f->predicate == "$false") return false;
      return env.at(f->predicate);
    case Formula::Kind::Not:
      return !eval_formula(f->left, env);
    case Formula::Kind::And:
      return eval_formula(f->left, env) && eval_formula(f->right, env);
    case Formula::Kind::Or:
      return eval_formula(f->left, env) || eval_formula(f->right, env);
    case Formula::Kind::Implies:
      return !eval_formula(f->left, env) || eval_formula(f->right, env);
    case Formula::Kind::Iff:
      return eval_formula(f->left, env) == eval_formula(f->right, env);
    default:
      FAIL("quantifier in propositional formula");
      return false;
  }
}

FormulaRef random_prop_formula(std::mt19937& rng, int depth) {
  auto atom = [&] {
    return Formula::atom("a" + std::to_string(rng() % 4 + 1), {});
  };
  if (depth == 0 || rng() % 4 == 0) return atom();
  switch (rng() % 5) {
    case 0:
      return Formula::negate(random_prop_formula(rng, depth - 1));
    case 1:
      return Formula::binary(Formula::Kind::And, random_prop_formula(rng, depth - 1),
                             random_prop_formula(rng, depth - 1));
    case 2:
      return Formula::binary(Formula::Kind::Or, random_prop_formula(rng, depth - 1),
                             random_prop_formula(rng, depth - 1));
    case 3:
      return Formula::binary(Formula::Kind::Implies,
                             random_prop_formula(rng, depth - 1),
                             random_prop_formula(rng, depth - 1));
    default:
      return Formula::binary(Formula::Kind::Iff, random_prop_formula(rng, depth - 1),
                             random_prop_formula(rng, depth - 1));
  }
}

std::vector<std::string> dump_lines(const Matrix& m) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : m.dump()) {
    if (c == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  return lines;
}

}  // namespace

TEST_CASE("plain clausification distributes disjunction over conjunction") {
  Matrix m = testkit::matrix_of("fof(a, axiom, ~s | (p & q)).",
                                {ClausifyMode::NoDef, {}});
  auto lines = dump_lines(m);
  // No positive clause and no conjecture: every clause becomes a start clause.
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "0: -s | p | #");
  CHECK(lines[1] == "1: -s | q | #");
}

TEST_CASE("definitional naming beats distribution only past the break-even") {
  const char* text = "fof(a, axiom, (p & q & r) | (s & t & u)).";
  Matrix plain = testkit::matrix_of(text, {ClausifyMode::NoDef, {}});
  CHECK(plain.clauses.size() == 9);  // 3 x 3 product

  Matrix named = testkit::matrix_of(text, {ClausifyMode::Def, {}});
  CHECK(named.clauses.size() == 6);  // 3 uses + 3 definition clauses
  int defs = 0;
  bool saw_df = false;
  for (const Clause& c : named.clauses) {
    defs += c.origin == ClauseOrigin::Definition;
    for (const Literal& l : c.literals)
      saw_df |= named.symbols.name(l.predicate) == "df0";
  }
  CHECK(defs == 3);
  CHECK(saw_df);

  // At the 2 x 2 break-even naming does not pay and is not applied.
  Matrix even = testkit::matrix_of("fof(a, axiom, (p & q) | (r & s)).",
                                   {ClausifyMode::Def, {}});
  CHECK(even.clauses.size() == 4);
  for (const Clause& c : even.clauses)
    CHECK(c.origin != ClauseOrigin::Definition);
}

TEST_CASE("both clausification modes preserve propositional satisfiability") {
  std::mt19937 rng(99);
  int unsat_seen = 0;
  for (int i = 0; i < 200; ++i) {
    FormulaRef f = random_prop_formula(rng, 4);
    bool sat = false;
    for (std::uint32_t bits = 0; bits < 16; ++bits) {
      std::map<std::string, bool> env;
      for (int a = 1; a <= 4; ++a)
        env["a" + std::to_string(a)] = (bits >> (a - 1)) & 1u;
      if (eval_formula(f, env)) {
        sat = true;
        break;
      }
    }
    unsat_seen += !sat;
    std::string text = "fof(a, axiom, " + print_formula(f) + ").";
    for (ClausifyMode mode : {ClausifyMode::NoDef, ClausifyMode::Def}) {
      Matrix m = testkit::matrix_of(text, {mode, {}});
      CHECK(matrix_sat(m) == sat);
    }
  }
  CHECK(unsat_seen > 0);  // the sample exercises both outcomes
}

TEST_CASE("random clause sets agree with the truth-table oracle") {
  std::mt19937 rng(52);
  for (int i = 0; i < 200; ++i) {
    testkit::PropProblem prob = testkit::random_prop_problem(rng);
    bool unsat = testkit::oracle_unsat(prob);
    Matrix m = testkit::matrix_of(testkit::prop_to_tptp(prob),
                                  {ClausifyMode::Def, {}});
    CHECK(matrix_sat(m) == !unsat);
  }
}

TEST_CASE("existentials under universals become skolem functions") {
  Matrix m = testkit::matrix_of("fof(a, axiom, ![X]: ?[Y]: r(X,Y)).",
                                {ClausifyMode::NoDef, {}});
  REQUIRE(m.clauses.size() == 1);
  auto lines = dump_lines(m);
  CHECK(lines[0] == "0: r(V0,sk0(V0)) | #");
  CHECK(m.clauses[0].var_count == 1);

  // A top-level existential skolemizes to a constant.
  Matrix c = testkit::matrix_of("fof(a, axiom, ?[Y]: r(Y)).",
                                {ClausifyMode::NoDef, {}});
  CHECK(dump_lines(c)[0] == "0: r(sk0) | #");

  // Fresh names avoid clashes with input symbols.
  Matrix clash = testkit::matrix_of("fof(a, axiom, p(sk0) & ?[Y]: r(Y)).",
                                    {ClausifyMode::NoDef, {}});
  bool saw_sk1 = false;
  for (const Clause& cl : clash.clauses)
    for (const Literal& l : cl.literals)
      for (const Term& t : l.args)
        if (!t.is_var()) saw_sk1 |= clash.symbols.name(t.symbol()) == "sk1";
  CHECK(saw_sk1);
}

TEST_CASE("free variables are universally closed before translation") {
  Matrix m = testkit::matrix_of("cnf(a, axiom, (~p(X) | q(X))).",
                                {ClausifyMode::NoDef, {}});
  REQUIRE(m.clauses.size() == 1);
  CHECK(m.clauses[0].var_count == 1);
  CHECK_FALSE(m.clauses[0].ground());
}

TEST_CASE("equality anywhere appends the standard equality axioms") {
  Matrix m = testkit::matrix_of(
      "fof(a1, axiom, f(a) = b).\n"
      "fof(goal, conjecture, p(f(a)) => p(b)).\n",
      {ClausifyMode::NoDef, {}});
  std::vector<std::string> eq_lines;
  for (const Clause& c : m.clauses)
    if (c.origin == ClauseOrigin::EqualityAxiom)
      eq_lines.push_back(dump_lines(m)[static_cast<std::size_t>(c.id)]);
  REQUIRE(eq_lines.size() == 5);
  CHECK(eq_lines[0] == "3: V0=V0");
  CHECK(eq_lines[1] == "4: V0!=V1 | V1=V0");
  CHECK(eq_lines[2] == "5: V0!=V1 | V1!=V2 | V0=V2");
  // Substitutivity for the one non-constant function and the one predicate.
  CHECK(eq_lines[3] == "6: V0!=V1 | f(V0)=f(V1)");
  CHECK(eq_lines[4] == "7: V0!=V1 | -p(V0) | p(V1)");

  Matrix none = testkit::matrix_of("fof(a, axiom, p(c)).", {});
  for (const Clause& c : none.clauses)
    CHECK(c.origin != ClauseOrigin::EqualityAxiom);
}

TEST_CASE("positive start marking and the initial subgoal") {
  Matrix m = testkit::matrix_of(
      "fof(a1, axiom, p(c)).\nfof(a2, axiom, ~p(c)).\n",
      {ClausifyMode::NoDef, StartMode::Pos});
  REQUIRE(m.clauses.size() == 2);
  REQUIRE(m.start_clauses == std::vector<int>{0});
  REQUIRE(m.clauses[0].literals.size() == 2);
  CHECK(m.clauses[0].literals.back().predicate == SymbolTable::kMarker);
  CHECK(m.clauses[1].literals.size() == 1);

  CHECK(m.start_goal.negated);
  CHECK(m.start_goal.predicate == SymbolTable::kMarker);

  // The marker bucket is how the engine reaches start clauses.
  const auto& starts = m.bucket(SymbolTable::kMarker, false);
  REQUIRE(starts.size() == 1);
  CHECK(starts[0].clause_id == 0);
  CHECK(starts[0].literal_index == 1);
  REQUIRE(starts[0].rest.size() == 1);
  CHECK(starts[0].rest[0].predicate == *m.symbols.lookup("p"));
}

TEST_CASE("conjecture start marking marks only conjecture clauses") {
  Matrix m = testkit::matrix_of(
      "fof(a1, axiom, p(a)).\n"
      "fof(a2, axiom, ![X]: (p(X) => q(X))).\n"
      "fof(goal, conjecture, q(a)).\n",
      {ClausifyMode::NoDef, {}});  // defaults to conjecture starts
  REQUIRE(m.clauses.size() == 3);
  CHECK(m.start_clauses == std::vector<int>{2});
  CHECK(m.clauses[2].origin == ClauseOrigin::ConjectureSide);
  auto lines = dump_lines(m);
  CHECK(lines[0] == "0: p(a)");
  CHECK(lines[1] == "1: -p(V0) | q(V0)");
  CHECK(lines[2] == "2: -q(a) | #");
}

TEST_CASE("start-mode fallbacks when the preferred set is empty") {
  // Conjecture requested (by default) but the negated conjecture produced no
  // clauses: fall back to positive clauses.
  Matrix m = testkit::matrix_of(
      "fof(a1, axiom, p).\nfof(a2, axiom, ~p).\nfof(goal, conjecture, $false).\n",
      {ClausifyMode::NoDef, {}});
  REQUIRE(m.clauses.size() == 2);
  CHECK(m.start_clauses == std::vector<int>{0});

  // Positive starts requested but no purely positive clause exists: fall back
  // to the conjecture side.
  Matrix n = testkit::matrix_of(
      "fof(a1, axiom, ~p | ~q).\nfof(goal, conjecture, ~p).\n",
      {ClausifyMode::NoDef, StartMode::Pos});
  REQUIRE(n.start_clauses.size() == 1);
  CHECK(n.clauses[n.start_clauses[0]].origin == ClauseOrigin::ConjectureSide);
}

TEST_CASE("contrapositive index is complete and faithful") {
  std::string text = testkit::read_file(testkit::corpus_path("pel12.p"));
  Matrix m = testkit::matrix_of(text, {});
  int entries_seen = 0;
  for (const Clause& c : m.clauses) {
    for (std::size_t i = 0; i < c.literals.size(); ++i) {
      const Literal& lit = c.literals[i];
      const auto& bucket = m.bucket(lit.predicate, lit.negated);
      int hits = 0;
      for (const ContrapositiveEntry& e : bucket) {
        if (e.clause_id != c.id || e.literal_index != static_cast<int>(i))
          continue;
        ++hits;
        CHECK(e.literal == lit);
        CHECK(e.ground == c.ground());
        CHECK(e.var_count == c.var_count);
        REQUIRE(e.rest.size() == c.literals.size() - 1);
        std::size_t k = 0;
        for (std::size_t j = 0; j < c.literals.size(); ++j)
          if (j != i) CHECK(e.rest[k++] == c.literals[j]);
      }
      CHECK(hits == 1);
      ++entries_seen;
    }
  }
  CHECK(entries_seen > 10);
  // The marker never occurs negated in a clause, so its negative bucket is an
  // unindexed key and must come back empty.
  CHECK(m.bucket(SymbolTable::kMarker, true).empty());
}

TEST_CASE("matrix structural invariants hold across the corpus sample") {
  for (const char* name : {"pel01.p", "pel10.p", "eq01.p", "fo07.p", "sat02.p"}) {
    std::string text = testkit::read_file(testkit::corpus_path(name));
    Matrix m = testkit::matrix_of(text, {});
    REQUIRE(!m.clauses.empty());
    REQUIRE(!m.start_clauses.empty());
    CHECK(std::is_sorted(m.start_clauses.begin(), m.start_clauses.end()));
    std::set<int> starts(m.start_clauses.begin(), m.start_clauses.end());
    for (const Clause& c : m.clauses) {
      CHECK(c.id == (&c - m.clauses.data()));
      int markers = 0;
      for (std::size_t i = 0; i < c.literals.size(); ++i) {
        const Literal& l = c.literals[i];
        if (l.predicate == SymbolTable::kMarker) {
          ++markers;
          CHECK_FALSE(l.negated);
          CHECK(i == c.literals.size() - 1);  // marker is always last
        }
      }
      CHECK(markers == (starts.count(c.id) ? 1 : 0));
      CHECK(c.var_count == max_var(c.literals) + 1);
      CHECK(c.ground() == (max_var(c.literals) == -1));
    }
  }
}

TEST_CASE("dump and fingerprint are deterministic and option-sensitive") {
  std::string text = testkit::read_file(testkit::corpus_path("pel09.p"));
  Matrix a = testkit::matrix_of(text, {});
  Matrix b = testkit::matrix_of(text, {});
  CHECK(a.dump() == b.dump());
  CHECK(a.fingerprint() == b.fingerprint());
  CHECK(a.fingerprint() == fnv1a64(a.dump()));

  const char* blow = "fof(a, axiom, (p & q & r) | (s & t & u)).";
  Matrix def = testkit::matrix_of(blow, {ClausifyMode::Def, {}});
  Matrix nodef = testkit::matrix_of(blow, {ClausifyMode::NoDef, {}});
  CHECK(def.fingerprint() != nodef.fingerprint());
}
