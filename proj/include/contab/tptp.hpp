// TPTP FOF/CNF reader and printer.
//
// Accepted subset: fof/cnf annotated formulas, include directives, connectives
// ~ & | => <= <=> <~>, quantifiers ! ?, infix = and !=, $true/$false.
// <= and <~> are desugared at parse time, so the in-memory connective set is
// ~ & | => <=> ! ?.

#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace contab {

struct ParseError : std::runtime_error {
  ParseError(int line, int column, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + what),
        line(line),
        column(column) {}
  int line;
  int column;
};

// Input-syntax term over named variables. A name starting with an upper-case
// letter is a variable; everything else is a function/constant.
struct FofTerm {
  std::string name;
  bool is_variable = false;
  std::vector<FofTerm> args;

  bool operator==(const FofTerm& o) const {
    return name == o.name && is_variable == o.is_variable && args == o.args;
  }
};

class Formula;
using FormulaRef = std::shared_ptr<const Formula>;

class Formula {
public:
  enum class Kind { Atom, Not, And, Or, Implies, Iff, Forall, Exists };

  Kind kind;
  std::string predicate;           // Atom; "=" for equality, "$true"/"$false"
  std::vector<FofTerm> args;       // Atom
  FormulaRef left, right;          // Not (left only), And, Or, Implies, Iff
  std::vector<std::string> bound;  // Forall, Exists
  FormulaRef body;                 // Forall, Exists

  static FormulaRef atom(std::string predicate, std::vector<FofTerm> args);
  static FormulaRef negate(FormulaRef f);
  static FormulaRef binary(Kind k, FormulaRef l, FormulaRef r);
  static FormulaRef quantify(Kind k, std::vector<std::string> vars, FormulaRef body);
};

enum class Role {
  Axiom,
  Hypothesis,
  Definition,
  Lemma,
  Theorem,
  Conjecture,
  NegatedConjecture,
};

struct AnnotatedFormula {
  std::string name;
  Role role;
  FormulaRef formula;
};

// Maps an include path as written in the file to the file's contents, or
// nullopt when it cannot be found.
using IncludeResolver = std::function<std::optional<std::string>(const std::string&)>;

// Parses a whole problem; includes are expanded depth-first at the point of
// the directive and cycles are an error. After parsing, every binder name is
// distinct from the names it would shadow and from the formula's free names.
std::vector<AnnotatedFormula> parse_problem(std::string_view text,
                                            const IncludeResolver& resolver = {});

// Parses a single FOF formula (no trailing annotated-formula syntax).
FormulaRef parse_formula(std::string_view text);

std::string print_formula(const FormulaRef& f);

// Equality modulo renaming of bound variables.
bool alpha_equal(const FormulaRef& a, const FormulaRef& b);

// Free variable names in first-occurrence order.
std::vector<std::string> free_variables(const FormulaRef& f);

const char* to_string(Role r);

// Builds a resolver that tries each root directory in order, then the TPTP
// environment variable root. Used by the CLI and the suite harness.
IncludeResolver file_resolver(std::vector<std::string> roots);

}  // namespace contab
