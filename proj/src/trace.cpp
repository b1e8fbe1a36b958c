#include "contab/trace.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <utility>

namespace contab {

const char* to_string(CheckFailureReason r) {
  switch (r) {
    case CheckFailureReason::None: return "none";
    case CheckFailureReason::LemmaMiss: return "lemma-miss";
    case CheckFailureReason::PathMiss: return "path-miss";
    case CheckFailureReason::ClauseMismatch: return "clause-mismatch";
    case CheckFailureReason::TrailingSteps: return "trailing-steps";
    case CheckFailureReason::MissingSteps: return "missing-steps";
    case CheckFailureReason::RootMismatch: return "root-mismatch";
  }
  return "?";
}

// -------------------------------------------------------------- checker ----

namespace {

// Flat, sorted view of the recorded final substitution; lookups are
// allocation-free.  A variable is replaced by its recorded value verbatim,
// without substituting inside the value again.  Honest traces record fully
// applied values, so one pass is a fixpoint; on corrupted input (even a
// cyclic substitution) this still terminates.  stable_sort keeps the first
// occurrence first, so a duplicate binding never shadows an earlier one.
struct SubstView {
  std::vector<std::pair<int, const Term*>> items;

  explicit SubstView(const std::vector<std::pair<int, Term>>& subst) {
    items.reserve(subst.size());
    for (const auto& [var, value] : subst) items.emplace_back(var, &value);
    std::stable_sort(items.begin(), items.end(),
                     [](const auto& a, const auto& b) {
                       return a.first < b.first;
                     });
  }

  const Term* find(int var) const {
    auto it = std::lower_bound(
        items.begin(), items.end(), var,
        [](const auto& entry, int v) { return entry.first < v; });
    return it != items.end() && it->first == var ? it->second : nullptr;
  }
};

Term subst_term(const Term& t, const SubstView& s) {
  if (t.is_var()) {
    const Term* value = s.find(t.var_id());
    return value ? *value : t;
  }
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(subst_term(a, s));
  return Term::app(t.symbol(), std::move(args));
}

Literal subst_literal(const Literal& l, const SubstView& s) {
  Literal out;
  out.negated = l.negated;
  out.predicate = l.predicate;
  out.args.reserve(l.args.size());
  for (const Term& a : l.args) out.args.push_back(subst_term(a, s));
  return out;
}

// One-way matching of a clause pattern against a rigid (instantiated)
// literal.  Pattern variables bind to rigid subterms; rigid variables are
// leftover unbound search variables and behave as opaque constants, so they
// match only a pattern variable.
//
// Bindings for one clause application live in binds[frame..end); the checker
// truncates back to the frame once the application's subgoals are closed, so
// a linear scan of the open frame sees exactly this application's bindings.
// The stored pointers alias subterms of the instantiated step literals, which
// stay put for the whole check.
using BindStack = std::vector<std::pair<int, const Term*>>;

bool match_term(const Term& pattern, const Term& rigid, BindStack& binds,
                std::size_t frame) {
  if (pattern.is_var()) {
    for (std::size_t i = frame; i < binds.size(); ++i)
      if (binds[i].first == pattern.var_id())
        return *binds[i].second == rigid;
    binds.emplace_back(pattern.var_id(), &rigid);
    return true;
  }
  if (rigid.is_var()) return false;
  if (pattern.symbol() != rigid.symbol() ||
      pattern.args().size() != rigid.args().size())
    return false;
  for (std::size_t i = 0; i < pattern.args().size(); ++i)
    if (!match_term(pattern.args()[i], rigid.args()[i], binds, frame))
      return false;
  return true;
}

bool match_args(const Literal& pattern, const Literal& rigid, BindStack& binds,
                std::size_t frame) {
  if (pattern.args.size() != rigid.args.size()) return false;
  for (std::size_t i = 0; i < pattern.args.size(); ++i)
    if (!match_term(pattern.args[i], rigid.args[i], binds, frame))
      return false;
  return true;
}

struct Checker {
  const Matrix& m;
  const ProofTrace& trace;
  std::vector<Literal> inst;  // step literals with final_subst applied
  std::size_t pos = 0;
  std::vector<Literal> path;
  std::vector<Literal> lemmas;
  BindStack binds;
  CheckVerdict verdict;

  bool fail(CheckFailureReason reason, std::size_t step0, std::string detail) {
    verdict.accepted = false;
    verdict.reason = reason;
    verdict.step = static_cast<int>(step0) + 1;
    verdict.detail = std::move(detail);
    return false;
  }

  // Consumes the steps of one closed subgoal.  On success the lemma list is
  // exactly as on entry plus this subgoal's literal; the truncation in the
  // extension case is what scopes lemmas to prefix paths.
  bool check_subgoal() {
    if (pos >= inst.size())
      return fail(CheckFailureReason::MissingSteps, inst.size(),
                  "trace ends while subgoals are still open");
    const std::size_t idx = pos++;
    const ProofStep& step = trace.steps[idx];
    const Literal& g = inst[idx];
    switch (step.kind) {
      case StepKind::Lemma: {
        if (std::find(lemmas.begin(), lemmas.end(), g) == lemmas.end())
          return fail(CheckFailureReason::LemmaMiss, idx,
                      to_string(m.symbols, g) + " is not an available lemma");
        break;
      }
      case StepKind::Reduction: {
        Literal want = g.complement();
        if (std::find(path.begin(), path.end(), want) == path.end())
          return fail(CheckFailureReason::PathMiss, idx,
                      "complement of " + to_string(m.symbols, g) +
                          " is not on the path");
        break;
      }
      case StepKind::Extension: {
        if (step.clause_id < 0 ||
            step.clause_id >= static_cast<int>(m.clauses.size()))
          return fail(CheckFailureReason::ClauseMismatch, idx,
                      "clause id " + std::to_string(step.clause_id) +
                          " is out of range");
        const Clause& c = m.clauses[step.clause_id];
        if (step.literal_index < 0 ||
            step.literal_index >= static_cast<int>(c.literals.size()))
          return fail(CheckFailureReason::ClauseMismatch, idx,
                      "literal index " + std::to_string(step.literal_index) +
                          " is out of range for clause " +
                          std::to_string(step.clause_id));
        const Literal& entry = c.literals[step.literal_index];
        const std::size_t bind_base = binds.size();
        if (entry.negated == g.negated || entry.predicate != g.predicate ||
            !match_args(entry, g, binds, bind_base))
          return fail(CheckFailureReason::ClauseMismatch, idx,
                      "literal " + std::to_string(step.literal_index) +
                          " of clause " + std::to_string(step.clause_id) +
                          " has no instance complementary to " +
                          to_string(m.symbols, g));
        path.push_back(g);
        const std::size_t lemma_base = lemmas.size();
        for (std::size_t j = 0; j < c.literals.size(); ++j) {
          if (static_cast<int>(j) == step.literal_index) continue;
          if (pos >= inst.size())
            return fail(CheckFailureReason::MissingSteps, inst.size(),
                        "trace ends while subgoals are still open");
          if (c.literals[j].negated != inst[pos].negated ||
              c.literals[j].predicate != inst[pos].predicate ||
              !match_args(c.literals[j], inst[pos], binds, bind_base))
            return fail(CheckFailureReason::ClauseMismatch, pos,
                        "step does not close literal " + std::to_string(j) +
                            " of clause " + std::to_string(step.clause_id) +
                            " under the clause instance");
          if (!check_subgoal()) return false;
        }
        lemmas.erase(lemmas.begin() + static_cast<std::ptrdiff_t>(lemma_base),
                     lemmas.end());
        binds.resize(bind_base);
        path.pop_back();
        break;
      }
    }
    lemmas.push_back(g);
    return true;
  }
};

}  // namespace

CheckVerdict check_proof(const Matrix& matrix, const ProofTrace& trace) {
  Checker ck{matrix, trace, {}, 0, {}, {}, {}, {}};
  const SubstView s(trace.final_subst);
  ck.inst.reserve(trace.steps.size());
  for (const ProofStep& step : trace.steps)
    ck.inst.push_back(subst_literal(step.literal, s));

  if (!ck.check_subgoal()) return ck.verdict;
  if (!(ck.inst[0] == matrix.start_goal)) {
    ck.fail(CheckFailureReason::RootMismatch, 0,
            "first step closes " + to_string(matrix.symbols, ck.inst[0]) +
                " instead of the start goal " +
                to_string(matrix.symbols, matrix.start_goal));
    return ck.verdict;
  }
  if (ck.pos != ck.inst.size()) {
    ck.fail(CheckFailureReason::TrailingSteps, ck.pos,
            std::to_string(ck.inst.size() - ck.pos) +
                " step(s) remain after the proof closed");
    return ck.verdict;
  }
  ck.verdict.accepted = true;
  ck.verdict.step = 0;
  ck.verdict.reason = CheckFailureReason::None;
  ck.verdict.detail.clear();
  return ck.verdict;
}

// -------------------------------------------------------- serialization ----

std::string serialize_trace(const SymbolTable& syms, const ProofTrace& trace) {
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx",
                static_cast<unsigned long long>(trace.matrix_fingerprint));
  std::string out = "matrix ";
  out += hex;
  out += '\n';
  for (const ProofStep& step : trace.steps) {
    switch (step.kind) {
      case StepKind::Lemma: out += "lem "; break;
      case StepKind::Reduction: out += "pat "; break;
      case StepKind::Extension: out += "res "; break;
    }
    out += to_string(syms, step.literal);
    if (step.kind == StepKind::Extension) {
      out += ' ';
      out += std::to_string(step.clause_id);
      out += ' ';
      out += std::to_string(step.literal_index);
    }
    out += '\n';
  }
  if (!trace.final_subst.empty()) {
    out += "subst\n";
    for (const auto& [var, value] : trace.final_subst) {
      out += 'V';
      out += std::to_string(var);
      out += " = ";
      out += to_string(syms, value);
      out += '\n';
    }
  }
  return out;
}

namespace {

[[noreturn]] void parse_fail(int line, const std::string& msg) {
  throw std::runtime_error("line " + std::to_string(line) + ": " + msg);
}

// Parser for the spaceless literal/term syntax used in trace lines.
struct LiteralParser {
  std::string_view s;
  std::size_t i = 0;
  SymbolTable& syms;

  char peek() const { return i < s.size() ? s[i] : '\0'; }

  Term parse_term() {
    char c = peek();
    if (c == 'V' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1]))) {
      ++i;
      int id = 0;
      while (std::isdigit(static_cast<unsigned char>(peek())))
        id = id * 10 + (s[i++] - '0');
      return Term::var(id);
    }
    if (!std::islower(static_cast<unsigned char>(c)))
      throw std::runtime_error("expected a term");
    std::string name;
    while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')
      name += s[i++];
    std::vector<Term> args;
    if (peek() == '(') {
      ++i;
      args.push_back(parse_term());
      while (peek() == ',') {
        ++i;
        args.push_back(parse_term());
      }
      if (peek() != ')') throw std::runtime_error("expected ')' in term");
      ++i;
    }
    // Evaluation order matters: take the arity before args is moved from.
    const int arity = static_cast<int>(args.size());
    return Term::app(syms.intern(name, arity), std::move(args));
  }

  Literal parse_literal() {
    Literal out;
    if (peek() == '-') {
      out.negated = true;
      ++i;
    }
    if (peek() == '#') {
      ++i;
      out.predicate = SymbolTable::kMarker;
      return out;
    }
    Term lhs = parse_term();
    if (peek() == '=' || (peek() == '!' && i + 1 < s.size() && s[i + 1] == '=')) {
      if (out.negated)
        throw std::runtime_error("negated equality must be written with !=");
      if (peek() == '!') {
        out.negated = true;
        i += 2;
      } else {
        ++i;
      }
      Term rhs = parse_term();
      out.predicate = SymbolTable::kEq;
      out.args.push_back(std::move(lhs));
      out.args.push_back(std::move(rhs));
      return out;
    }
    if (lhs.is_var()) throw std::runtime_error("a variable is not a literal");
    out.predicate = lhs.symbol();
    out.args = lhs.args();
    return out;
  }

  void expect_end() const {
    if (i != s.size()) throw std::runtime_error("trailing characters");
  }
};

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> parts;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && line[i] == ' ') ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ') ++i;
    if (i > start) parts.push_back(line.substr(start, i - start));
  }
  return parts;
}

int parse_int(std::string_view tok) {
  std::size_t used = 0;
  int value = std::stoi(std::string(tok), &used);
  if (used != tok.size()) throw std::runtime_error("malformed integer");
  return value;
}

}  // namespace

ProofTrace parse_trace(SymbolTable& syms, std::string_view text) {
  ProofTrace trace;
  bool saw_matrix = false;
  bool in_subst = false;
  int lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++lineno;
    if (line.empty() && start > text.size()) break;  // trailing newline
    try {
      if (line.empty()) continue;
      if (!saw_matrix) {
        auto parts = split_ws(line);
        if (parts.size() != 2 || parts[0] != "matrix")
          parse_fail(lineno, "expected 'matrix <fingerprint>'");
        std::string fp(parts[1]);
        if (fp.empty() || fp.size() > 16 ||
            fp.find_first_not_of("0123456789abcdef") != std::string::npos)
          throw std::runtime_error("malformed fingerprint");
        trace.matrix_fingerprint = std::stoull(fp, nullptr, 16);
        saw_matrix = true;
        continue;
      }
      if (in_subst) {
        // V<id> = <term>
        auto eq = line.find(" = ");
        if (line.empty() || line[0] != 'V' || eq == std::string_view::npos)
          throw std::runtime_error("expected 'V<id> = <term>'");
        int var = parse_int(line.substr(1, eq - 1));
        LiteralParser tp{line.substr(eq + 3), 0, syms};
        Term value = tp.parse_term();
        tp.expect_end();
        trace.final_subst.emplace_back(var, std::move(value));
        continue;
      }
      auto parts = split_ws(line);
      if (parts.size() == 1 && parts[0] == "subst") {
        in_subst = true;
        continue;
      }
      if (parts.empty()) continue;
      ProofStep step;
      if (parts[0] == "lem" || parts[0] == "pat") {
        if (parts.size() != 2)
          throw std::runtime_error("expected one literal");
        step.kind = parts[0] == "lem" ? StepKind::Lemma : StepKind::Reduction;
        LiteralParser lp{parts[1], 0, syms};
        step.literal = lp.parse_literal();
        lp.expect_end();
      } else if (parts[0] == "res") {
        if (parts.size() != 4)
          throw std::runtime_error("expected literal, clause id, literal index");
        step.kind = StepKind::Extension;
        LiteralParser lp{parts[1], 0, syms};
        step.literal = lp.parse_literal();
        lp.expect_end();
        step.clause_id = parse_int(parts[2]);
        step.literal_index = parse_int(parts[3]);
      } else {
        throw std::runtime_error("unknown record '" + std::string(parts[0]) + "'");
      }
      trace.steps.push_back(std::move(step));
    } catch (const std::exception& e) {
      // std::stoi and friends throw logic_error subclasses; fold everything
      // into one line-numbered runtime_error.
      std::string what = e.what();
      if (what.rfind("line ", 0) == 0) throw;
      parse_fail(lineno, what);
    }
  }
  if (!saw_matrix) parse_fail(lineno, "missing 'matrix' header");
  return trace;
}

}  // namespace contab
