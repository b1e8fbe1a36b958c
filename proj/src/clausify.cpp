#include "contab/clausify.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <set>
#include <stdexcept>

namespace contab {

// ------------------------------------------------------- Matrix methods ----

const std::vector<ContrapositiveEntry>& Matrix::bucket(int predicate,
                                                       bool negated) const {
  static const std::vector<ContrapositiveEntry> empty;
  auto it = index_.find(key(predicate, negated));
  return it == index_.end() ? empty : it->second;
}

std::string Matrix::dump() const {
  std::string out;
  for (const Clause& c : clauses) {
    out += std::to_string(c.id);
    out += ':';
    for (std::size_t i = 0; i < c.literals.size(); ++i) {
      out += i ? " | " : " ";
      out += to_string(symbols, c.literals[i]);
    }
    out += '\n';
  }
  return out;
}

std::uint64_t Matrix::fingerprint() const { return fnv1a64(dump()); }

void Matrix::index_clauses() {
  index_.clear();
  for (const Clause& c : clauses) {
    for (std::size_t i = 0; i < c.literals.size(); ++i) {
      ContrapositiveEntry e;
      e.clause_id = c.id;
      e.literal_index = static_cast<int>(i);
      e.literal = c.literals[i];
      e.rest.reserve(c.literals.size() - 1);
      for (std::size_t j = 0; j < c.literals.size(); ++j)
        if (j != i) e.rest.push_back(c.literals[j]);
      e.ground = c.ground();
      e.var_count = c.var_count;
      index_[key(e.literal.predicate, e.literal.negated)].push_back(std::move(e));
    }
  }
}

// ------------------------------------------------------ clausifier guts ----

namespace {

// Negation normal form tree.  And/Or are n-ary; an empty And is "true" and an
// empty Or is "false", which makes $true/$false fall out of the ordinary
// distribution rules instead of needing a separate simplification pass.
struct NnfNode {
  enum class K { Lit, And, Or };
  K k = K::And;
  Literal lit;
  std::vector<NnfNode> kids;
};

NnfNode make_lit(Literal l) {
  NnfNode n;
  n.k = NnfNode::K::Lit;
  n.lit = std::move(l);
  return n;
}

NnfNode make_nary(NnfNode::K k, std::vector<NnfNode> kids) {
  std::vector<NnfNode> flat;
  for (NnfNode& kid : kids) {
    if (kid.k == k)
      for (NnfNode& g : kid.kids) flat.push_back(std::move(g));
    else
      flat.push_back(std::move(kid));
  }
  if (flat.size() == 1) return std::move(flat[0]);
  NnfNode n;
  n.k = k;
  n.kids = std::move(flat);
  return n;
}

NnfNode make_and(std::vector<NnfNode> kids) {
  return make_nary(NnfNode::K::And, std::move(kids));
}

NnfNode make_or(std::vector<NnfNode> kids) {
  return make_nary(NnfNode::K::Or, std::move(kids));
}

struct ClausifyCtx {
  SymbolTable& syms;
  const std::set<std::string>& input_names;  // for sk/df collision avoidance
  ClausifyMode mode = ClausifyMode::Def;
  int next_var = 0;
  int next_sk = 0;
  int next_df = 0;

  std::string fresh_name(const char* prefix, int& counter) {
    std::string name;
    do {
      name = prefix + std::to_string(counter++);
    } while (input_names.count(name));
    return name;
  }
};

using Env = std::vector<std::pair<std::string, Term>>;

const Term& env_lookup(const Env& env, const std::string& name) {
  for (auto it = env.rbegin(); it != env.rend(); ++it)
    if (it->first == name) return it->second;
  throw std::runtime_error("unbound variable '" + name + "' in clausifier");
}

Term convert_term(const FofTerm& t, const Env& env, ClausifyCtx& ctx) {
  if (t.is_variable) return env_lookup(env, t.name);
  std::vector<Term> args;
  args.reserve(t.args.size());
  for (const FofTerm& a : t.args) args.push_back(convert_term(a, env, ctx));
  return Term::app(ctx.syms.intern(t.name, static_cast<int>(t.args.size())),
                   std::move(args));
}

// `positive` is the polarity of this occurrence; `univ` lists the universal
// variables in scope, which become the arguments of new Skolem terms.
NnfNode nnf(const FormulaRef& f, bool positive, Env& env, std::vector<Term>& univ,
            ClausifyCtx& ctx) {
  switch (f->kind) {
    case Formula::Kind::Atom: {
      if (f->predicate == "$true")
        return positive ? make_and({}) : make_or({});
      if (f->predicate == "$false")
        return positive ? make_or({}) : make_and({});
      Literal l;
      l.negated = !positive;
      l.predicate = ctx.syms.intern(f->predicate, static_cast<int>(f->args.size()));
      l.args.reserve(f->args.size());
      for (const FofTerm& a : f->args) l.args.push_back(convert_term(a, env, ctx));
      return make_lit(std::move(l));
    }
    case Formula::Kind::Not:
      return nnf(f->left, !positive, env, univ, ctx);
    case Formula::Kind::And: {
      std::vector<NnfNode> kids;
      kids.push_back(nnf(f->left, positive, env, univ, ctx));
      kids.push_back(nnf(f->right, positive, env, univ, ctx));
      return positive ? make_and(std::move(kids)) : make_or(std::move(kids));
    }
    case Formula::Kind::Or: {
      std::vector<NnfNode> kids;
      kids.push_back(nnf(f->left, positive, env, univ, ctx));
      kids.push_back(nnf(f->right, positive, env, univ, ctx));
      return positive ? make_or(std::move(kids)) : make_and(std::move(kids));
    }
    case Formula::Kind::Implies: {
      std::vector<NnfNode> kids;
      kids.push_back(nnf(f->left, !positive, env, univ, ctx));
      kids.push_back(nnf(f->right, positive, env, univ, ctx));
      return positive ? make_or(std::move(kids)) : make_and(std::move(kids));
    }
    case Formula::Kind::Iff: {
      // A <=> B becomes (~A | B) & (~B | A); under negation it becomes
      // (A | B) & (~A | ~B).  Each operand is translated once per polarity
      // it occurs in.
      NnfNode first, second;
      if (positive) {
        first = make_or([&] {
          std::vector<NnfNode> k;
          k.push_back(nnf(f->left, false, env, univ, ctx));
          k.push_back(nnf(f->right, true, env, univ, ctx));
          return k;
        }());
        second = make_or([&] {
          std::vector<NnfNode> k;
          k.push_back(nnf(f->right, false, env, univ, ctx));
          k.push_back(nnf(f->left, true, env, univ, ctx));
          return k;
        }());
      } else {
        first = make_or([&] {
          std::vector<NnfNode> k;
          k.push_back(nnf(f->left, true, env, univ, ctx));
          k.push_back(nnf(f->right, true, env, univ, ctx));
          return k;
        }());
        second = make_or([&] {
          std::vector<NnfNode> k;
          k.push_back(nnf(f->left, false, env, univ, ctx));
          k.push_back(nnf(f->right, false, env, univ, ctx));
          return k;
        }());
      }
      std::vector<NnfNode> kids;
      kids.push_back(std::move(first));
      kids.push_back(std::move(second));
      return make_and(std::move(kids));
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      bool universal = (f->kind == Formula::Kind::Forall) == positive;
      std::size_t env_base = env.size();
      std::size_t univ_base = univ.size();
      for (const std::string& name : f->bound) {
        if (universal) {
          Term v = Term::var(ctx.next_var++);
          env.emplace_back(name, v);
          univ.push_back(std::move(v));
        } else {
          int sym = ctx.syms.intern(ctx.fresh_name("sk", ctx.next_sk),
                                    static_cast<int>(univ.size()));
          env.emplace_back(name, Term::app(sym, univ));
        }
      }
      NnfNode body = nnf(f->body, positive, env, univ, ctx);
      env.erase(env.begin() + static_cast<std::ptrdiff_t>(env_base), env.end());
      univ.erase(univ.begin() + static_cast<std::ptrdiff_t>(univ_base), univ.end());
      return body;
    }
  }
  throw std::logic_error("nnf: bad formula kind");
}

// Saturating clause-count arithmetic; counts only steer the naming decision,
// so capping them is harmless.
constexpr unsigned long long kCountCap = 1ull << 60;

unsigned long long add_sat(unsigned long long a, unsigned long long b) {
  return a >= kCountCap - b ? kCountCap : a + b;
}

unsigned long long mul_sat(unsigned long long a, unsigned long long b) {
  if (a == 0 || b == 0) return 0;
  return a > kCountCap / b ? kCountCap : a * b;
}

// Number of clauses plain distribution would produce for this subtree.
unsigned long long clause_count(const NnfNode& n) {
  switch (n.k) {
    case NnfNode::K::Lit:
      return 1;
    case NnfNode::K::And: {
      unsigned long long total = 0;
      for (const NnfNode& kid : n.kids) total = add_sat(total, clause_count(kid));
      return total;
    }
    case NnfNode::K::Or: {
      unsigned long long total = 1;
      for (const NnfNode& kid : n.kids) total = mul_sat(total, clause_count(kid));
      return total;
    }
  }
  return 0;
}

void collect_term_vars(const Term& t, std::vector<int>& out) {
  if (t.is_var()) {
    if (std::find(out.begin(), out.end(), t.var_id()) == out.end())
      out.push_back(t.var_id());
    return;
  }
  for (const Term& a : t.args()) collect_term_vars(a, out);
}

void collect_node_vars(const NnfNode& n, std::vector<int>& out) {
  if (n.k == NnfNode::K::Lit) {
    for (const Term& a : n.lit.args) collect_term_vars(a, out);
    return;
  }
  for (const NnfNode& kid : n.kids) collect_node_vars(kid, out);
}

using RawClauses = std::vector<std::vector<Literal>>;
using Emitted = std::vector<std::pair<std::vector<Literal>, ClauseOrigin>>;

constexpr std::size_t kClauseLimit = 1'000'000;

RawClauses to_cnf(const NnfNode& node, ClausifyCtx& ctx, Emitted& defs);

// Disjunction kids, after any definitional naming, are multiplied out.
RawClauses distribute(const std::vector<NnfNode>& kids, ClausifyCtx& ctx,
                      Emitted& defs) {
  RawClauses acc;
  acc.push_back({});
  for (const NnfNode& kid : kids) {
    RawClauses kid_cnf = to_cnf(kid, ctx, defs);
    RawClauses next;
    if (acc.size() * kid_cnf.size() > kClauseLimit)
      throw std::runtime_error("clausification exceeds the clause limit");
    next.reserve(acc.size() * kid_cnf.size());
    for (const std::vector<Literal>& a : acc) {
      for (const std::vector<Literal>& c : kid_cnf) {
        std::vector<Literal> merged = a;
        merged.insert(merged.end(), c.begin(), c.end());
        next.push_back(std::move(merged));
      }
    }
    acc = std::move(next);
  }
  return acc;
}

RawClauses to_cnf(const NnfNode& node, ClausifyCtx& ctx, Emitted& defs) {
  switch (node.k) {
    case NnfNode::K::Lit:
      return {{node.lit}};
    case NnfNode::K::And: {
      RawClauses out;
      for (const NnfNode& kid : node.kids) {
        RawClauses sub = to_cnf(kid, ctx, defs);
        if (out.size() + sub.size() > kClauseLimit)
          throw std::runtime_error("clausification exceeds the clause limit");
        for (std::vector<Literal>& c : sub) out.push_back(std::move(c));
      }
      return out;
    }
    case NnfNode::K::Or: {
      std::vector<NnfNode> kids = node.kids;
      if (ctx.mode == ClausifyMode::Def && kids.size() >= 2) {
        // Repeatedly name the widest disjunct while doing so lowers the
        // total: naming disjunct i trades a factor of count(i) in the
        // product for count(i) definition clauses.
        for (;;) {
          std::vector<unsigned long long> counts;
          counts.reserve(kids.size());
          for (const NnfNode& kid : kids) counts.push_back(clause_count(kid));
          std::size_t widest = 0;
          for (std::size_t i = 1; i < kids.size(); ++i)
            if (counts[i] > counts[widest]) widest = i;
          if (counts[widest] < 2) break;
          unsigned long long product = 1;
          for (unsigned long long c : counts) product = mul_sat(product, c);
          unsigned long long rest = 1;
          for (std::size_t i = 0; i < counts.size(); ++i)
            if (i != widest) rest = mul_sat(rest, counts[i]);
          if (product <= add_sat(rest, counts[widest])) break;

          std::vector<int> free_vars;
          collect_node_vars(kids[widest], free_vars);
          int sym = ctx.syms.intern(ctx.fresh_name("df", ctx.next_df),
                                    static_cast<int>(free_vars.size()));
          Literal def_lit;
          def_lit.predicate = sym;
          for (int v : free_vars) def_lit.args.push_back(Term::var(v));

          RawClauses body = to_cnf(kids[widest], ctx, defs);
          for (std::vector<Literal>& c : body) {
            std::vector<Literal> def_clause;
            def_clause.reserve(c.size() + 1);
            def_clause.push_back(def_lit.complement());
            def_clause.insert(def_clause.end(), c.begin(), c.end());
            defs.emplace_back(std::move(def_clause), ClauseOrigin::Definition);
          }
          kids[widest] = make_lit(def_lit);
        }
      }
      return distribute(kids, ctx, defs);
    }
  }
  throw std::logic_error("to_cnf: bad node kind");
}

void collect_input_names(const FormulaRef& f, std::set<std::string>& out) {
  if (!f) return;
  if (f->kind == Formula::Kind::Atom && f->predicate != "$true" &&
      f->predicate != "$false")
    out.insert(f->predicate);
  std::function<void(const FofTerm&)> walk = [&](const FofTerm& t) {
    if (!t.is_variable) out.insert(t.name);
    for (const FofTerm& a : t.args) walk(a);
  };
  for (const FofTerm& a : f->args) walk(a);
  collect_input_names(f->left, out);
  collect_input_names(f->right, out);
  collect_input_names(f->body, out);
}

Literal make_eq(Term a, Term b, bool negated) {
  Literal l;
  l.negated = negated;
  l.predicate = SymbolTable::kEq;
  l.args.push_back(std::move(a));
  l.args.push_back(std::move(b));
  return l;
}

// Reflexivity, symmetry, transitivity and one substitutivity clause per
// function and per predicate of nonzero arity.
void append_equality_axioms(SymbolTable& syms, Emitted& emitted) {
  std::set<int> fns, preds;
  std::function<void(const Term&)> scan_term = [&](const Term& t) {
    if (t.is_var()) return;
    fns.insert(t.symbol());
    for (const Term& a : t.args()) scan_term(a);
  };
  for (const auto& [lits, origin] : emitted) {
    for (const Literal& l : lits) {
      if (l.predicate != SymbolTable::kEq && l.predicate != SymbolTable::kMarker)
        preds.insert(l.predicate);
      for (const Term& a : l.args) scan_term(a);
    }
  }

  auto emit = [&](std::vector<Literal> lits) {
    emitted.emplace_back(std::move(lits), ClauseOrigin::EqualityAxiom);
  };
  emit({make_eq(Term::var(0), Term::var(0), false)});
  emit({make_eq(Term::var(0), Term::var(1), true),
        make_eq(Term::var(1), Term::var(0), false)});
  emit({make_eq(Term::var(0), Term::var(1), true),
        make_eq(Term::var(1), Term::var(2), true),
        make_eq(Term::var(0), Term::var(2), false)});
  for (int f : fns) {
    int n = syms.arity(f);
    if (n == 0) continue;
    std::vector<Literal> lits;
    std::vector<Term> xs, ys;
    for (int i = 0; i < n; ++i) {
      xs.push_back(Term::var(i));
      ys.push_back(Term::var(n + i));
      lits.push_back(make_eq(Term::var(i), Term::var(n + i), true));
    }
    lits.push_back(make_eq(Term::app(f, xs), Term::app(f, ys), false));
    emit(std::move(lits));
  }
  for (int p : preds) {
    int n = syms.arity(p);
    if (n == 0) continue;
    std::vector<Literal> lits;
    std::vector<Term> xs, ys;
    for (int i = 0; i < n; ++i) {
      xs.push_back(Term::var(i));
      ys.push_back(Term::var(n + i));
      lits.push_back(make_eq(Term::var(i), Term::var(n + i), true));
    }
    Literal neg, pos;
    neg.negated = true;
    neg.predicate = p;
    neg.args = xs;
    pos.predicate = p;
    pos.args = ys;
    lits.push_back(std::move(neg));
    lits.push_back(std::move(pos));
    emit(std::move(lits));
  }
}

int renumber_clause(std::vector<Literal>& lits) {
  std::unordered_map<int, int> map;
  std::function<Term(const Term&)> walk = [&](const Term& t) -> Term {
    if (t.is_var()) {
      auto [it, inserted] = map.emplace(t.var_id(), static_cast<int>(map.size()));
      return Term::var(it->second);
    }
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (const Term& a : t.args()) args.push_back(walk(a));
    return Term::app(t.symbol(), std::move(args));
  };
  for (Literal& l : lits)
    for (Term& a : l.args) a = walk(a);
  return static_cast<int>(map.size());
}

}  // namespace

Matrix build_matrix(const std::vector<AnnotatedFormula>& problem,
                    const MatrixOptions& options) {
  Matrix m;

  // Conjecture formulas are conjoined, negated once, and slotted in at the
  // first conjecture's position; negated_conjecture formulas are taken as
  // they are.  Everything else is axiom-side.
  std::vector<FormulaRef> conjectures;
  for (const AnnotatedFormula& af : problem)
    if (af.role == Role::Conjecture) conjectures.push_back(af.formula);
  FormulaRef combined;
  if (!conjectures.empty()) {
    combined = conjectures.back();
    for (std::size_t i = conjectures.size() - 1; i-- > 0;)
      combined = Formula::binary(Formula::Kind::And, conjectures[i], combined);
    combined = Formula::negate(combined);
  }

  std::vector<std::pair<FormulaRef, ClauseOrigin>> ordered;
  bool conjecture_placed = false;
  bool has_conjecture_side = false;
  for (const AnnotatedFormula& af : problem) {
    if (af.role == Role::Conjecture) {
      if (!conjecture_placed) {
        ordered.emplace_back(combined, ClauseOrigin::ConjectureSide);
        conjecture_placed = true;
      }
      has_conjecture_side = true;
    } else if (af.role == Role::NegatedConjecture) {
      ordered.emplace_back(af.formula, ClauseOrigin::ConjectureSide);
      has_conjecture_side = true;
    } else {
      ordered.emplace_back(af.formula, ClauseOrigin::AxiomSide);
    }
  }

  std::set<std::string> input_names;
  for (const AnnotatedFormula& af : problem) collect_input_names(af.formula, input_names);

  ClausifyCtx ctx{m.symbols, input_names, options.mode};
  Emitted emitted;
  for (const auto& [formula, origin] : ordered) {
    FormulaRef f = formula;
    std::vector<std::string> free = free_variables(f);
    if (!free.empty()) f = Formula::quantify(Formula::Kind::Forall, free, f);
    Env env;
    std::vector<Term> univ;
    NnfNode n = nnf(f, true, env, univ, ctx);
    Emitted defs;
    RawClauses cnf = to_cnf(n, ctx, defs);
    for (std::vector<Literal>& c : cnf) emitted.emplace_back(std::move(c), origin);
    for (auto& d : defs) emitted.push_back(std::move(d));
  }

  bool has_eq = false;
  for (const auto& [lits, origin] : emitted)
    for (const Literal& l : lits)
      if (l.predicate == SymbolTable::kEq) has_eq = true;
  if (has_eq) append_equality_axioms(m.symbols, emitted);

  m.clauses.reserve(emitted.size());
  for (auto& [lits, origin] : emitted) {
    Clause c;
    c.id = static_cast<int>(m.clauses.size());
    c.var_count = renumber_clause(lits);
    c.literals = std::move(lits);
    c.origin = origin;
    m.clauses.push_back(std::move(c));
  }

  StartMode mode = options.start.value_or(has_conjecture_side ? StartMode::Conj
                                                              : StartMode::Pos);
  std::vector<int> pos_ids, conj_ids, all_ids;
  for (const Clause& c : m.clauses) {
    all_ids.push_back(c.id);
    if (std::none_of(c.literals.begin(), c.literals.end(),
                     [](const Literal& l) { return l.negated; }))
      pos_ids.push_back(c.id);
    if (c.origin == ClauseOrigin::ConjectureSide) conj_ids.push_back(c.id);
  }
  std::vector<int>& start = mode == StartMode::Pos
                                ? (!pos_ids.empty() ? pos_ids
                                   : !conj_ids.empty() ? conj_ids
                                                       : all_ids)
                                : (!conj_ids.empty() ? conj_ids
                                   : !pos_ids.empty() ? pos_ids
                                                      : all_ids);
  Literal marker;
  marker.predicate = SymbolTable::kMarker;
  for (int id : start) m.clauses[id].literals.push_back(marker);
  m.start_clauses = start;

  m.start_goal.negated = true;
  m.start_goal.predicate = SymbolTable::kMarker;
  m.index_clauses();
  return m;
}

}  // namespace contab
