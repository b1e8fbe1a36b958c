#include "contab/fol.hpp"

#include <algorithm>
#include <stdexcept>

namespace contab {

SymbolTable::SymbolTable() {
  intern("=", 2);
  intern("#", 0);
}

int SymbolTable::intern(std::string_view name, int arity) {
  auto it = ids_.find(std::string(name));
  if (it != ids_.end()) {
    if (entries_[it->second].arity != arity)
      throw std::runtime_error("symbol '" + std::string(name) + "' used with arity " +
                               std::to_string(arity) + " and " +
                               std::to_string(entries_[it->second].arity));
    return it->second;
  }
  int id = static_cast<int>(entries_.size());
  entries_.push_back({std::string(name), arity});
  ids_.emplace(std::string(name), id);
  return id;
}

std::optional<int> SymbolTable::lookup(std::string_view name) const {
  auto it = ids_.find(std::string(name));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

bool Term::operator==(const Term& o) const {
  if (var_ != o.var_ || head_ != o.head_) return false;
  return args_ == o.args_;
}

std::vector<std::pair<int, Term>> Trail::sorted_bindings() const {
  std::vector<std::pair<int, Term>> out;
  out.reserve(map_.size());
  for (const auto& kv : map_) out.emplace_back(kv.first, kv.second);
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

const Term& deref(const Trail& trail, const Term& t) {
  const Term* cur = &t;
  while (cur->is_var()) {
    const Term* b = trail.binding(cur->var_id());
    if (!b) break;
    cur = b;
  }
  return *cur;
}

namespace {

bool occurs(const Trail& trail, int var, const Term& t) {
  const Term& d = deref(trail, t);
  if (d.is_var()) return d.var_id() == var;
  for (const Term& a : d.args())
    if (occurs(trail, var, a)) return true;
  return false;
}

bool unify_rec(Trail& trail, const Term& a0, const Term& b0) {
  const Term& a = deref(trail, a0);
  const Term& b = deref(trail, b0);
  if (a.is_var()) {
    if (b.is_var() && b.var_id() == a.var_id()) return true;
    if (occurs(trail, a.var_id(), b)) return false;
    trail.bind(a.var_id(), b);
    return true;
  }
  if (b.is_var()) {
    if (occurs(trail, b.var_id(), a)) return false;
    trail.bind(b.var_id(), a);
    return true;
  }
  if (a.symbol() != b.symbol() || a.args().size() != b.args().size()) return false;
  for (std::size_t i = 0; i < a.args().size(); ++i)
    if (!unify_rec(trail, a.args()[i], b.args()[i])) return false;
  return true;
}

}  // namespace

bool unify(Trail& trail, const Term& a, const Term& b) {
  Trail::Mark m = trail.mark();
  if (unify_rec(trail, a, b)) return true;
  trail.undo(m);
  return false;
}

bool unify_terms(Trail& trail, std::span<const Term> as, std::span<const Term> bs) {
  if (as.size() != bs.size()) return false;
  Trail::Mark m = trail.mark();
  for (std::size_t i = 0; i < as.size(); ++i)
    if (!unify_rec(trail, as[i], bs[i])) {
      trail.undo(m);
      return false;
    }
  return true;
}

bool unify_literals(Trail& trail, const Literal& a, const Literal& b) {
  if (a.negated != b.negated || a.predicate != b.predicate) return false;
  return unify_terms(trail, a.args, b.args);
}

bool substeq(const Trail& trail, const Term& a0, const Term& b0) {
  const Term& a = deref(trail, a0);
  const Term& b = deref(trail, b0);
  if (a.is_var() || b.is_var())
    return a.is_var() && b.is_var() && a.var_id() == b.var_id();
  if (a.symbol() != b.symbol() || a.args().size() != b.args().size()) return false;
  for (std::size_t i = 0; i < a.args().size(); ++i)
    if (!substeq(trail, a.args()[i], b.args()[i])) return false;
  return true;
}

bool substeq(const Trail& trail, const Literal& a, const Literal& b) {
  if (a.negated != b.negated || a.predicate != b.predicate ||
      a.args.size() != b.args.size())
    return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!substeq(trail, a.args[i], b.args[i])) return false;
  return true;
}

Term rename(const Term& t, int offset) {
  if (t.is_var()) return Term::var(t.var_id() + offset);
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(rename(a, offset));
  return Term::app(t.symbol(), std::move(args));
}

Literal rename(const Literal& l, int offset) {
  Literal out;
  out.negated = l.negated;
  out.predicate = l.predicate;
  out.args.reserve(l.args.size());
  for (const Term& a : l.args) out.args.push_back(rename(a, offset));
  return out;
}

std::vector<Literal> rename_clause(std::span<const Literal> clause, int offset) {
  std::vector<Literal> out;
  out.reserve(clause.size());
  for (const Literal& l : clause) out.push_back(rename(l, offset));
  return out;
}

Term apply_full(const Trail& trail, const Term& t) {
  const Term& d = deref(trail, t);
  if (d.is_var()) return d;
  std::vector<Term> args;
  args.reserve(d.args().size());
  for (const Term& a : d.args()) args.push_back(apply_full(trail, a));
  return Term::app(d.symbol(), std::move(args));
}

Literal apply_full(const Trail& trail, const Literal& l) {
  Literal out;
  out.negated = l.negated;
  out.predicate = l.predicate;
  out.args.reserve(l.args.size());
  for (const Term& a : l.args) out.args.push_back(apply_full(trail, a));
  return out;
}

int max_var(const Term& t) {
  if (t.is_var()) return t.var_id();
  int m = -1;
  for (const Term& a : t.args()) m = std::max(m, max_var(a));
  return m;
}

int max_var(const Literal& l) {
  int m = -1;
  for (const Term& a : l.args) m = std::max(m, max_var(a));
  return m;
}

int max_var(std::span<const Literal> clause) {
  int m = -1;
  for (const Literal& l : clause) m = std::max(m, max_var(l));
  return m;
}

namespace {

void print_term(std::string& out, const SymbolTable& syms, const Term& t) {
  if (t.is_var()) {
    out += 'V';
    out += std::to_string(t.var_id());
    return;
  }
  out += syms.name(t.symbol());
  if (!t.args().empty()) {
    out += '(';
    for (std::size_t i = 0; i < t.args().size(); ++i) {
      if (i) out += ',';
      print_term(out, syms, t.args()[i]);
    }
    out += ')';
  }
}

}  // namespace

std::string to_string(const SymbolTable& syms, const Term& t) {
  std::string out;
  print_term(out, syms, t);
  return out;
}

std::string to_string(const SymbolTable& syms, const Literal& l) {
  std::string out;
  if (l.predicate == SymbolTable::kEq) {
    print_term(out, syms, l.args[0]);
    out += l.negated ? "!=" : "=";
    print_term(out, syms, l.args[1]);
    return out;
  }
  if (l.negated) out += '-';
  out += syms.name(l.predicate);
  if (!l.args.empty()) {
    out += '(';
    for (std::size_t i = 0; i < l.args.size(); ++i) {
      if (i) out += ',';
      print_term(out, syms, l.args[i]);
    }
    out += ')';
  }
  return out;
}

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace contab
