// First-order terms, literals and the binding trail.

#pragma once

#include <cassert>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace contab {

// Interned function/predicate symbols. One table per problem; arity is fixed
// the first time a name is seen and a later mismatch is a signature error.
// "=" and the start marker "#" are always present so printers and the
// clausifier can refer to them by constant id.
class SymbolTable {
public:
  static constexpr int kEq = 0;      // infix equality, arity 2
  static constexpr int kMarker = 1;  // start-clause marker, arity 0

  SymbolTable();
  int intern(std::string_view name, int arity);
  std::optional<int> lookup(std::string_view name) const;
  bool has(std::string_view name) const { return lookup(name).has_value(); }
  const std::string& name(int id) const { return entries_[id].name; }
  int arity(int id) const { return entries_[id].arity; }
  int size() const { return static_cast<int>(entries_.size()); }

private:
  struct Entry {
    std::string name;
    int arity;
  };
  std::vector<Entry> entries_;
  std::unordered_map<std::string, int> ids_;
};

// A term is either a variable (non-negative integer id) or a symbol applied
// to arguments; constants are 0-ary applications. Plain value semantics.
class Term {
public:
  static Term var(int id) {
    assert(id >= 0);
    return Term(true, id);
  }
  static Term app(int symbol, std::vector<Term> args = {}) {
    Term t(false, symbol);
    t.args_ = std::move(args);
    return t;
  }

  bool is_var() const { return var_; }
  int var_id() const {
    assert(var_);
    return head_;
  }
  int symbol() const {
    assert(!var_);
    return head_;
  }
  const std::vector<Term>& args() const {
    assert(!var_);
    return args_;
  }

  bool operator==(const Term& o) const;
  bool operator!=(const Term& o) const { return !(*this == o); }

private:
  Term(bool v, int h) : var_(v), head_(h) {}
  bool var_;
  int head_;
  std::vector<Term> args_;
};

struct Literal {
  bool negated = false;
  int predicate = 0;
  std::vector<Term> args;

  Literal complement() const {
    Literal l = *this;
    l.negated = !l.negated;
    return l;
  }
  bool operator==(const Literal& o) const {
    return negated == o.negated && predicate == o.predicate && args == o.args;
  }
  bool operator!=(const Literal& o) const { return !(*this == o); }
};

// Ordered binding store. Each live variable is bound at most once; undo(mark)
// restores the exact state at mark() time. Bound terms are stored by value so
// bindings stay valid after the structures they were unified against are gone.
class Trail {
public:
  using Mark = std::size_t;

  Mark mark() const { return log_.size(); }
  std::size_t size() const { return log_.size(); }

  const Term* binding(int var) const {
    auto it = map_.find(var);
    return it == map_.end() ? nullptr : &it->second;
  }

  void bind(int var, Term value) {
    assert(map_.find(var) == map_.end());
    map_.emplace(var, std::move(value));
    log_.push_back(var);
  }

  void undo(Mark m) {
    assert(m <= log_.size());
    while (log_.size() > m) {
      map_.erase(log_.back());
      log_.pop_back();
    }
  }

  // Live bindings ordered by variable id (deterministic emission).
  std::vector<std::pair<int, Term>> sorted_bindings() const;

private:
  std::vector<int> log_;
  std::unordered_map<int, Term> map_;
};

// Shallow dereference: chase variable bindings until an unbound variable or a
// compound head is exposed. Arguments are left untouched.
const Term& deref(const Trail& trail, const Term& t);

// Sound unification with occurs check; produces a most general unifier. The
// trail is extended in place on success and restored exactly on failure.
bool unify(Trail& trail, const Term& a, const Term& b);
bool unify_terms(Trail& trail, std::span<const Term> as, std::span<const Term> bs);

// Succeeds iff predicate and sign match and the argument vectors unify.
bool unify_literals(Trail& trail, const Literal& a, const Literal& b);

// Equality of the two sides under the current bindings; never binds anything.
bool substeq(const Trail& trail, const Term& a, const Term& b);
bool substeq(const Trail& trail, const Literal& a, const Literal& b);

// Copies with every variable id shifted by offset (clause-copy renaming).
Term rename(const Term& t, int offset);
Literal rename(const Literal& l, int offset);
std::vector<Literal> rename_clause(std::span<const Literal> clause, int offset);

// Full application of the current bindings; idempotent on its own output.
Term apply_full(const Trail& trail, const Term& t);
Literal apply_full(const Trail& trail, const Literal& l);

// Largest variable id occurring anywhere, -1 if ground.
int max_var(const Term& t);
int max_var(const Literal& l);
int max_var(std::span<const Literal> clause);

inline bool is_ground(const Term& t) { return max_var(t) < 0; }
inline bool is_ground(const Literal& l) { return max_var(l) < 0; }
inline bool is_ground(std::span<const Literal> c) { return max_var(c) < 0; }

// Printing. Variables render as V<id>; equality renders infix (a=b, a!=b);
// the marker renders as # / -#; any other negated literal gets a "-" prefix.
std::string to_string(const SymbolTable& syms, const Term& t);
std::string to_string(const SymbolTable& syms, const Literal& l);

std::uint64_t fnv1a64(std::string_view data);

}  // namespace contab
