#include <doctest.h>

#include "support.hpp"

using namespace contab;
using testkit::C;
using testkit::F;
using testkit::L;
using testkit::V;

TEST_CASE("literal complement is an involution") {
  SymbolTable syms;
  Literal l = L(syms, "p", {C(syms, "a")});
  CHECK(l.complement().negated);
  CHECK(l.complement().complement() == l);
  Literal m;
  m.predicate = SymbolTable::kMarker;
  CHECK(m.complement().predicate == SymbolTable::kMarker);
  CHECK(m.complement().negated);
}

TEST_CASE("symbol table rejects arity clashes and reserves = and #") {
  SymbolTable syms;
  CHECK(syms.intern("=", 2) == SymbolTable::kEq);
  CHECK(syms.intern("#", 0) == SymbolTable::kMarker);
  int p = syms.intern("p", 1);
  CHECK(syms.intern("p", 1) == p);
  CHECK_THROWS_AS((void)syms.intern("p", 2), std::runtime_error);
}

TEST_CASE("deref chases head bindings shallowly") {
  SymbolTable syms;
  Trail t;
  t.bind(0, F(syms, "f", {C(syms, "a")}));
  CHECK(deref(t, V(0)) == F(syms, "f", {C(syms, "a")}));

  Trail empty;
  Term g = F(syms, "g", {V(0)});
  CHECK(deref(empty, g) == g);

  Trail chain;
  chain.bind(0, V(1));
  chain.bind(1, C(syms, "a"));
  CHECK(deref(chain, V(0)) == C(syms, "a"));
}

TEST_CASE("unify binds, clashes, and enforces the occurs check") {
  SymbolTable syms;
  Term fa = F(syms, "f", {C(syms, "a")});

  Trail t1;
  REQUIRE(unify(t1, V(0), fa));
  CHECK(substeq(t1, V(0), fa));

  Trail t2;
  CHECK_FALSE(unify(t2, V(0), F(syms, "f", {V(0)})));
  CHECK(t2.size() == 0);

  Trail t3;
  Term lhs = F(syms, "h", {V(0), C(syms, "b")});
  Term rhs = F(syms, "h", {C(syms, "a"), V(1)});
  REQUIRE(unify(t3, lhs, rhs));
  CHECK(substeq(t3, V(0), C(syms, "a")));
  CHECK(substeq(t3, V(1), C(syms, "b")));
}

TEST_CASE("unify_literals checks predicate and polarity, rolls back on failure") {
  SymbolTable syms;
  Trail t;
  REQUIRE(unify_literals(t, L(syms, "p", {V(0)}), L(syms, "p", {C(syms, "a")})));
  CHECK(substeq(t, V(0), C(syms, "a")));

  Trail t2;
  CHECK_FALSE(unify_literals(t2, L(syms, "p", {C(syms, "a")}),
                             L(syms, "q", {C(syms, "a")})));
  CHECK_FALSE(unify_literals(t2, L(syms, "p", {C(syms, "a")}),
                             L(syms, "p", {C(syms, "a")}, true)));

  // Partial progress (X bound to a) must be rolled back when the second
  // argument pair clashes.  A fresh name: "p" above is already unary.
  Trail t3;
  CHECK_FALSE(unify_literals(t3, L(syms, "r", {V(0), V(0)}),
                             L(syms, "r", {C(syms, "a"), C(syms, "b")})));
  CHECK(t3.size() == 0);
}

TEST_CASE("substeq compares under current bindings without modifying them") {
  SymbolTable syms;
  Trail t;
  t.bind(0, C(syms, "a"));
  CHECK(substeq(t, L(syms, "p", {V(0)}), L(syms, "p", {C(syms, "a")})));
  CHECK(t.size() == 1);

  Trail empty;
  CHECK_FALSE(substeq(empty, L(syms, "p", {V(0)}), L(syms, "p", {V(1)})));

  Trail chain;
  chain.bind(0, V(1));
  chain.bind(1, C(syms, "a"));
  CHECK(substeq(chain, L(syms, "p", {V(0)}), L(syms, "p", {C(syms, "a")})));
}

TEST_CASE("rename shifts variable ids by the offset") {
  SymbolTable syms;
  std::vector<Literal> clause = {L(syms, "p", {V(0)}), L(syms, "q", {V(0)})};
  std::vector<Literal> shifted = rename_clause(clause, 100);
  CHECK(shifted[0] == L(syms, "p", {V(100)}));
  CHECK(shifted[1] == L(syms, "q", {V(100)}));

  Literal ground = L(syms, "p", {C(syms, "a")});
  CHECK(rename(ground, 100) == ground);

  std::vector<Literal> a = rename_clause(clause, 100);
  std::vector<Literal> b = rename_clause(clause, 200);
  CHECK(max_var(a) < 200);  // variable sets are disjoint
  CHECK(max_var(b) >= 200);
}

TEST_CASE("apply_full substitutes recursively and is idempotent") {
  SymbolTable syms;
  Trail t;
  t.bind(0, F(syms, "f", {V(1)}));
  t.bind(1, C(syms, "a"));
  Literal out = apply_full(t, L(syms, "p", {V(0)}));
  CHECK(out == L(syms, "p", {F(syms, "f", {C(syms, "a")})}));

  Trail empty;
  Literal id = L(syms, "p", {V(0)});
  CHECK(apply_full(empty, id) == id);

  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    Trail r;
    // Bind a few low variables to terms over strictly higher variables so the
    // trail is acyclic by construction.
    for (int v = 0; v < 3; ++v)
      if (rng() % 2 == 0)
        r.bind(v, rename(testkit::random_term(rng, syms, 2), 10));
    Term term = testkit::random_term(rng, syms, 3);
    Term once = apply_full(r, term);
    CHECK(apply_full(r, once) == once);
  }
}

TEST_CASE("failed unification leaves the trail bit-exact") {
  SymbolTable syms;
  std::mt19937 rng(11);
  int checked = 0;
  for (int i = 0; i < 500; ++i) {
    Trail t;
    if (rng() % 2) t.bind(5, rename(testkit::random_term(rng, syms, 1), 10));
    auto before = t.sorted_bindings();
    Term a = testkit::random_term(rng, syms, 2);
    Term b = testkit::random_term(rng, syms, 2);
    Trail::Mark m = t.mark();
    if (!unify(t, a, b)) {
      CHECK(t.sorted_bindings() == before);
      CHECK(t.mark() == m);
      ++checked;
    } else {
      // Success contract: both sides now fully equal.
      CHECK(substeq(t, a, b));
      CHECK(apply_full(t, a) == apply_full(t, b));
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("substeq agrees with syntactic equality of apply_full images") {
  SymbolTable syms;
  std::mt19937 rng(13);
  for (int i = 0; i < 500; ++i) {
    Trail t;
    for (int v = 0; v < 3; ++v)
      if (rng() % 2 == 0)
        t.bind(v, rename(testkit::random_term(rng, syms, 1), 10));
    Term a = testkit::random_term(rng, syms, 2);
    Term b = testkit::random_term(rng, syms, 2);
    CHECK(substeq(t, a, b) == (apply_full(t, a) == apply_full(t, b)));
  }
}

TEST_CASE("max_var and ground flags") {
  SymbolTable syms;
  CHECK(max_var(C(syms, "a")) == -1);
  CHECK(is_ground(C(syms, "a")));
  CHECK(max_var(F(syms, "f", {V(3), V(7)})) == 7);
  CHECK_FALSE(is_ground(L(syms, "p", {V(0)})));
}

TEST_CASE("trail undo restores marks exactly and sorted_bindings is ordered") {
  SymbolTable syms;
  Trail t;
  t.bind(4, C(syms, "a"));
  Trail::Mark m = t.mark();
  t.bind(1, C(syms, "b"));
  t.bind(9, C(syms, "a"));
  auto sorted = t.sorted_bindings();
  REQUIRE(sorted.size() == 3);
  CHECK(sorted[0].first == 1);
  CHECK(sorted[1].first == 4);
  CHECK(sorted[2].first == 9);
  t.undo(m);
  CHECK(t.size() == 1);
  CHECK(t.binding(4) != nullptr);
  CHECK(t.binding(1) == nullptr);
}

TEST_CASE("fnv1a64 matches the reference test vectors") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ull);
}
