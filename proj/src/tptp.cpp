#include "contab/tptp.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace contab {

FormulaRef Formula::atom(std::string predicate, std::vector<FofTerm> args) {
  auto f = std::make_shared<Formula>();
  f->kind = Kind::Atom;
  f->predicate = std::move(predicate);
  f->args = std::move(args);
  return f;
}

FormulaRef Formula::negate(FormulaRef x) {
  auto f = std::make_shared<Formula>();
  f->kind = Kind::Not;
  f->left = std::move(x);
  return f;
}

FormulaRef Formula::binary(Kind k, FormulaRef l, FormulaRef r) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->left = std::move(l);
  f->right = std::move(r);
  return f;
}

FormulaRef Formula::quantify(Kind k, std::vector<std::string> vars, FormulaRef body) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->bound = std::move(vars);
  f->body = std::move(body);
  return f;
}

const char* to_string(Role r) {
  switch (r) {
    case Role::Axiom: return "axiom";
    case Role::Hypothesis: return "hypothesis";
    case Role::Definition: return "definition";
    case Role::Lemma: return "lemma";
    case Role::Theorem: return "theorem";
    case Role::Conjecture: return "conjecture";
    case Role::NegatedConjecture: return "negated_conjecture";
  }
  return "?";
}

// ---------------------------------------------------------------- lexer ----

namespace {

enum class Tok {
  Name, Var, Dollar, Quoted,
  LParen, RParen, LBracket, RBracket, Comma, Dot, Colon,
  Tilde, Amp, Pipe, Arrow, RevImp, Iff, Xor, Bang, Question, Eq, Neq,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

bool is_lower_word(std::string_view s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto peek = [&](std::size_t k = 0) -> char {
    return i + k < text.size() ? text[i + k] : '\0';
  };
  auto advance = [&]() {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  };
  while (i < text.size()) {
    char c = peek();
    int tl = line, tc = col;
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance();
      continue;
    }
    if (c == '%') {
      while (i < text.size() && peek() != '\n') advance();
      continue;
    }
    if (c == '/' && peek(1) == '*') {
      advance();
      advance();
      while (i < text.size() && !(peek() == '*' && peek(1) == '/')) advance();
      if (i >= text.size()) throw ParseError(tl, tc, "unterminated block comment");
      advance();
      advance();
      continue;
    }
    auto push = [&](Tok k, std::string t) { out.push_back({k, std::move(t), tl, tc}); };
    if (std::islower(static_cast<unsigned char>(c))) {
      std::string word;
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
        word += peek();
        advance();
      }
      push(Tok::Name, word);
      continue;
    }
    if (std::isupper(static_cast<unsigned char>(c))) {
      std::string word;
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
        word += peek();
        advance();
      }
      push(Tok::Var, word);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)))
      throw ParseError(tl, tc, "numeric tokens are not supported");
    switch (c) {
      case '\'': {
        advance();
        std::string word;
        while (i < text.size() && peek() != '\'') {
          if (peek() == '\\') {
            advance();
            if (i >= text.size()) break;
          }
          word += peek();
          advance();
        }
        if (i >= text.size()) throw ParseError(tl, tc, "unterminated quoted name");
        advance();
        push(Tok::Quoted, word);
        continue;
      }
      case '$': {
        advance();
        std::string word;
        while (i < text.size() &&
               (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
          word += peek();
          advance();
        }
        if (word != "true" && word != "false")
          throw ParseError(tl, tc, "unsupported defined word '$" + word + "'");
        push(Tok::Dollar, "$" + word);
        continue;
      }
      case '(': advance(); push(Tok::LParen, "("); continue;
      case ')': advance(); push(Tok::RParen, ")"); continue;
      case '[': advance(); push(Tok::LBracket, "["); continue;
      case ']': advance(); push(Tok::RBracket, "]"); continue;
      case ',': advance(); push(Tok::Comma, ","); continue;
      case '.': advance(); push(Tok::Dot, "."); continue;
      case ':': advance(); push(Tok::Colon, ":"); continue;
      case '~': advance(); push(Tok::Tilde, "~"); continue;
      case '&': advance(); push(Tok::Amp, "&"); continue;
      case '|': advance(); push(Tok::Pipe, "|"); continue;
      case '?': advance(); push(Tok::Question, "?"); continue;
      case '!':
        advance();
        if (peek() == '=') {
          advance();
          push(Tok::Neq, "!=");
        } else {
          push(Tok::Bang, "!");
        }
        continue;
      case '=':
        advance();
        if (peek() == '>') {
          advance();
          push(Tok::Arrow, "=>");
        } else {
          push(Tok::Eq, "=");
        }
        continue;
      case '<':
        advance();
        if (peek() == '=' && peek(1) == '>') {
          advance();
          advance();
          push(Tok::Iff, "<=>");
        } else if (peek() == '=') {
          advance();
          push(Tok::RevImp, "<=");
        } else if (peek() == '~' && peek(1) == '>') {
          advance();
          advance();
          push(Tok::Xor, "<~>");
        } else {
          throw ParseError(tl, tc, "unexpected character '<'");
        }
        continue;
      default:
        throw ParseError(tl, tc, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

// --------------------------------------------------------------- parser ----

class Parser {
public:
  Parser(std::string_view text, const IncludeResolver& resolver,
         std::vector<std::string>& include_stack)
      : tokens_(lex(text)), resolver_(resolver), include_stack_(include_stack) {}

  void parse_into(std::vector<AnnotatedFormula>& out) {
    while (cur().kind != Tok::End) parse_annotated(out);
  }

  FormulaRef parse_single_formula() {
    FormulaRef f = parse_fof();
    expect(Tok::End, "end of input");
    return f;
  }

private:
  const Token& cur() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(cur().line, cur().col, msg);
  }

  Token expect(Tok k, const char* what) {
    if (cur().kind != k)
      fail(std::string("expected ") + what + ", found '" + cur().text + "'");
    return next();
  }

  void parse_annotated(std::vector<AnnotatedFormula>& out) {
    Token head = expect(Tok::Name, "'fof', 'cnf' or 'include'");
    if (head.text == "include") {
      parse_include(out);
      return;
    }
    if (head.text != "fof" && head.text != "cnf")
      throw ParseError(head.line, head.col,
                       "expected 'fof', 'cnf' or 'include', found '" + head.text + "'");
    bool is_cnf = head.text == "cnf";
    expect(Tok::LParen, "'('");
    std::string name;
    if (cur().kind == Tok::Name || cur().kind == Tok::Quoted)
      name = next().text;
    else
      fail("expected formula name");
    expect(Tok::Comma, "','");
    Token role_tok = expect(Tok::Name, "formula role");
    Role role = parse_role(role_tok);
    expect(Tok::Comma, "','");
    FormulaRef f = is_cnf ? parse_cnf_clause() : parse_fof();
    expect(Tok::RParen, "')'");
    expect(Tok::Dot, "'.'");
    out.push_back({std::move(name), role, rename_shadowed(f)});
  }

  Role parse_role(const Token& t) {
    if (t.text == "axiom") return Role::Axiom;
    if (t.text == "hypothesis") return Role::Hypothesis;
    if (t.text == "definition") return Role::Definition;
    if (t.text == "lemma") return Role::Lemma;
    if (t.text == "theorem") return Role::Theorem;
    if (t.text == "conjecture") return Role::Conjecture;
    if (t.text == "negated_conjecture") return Role::NegatedConjecture;
    throw ParseError(t.line, t.col, "unknown formula role '" + t.text + "'");
  }

  void parse_include(std::vector<AnnotatedFormula>& out) {
    Token open = expect(Tok::LParen, "'('");
    Token path_tok = expect(Tok::Quoted, "quoted include path");
    if (cur().kind == Tok::Comma)
      fail("include formula-selection lists are not supported");
    expect(Tok::RParen, "')'");
    expect(Tok::Dot, "'.'");
    const std::string& path = path_tok.text;
    if (std::find(include_stack_.begin(), include_stack_.end(), path) !=
        include_stack_.end())
      throw ParseError(open.line, open.col, "include cycle through '" + path + "'");
    if (!resolver_)
      throw ParseError(open.line, open.col,
                       "cannot resolve include '" + path + "' (no include roots)");
    std::optional<std::string> text = resolver_(path);
    if (!text)
      throw ParseError(open.line, open.col, "cannot resolve include '" + path + "'");
    include_stack_.push_back(path);
    try {
      Parser sub(*text, resolver_, include_stack_);
      sub.parse_into(out);
    } catch (const ParseError& e) {
      include_stack_.pop_back();
      throw ParseError(e.line, e.column, "in include '" + path + "': " + e.what());
    }
    include_stack_.pop_back();
  }

  // fof_formula: units joined by one repeated binary connective (right
  // associative); mixing different connectives without parentheses is an
  // error, as in the TPTP grammar.
  FormulaRef parse_fof() {
    FormulaRef first = parse_unit();
    Tok op = cur().kind;
    if (op != Tok::Amp && op != Tok::Pipe && op != Tok::Arrow && op != Tok::RevImp &&
        op != Tok::Iff && op != Tok::Xor)
      return first;
    std::vector<FormulaRef> parts{first};
    while (cur().kind == op) {
      next();
      parts.push_back(parse_unit());
    }
    Tok trailing = cur().kind;
    if (trailing == Tok::Amp || trailing == Tok::Pipe || trailing == Tok::Arrow ||
        trailing == Tok::RevImp || trailing == Tok::Iff || trailing == Tok::Xor)
      fail("mixed binary connectives need parentheses");
    FormulaRef acc = parts.back();
    for (std::size_t i = parts.size() - 1; i-- > 0;) acc = combine(op, parts[i], acc);
    return acc;
  }

  static FormulaRef combine(Tok op, FormulaRef l, FormulaRef r) {
    switch (op) {
      case Tok::Amp: return Formula::binary(Formula::Kind::And, l, r);
      case Tok::Pipe: return Formula::binary(Formula::Kind::Or, l, r);
      case Tok::Arrow: return Formula::binary(Formula::Kind::Implies, l, r);
      case Tok::RevImp: return Formula::binary(Formula::Kind::Implies, r, l);
      case Tok::Iff: return Formula::binary(Formula::Kind::Iff, l, r);
      case Tok::Xor:
        return Formula::negate(Formula::binary(Formula::Kind::Iff, l, r));
      default: break;
    }
    throw std::logic_error("combine: not a binary connective");
  }

  FormulaRef parse_unit() {
    switch (cur().kind) {
      case Tok::Tilde:
        next();
        return Formula::negate(parse_unit());
      case Tok::Bang:
      case Tok::Question: {
        Formula::Kind k =
            cur().kind == Tok::Bang ? Formula::Kind::Forall : Formula::Kind::Exists;
        next();
        expect(Tok::LBracket, "'['");
        std::vector<std::string> vars;
        vars.push_back(expect(Tok::Var, "variable").text);
        while (cur().kind == Tok::Comma) {
          next();
          vars.push_back(expect(Tok::Var, "variable").text);
        }
        expect(Tok::RBracket, "']'");
        expect(Tok::Colon, "':'");
        return Formula::quantify(k, std::move(vars), parse_unit());
      }
      case Tok::LParen: {
        next();
        FormulaRef f = parse_fof();
        expect(Tok::RParen, "')'");
        return f;
      }
      default:
        return parse_atomic();
    }
  }

  FormulaRef parse_atomic() {
    if (cur().kind == Tok::Dollar) {
      Token t = next();
      return Formula::atom(t.text, {});
    }
    Token at = cur();
    FofTerm lhs = parse_term();
    if (cur().kind == Tok::Eq || cur().kind == Tok::Neq) {
      bool neg = next().kind == Tok::Neq;
      FofTerm rhs = parse_term();
      if (cur().kind == Tok::Eq || cur().kind == Tok::Neq)
        fail("chained equality needs parentheses");
      FormulaRef eq = Formula::atom("=", {std::move(lhs), std::move(rhs)});
      return neg ? Formula::negate(eq) : eq;
    }
    if (lhs.is_variable)
      throw ParseError(at.line, at.col, "a variable is not a formula");
    return Formula::atom(std::move(lhs.name), std::move(lhs.args));
  }

  FofTerm parse_term() {
    if (cur().kind == Tok::Var) {
      FofTerm t;
      t.name = next().text;
      t.is_variable = true;
      return t;
    }
    if (cur().kind != Tok::Name && cur().kind != Tok::Quoted)
      fail("expected a term, found '" + cur().text + "'");
    FofTerm t;
    t.name = next().text;
    if (cur().kind == Tok::LParen) {
      next();
      t.args.push_back(parse_term());
      while (cur().kind == Tok::Comma) {
        next();
        t.args.push_back(parse_term());
      }
      expect(Tok::RParen, "')'");
    }
    return t;
  }

  // cnf_formula: a disjunction of literals, optionally parenthesized.
  FormulaRef parse_cnf_clause() {
    if (cur().kind == Tok::LParen) {
      next();
      FormulaRef f = parse_cnf_clause();
      expect(Tok::RParen, "')'");
      return f;
    }
    std::vector<FormulaRef> lits;
    lits.push_back(parse_cnf_literal());
    while (cur().kind == Tok::Pipe) {
      next();
      lits.push_back(parse_cnf_literal());
    }
    FormulaRef acc = lits.back();
    for (std::size_t i = lits.size() - 1; i-- > 0;)
      acc = Formula::binary(Formula::Kind::Or, lits[i], acc);
    return acc;
  }

  FormulaRef parse_cnf_literal() {
    if (cur().kind == Tok::Tilde) {
      next();
      return Formula::negate(parse_cnf_literal());
    }
    return parse_atomic();
  }

  // -------- binder hygiene: rename binders that shadow an enclosing binder
  // -------- or collide with a free variable name of the same formula.

  static void collect_names(const FormulaRef& f, std::set<std::string>& used) {
    if (!f) return;
    for (const std::string& v : f->bound) used.insert(v);
    std::function<void(const FofTerm&)> walk_term = [&](const FofTerm& t) {
      if (t.is_variable) used.insert(t.name);
      for (const FofTerm& a : t.args) walk_term(a);
    };
    for (const FofTerm& a : f->args) walk_term(a);
    collect_names(f->left, used);
    collect_names(f->right, used);
    collect_names(f->body, used);
  }

  FormulaRef rename_shadowed(const FormulaRef& f) {
    std::set<std::string> used;
    collect_names(f, used);
    std::set<std::string> free;
    for (const std::string& v : free_variables(f)) free.insert(v);
    std::vector<std::pair<std::string, std::string>> env;
    return rename_walk(f, free, used, env);
  }

  static FofTerm rename_term(const FofTerm& t,
                             const std::vector<std::pair<std::string, std::string>>& env) {
    FofTerm out = t;
    if (t.is_variable) {
      for (auto it = env.rbegin(); it != env.rend(); ++it)
        if (it->first == t.name) {
          out.name = it->second;
          break;
        }
      return out;
    }
    for (std::size_t i = 0; i < t.args.size(); ++i)
      out.args[i] = rename_term(t.args[i], env);
    return out;
  }

  static FormulaRef rename_walk(const FormulaRef& f, const std::set<std::string>& free,
                                std::set<std::string>& used,
                                std::vector<std::pair<std::string, std::string>>& env) {
    switch (f->kind) {
      case Formula::Kind::Atom: {
        std::vector<FofTerm> args;
        args.reserve(f->args.size());
        for (const FofTerm& a : f->args) args.push_back(rename_term(a, env));
        return Formula::atom(f->predicate, std::move(args));
      }
      case Formula::Kind::Not:
        return Formula::negate(rename_walk(f->left, free, used, env));
      case Formula::Kind::And:
      case Formula::Kind::Or:
      case Formula::Kind::Implies:
      case Formula::Kind::Iff: {
        FormulaRef l = rename_walk(f->left, free, used, env);
        FormulaRef r = rename_walk(f->right, free, used, env);
        return Formula::binary(f->kind, std::move(l), std::move(r));
      }
      case Formula::Kind::Forall:
      case Formula::Kind::Exists: {
        std::size_t base = env.size();
        std::vector<std::string> vars;
        for (const std::string& v : f->bound) {
          bool clash = free.count(v) > 0;
          for (std::size_t i = 0; i < base && !clash; ++i)
            if (env[i].second == v) clash = true;
          std::string fresh = v;
          if (clash) {
            int k = 0;
            do {
              fresh = v + std::to_string(k++);
            } while (used.count(fresh) || free.count(fresh));
            used.insert(fresh);
          }
          env.emplace_back(v, fresh);
          vars.push_back(fresh);
        }
        FormulaRef body = rename_walk(f->body, free, used, env);
        env.resize(base);
        return Formula::quantify(f->kind, std::move(vars), std::move(body));
      }
    }
    throw std::logic_error("rename_walk: bad kind");
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const IncludeResolver& resolver_;
  std::vector<std::string>& include_stack_;
};

}  // namespace

std::vector<AnnotatedFormula> parse_problem(std::string_view text,
                                            const IncludeResolver& resolver) {
  std::vector<AnnotatedFormula> out;
  std::vector<std::string> include_stack;
  Parser p(text, resolver, include_stack);
  p.parse_into(out);
  return out;
}

FormulaRef parse_formula(std::string_view text) {
  IncludeResolver none;
  std::vector<std::string> include_stack;
  Parser p(text, none, include_stack);
  return p.parse_single_formula();
}

// -------------------------------------------------------------- printer ----

namespace {

void print_name(std::string& out, const std::string& name) {
  if (is_lower_word(name)) {
    out += name;
    return;
  }
  out += '\'';
  for (char c : name) {
    if (c == '\'' || c == '\\') out += '\\';
    out += c;
  }
  out += '\'';
}

void print_fof_term(std::string& out, const FofTerm& t) {
  if (t.is_variable) {
    out += t.name;
    return;
  }
  print_name(out, t.name);
  if (!t.args.empty()) {
    out += '(';
    for (std::size_t i = 0; i < t.args.size(); ++i) {
      if (i) out += ',';
      print_fof_term(out, t.args[i]);
    }
    out += ')';
  }
}

bool is_unit(const FormulaRef& f) {
  switch (f->kind) {
    case Formula::Kind::Atom:
    case Formula::Kind::Not:
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      return true;
    default:
      return false;
  }
}

void print_rec(std::string& out, const FormulaRef& f);

void print_unit(std::string& out, const FormulaRef& f) {
  if (is_unit(f)) {
    print_rec(out, f);
  } else {
    out += '(';
    print_rec(out, f);
    out += ')';
  }
}

void print_atom(std::string& out, const Formula& a, bool negated_eq) {
  if (a.predicate == "=") {
    print_fof_term(out, a.args[0]);
    out += negated_eq ? " != " : " = ";
    print_fof_term(out, a.args[1]);
    return;
  }
  if (a.predicate == "$true" || a.predicate == "$false") {
    out += a.predicate;
    return;
  }
  print_name(out, a.predicate);
  if (!a.args.empty()) {
    out += '(';
    for (std::size_t i = 0; i < a.args.size(); ++i) {
      if (i) out += ',';
      print_fof_term(out, a.args[i]);
    }
    out += ')';
  }
}

void print_rec(std::string& out, const FormulaRef& f) {
  switch (f->kind) {
    case Formula::Kind::Atom:
      print_atom(out, *f, false);
      return;
    case Formula::Kind::Not:
      if (f->left->kind == Formula::Kind::Atom && f->left->predicate == "=") {
        print_atom(out, *f->left, true);
        return;
      }
      out += '~';
      print_unit(out, f->left);
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      const char* op = f->kind == Formula::Kind::And ? " & " : " | ";
      print_unit(out, f->left);
      const Formula* cur = f.get();
      while (cur->right->kind == f->kind) {
        out += op;
        print_unit(out, cur->right->left);
        cur = cur->right.get();
      }
      out += op;
      print_unit(out, cur->right);
      return;
    }
    case Formula::Kind::Implies:
    case Formula::Kind::Iff:
      print_unit(out, f->left);
      out += f->kind == Formula::Kind::Implies ? " => " : " <=> ";
      print_unit(out, f->right);
      return;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      out += f->kind == Formula::Kind::Forall ? '!' : '?';
      out += '[';
      for (std::size_t i = 0; i < f->bound.size(); ++i) {
        if (i) out += ',';
        out += f->bound[i];
      }
      out += "]: ";
      print_unit(out, f->body);
      return;
  }
}

}  // namespace

std::string print_formula(const FormulaRef& f) {
  std::string out;
  print_rec(out, f);
  return out;
}

// ----------------------------------------------------- alpha comparison ----

namespace {

using Env = std::vector<std::pair<std::string, std::string>>;

bool alpha_term(const FofTerm& a, const FofTerm& b, const Env& env) {
  if (a.is_variable != b.is_variable) return false;
  if (a.is_variable) {
    for (auto it = env.rbegin(); it != env.rend(); ++it) {
      if (it->first == a.name) return it->second == b.name;
      if (it->second == b.name) return false;  // b bound where a is free
    }
    return a.name == b.name;
  }
  if (a.name != b.name || a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!alpha_term(a.args[i], b.args[i], env)) return false;
  return true;
}

bool alpha_rec(const FormulaRef& a, const FormulaRef& b, Env& env) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Formula::Kind::Atom: {
      if (a->predicate != b->predicate || a->args.size() != b->args.size())
        return false;
      for (std::size_t i = 0; i < a->args.size(); ++i)
        if (!alpha_term(a->args[i], b->args[i], env)) return false;
      return true;
    }
    case Formula::Kind::Not:
      return alpha_rec(a->left, b->left, env);
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
    case Formula::Kind::Iff:
      return alpha_rec(a->left, b->left, env) && alpha_rec(a->right, b->right, env);
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      if (a->bound.size() != b->bound.size()) return false;
      std::size_t base = env.size();
      for (std::size_t i = 0; i < a->bound.size(); ++i)
        env.emplace_back(a->bound[i], b->bound[i]);
      bool ok = alpha_rec(a->body, b->body, env);
      env.resize(base);
      return ok;
    }
  }
  return false;
}

void free_vars_rec(const FormulaRef& f, std::vector<std::string>& scope,
                   std::vector<std::string>& out) {
  std::function<void(const FofTerm&)> walk_term = [&](const FofTerm& t) {
    if (t.is_variable) {
      if (std::find(scope.begin(), scope.end(), t.name) == scope.end() &&
          std::find(out.begin(), out.end(), t.name) == out.end())
        out.push_back(t.name);
    }
    for (const FofTerm& a : t.args) walk_term(a);
  };
  switch (f->kind) {
    case Formula::Kind::Atom:
      for (const FofTerm& a : f->args) walk_term(a);
      return;
    case Formula::Kind::Not:
      free_vars_rec(f->left, scope, out);
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
    case Formula::Kind::Iff:
      free_vars_rec(f->left, scope, out);
      free_vars_rec(f->right, scope, out);
      return;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      std::size_t base = scope.size();
      for (const std::string& v : f->bound) scope.push_back(v);
      free_vars_rec(f->body, scope, out);
      scope.resize(base);
      return;
    }
  }
}

}  // namespace

bool alpha_equal(const FormulaRef& a, const FormulaRef& b) {
  Env env;
  return alpha_rec(a, b, env);
}

std::vector<std::string> free_variables(const FormulaRef& f) {
  std::vector<std::string> scope, out;
  free_vars_rec(f, scope, out);
  return out;
}

IncludeResolver file_resolver(std::vector<std::string> roots) {
  if (const char* tptp = std::getenv("TPTP")) roots.emplace_back(tptp);
  return [roots = std::move(roots)](const std::string& path) -> std::optional<std::string> {
    namespace fs = std::filesystem;
    std::vector<fs::path> candidates;
    for (const std::string& r : roots) candidates.push_back(fs::path(r) / path);
    candidates.push_back(path);
    for (const fs::path& p : candidates) {
      std::ifstream in(p, std::ios::binary);
      if (!in) continue;
      std::ostringstream ss;
      ss << in.rdbuf();
      return ss.str();
    }
    return std::nullopt;
  };
}

}  // namespace contab
