#include "oprover/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <utility>

namespace oprover {

// ---------------------------------------------------------------------------
// Construction and comparison

Formula Formula::atom(std::string predicate, std::vector<Term> args) {
  return Formula(std::make_shared<const Node>(Node{Kind::Atom, std::move(predicate), std::move(args), {}}));
}

Formula Formula::truth() {
  static const Formula t(std::make_shared<const Node>(Node{Kind::Truth, {}, {}, {}}));
  return t;
}

Formula Formula::falsity() {
  static const Formula f(std::make_shared<const Node>(Node{Kind::Falsity, {}, {}, {}}));
  return f;
}

Formula Formula::negation(Formula operand) {
  return Formula(std::make_shared<const Node>(Node{Kind::Not, {}, {}, {std::move(operand)}}));
}

Formula Formula::binary(Kind kind, Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(Node{kind, {}, {}, {std::move(lhs), std::move(rhs)}}));
}

Formula Formula::quantifier(Kind kind, std::string var, Formula body) {
  return Formula(std::make_shared<const Node>(Node{kind, std::move(var), {}, {std::move(body)}}));
}

Formula Formula::conjunction(Formula lhs, Formula rhs) { return binary(Kind::And, std::move(lhs), std::move(rhs)); }
Formula Formula::disjunction(Formula lhs, Formula rhs) { return binary(Kind::Or, std::move(lhs), std::move(rhs)); }
Formula Formula::implication(Formula lhs, Formula rhs) { return binary(Kind::Implies, std::move(lhs), std::move(rhs)); }
Formula Formula::biconditional(Formula lhs, Formula rhs) { return binary(Kind::Iff, std::move(lhs), std::move(rhs)); }
Formula Formula::forall(std::string var, Formula body) { return quantifier(Kind::Forall, std::move(var), std::move(body)); }
Formula Formula::exists(std::string var, Formula body) { return quantifier(Kind::Exists, std::move(var), std::move(body)); }

bool Formula::is_binary() const {
  switch (kind()) {
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
    case Kind::Iff:
      return true;
    default:
      return false;
  }
}

std::size_t Formula::depth() const {
  std::size_t d = 0;
  for (const auto& c : node_->children) d = std::max(d, c.depth() + 1);
  return d;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.name == y.name && x.args == y.args && x.children == y.children;
}

bool operator<(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return false;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind) return x.kind < y.kind;
  if (x.name != y.name) return x.name < y.name;
  if (x.args != y.args) return x.args < y.args;
  return std::lexicographical_compare(x.children.begin(), x.children.end(), y.children.begin(), y.children.end());
}

std::string ParseError::describe() const {
  return "at position " + std::to_string(position) + ": " + message;
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok {
  End,
  Forall,
  Exists,
  True,
  False,
  Not,
  And,
  Or,
  Implies,
  Iff,
  LParen,
  RParen,
  Comma,
  Dot,
  Upper,  // predicate name
  Lower,  // term identifier
};

struct Token {
  Tok kind;
  std::size_t pos;
  std::string text;
};

const char* describe_token(Tok t) {
  switch (t) {
    case Tok::End: return "end of input";
    case Tok::Forall: return "'forall'";
    case Tok::Exists: return "'exists'";
    case Tok::True: return "'True'";
    case Tok::False: return "'False'";
    case Tok::Not: return "'!'";
    case Tok::And: return "'/\\'";
    case Tok::Or: return "'\\/'";
    case Tok::Implies: return "'->'";
    case Tok::Iff: return "'<->'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::Upper: return "predicate name";
    case Tok::Lower: return "identifier";
  }
  return "token";
}

bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

Expected<std::vector<Token>, ParseError> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    const std::size_t start = i;
    auto rest = s.substr(i);
    auto push = [&](Tok t, std::size_t len) {
      out.push_back({t, start, std::string(s.substr(start, len))});
      i += len;
    };
    if (rest.starts_with("<->")) {
      push(Tok::Iff, 3);
    } else if (rest.starts_with("->")) {
      push(Tok::Implies, 2);
    } else if (rest.starts_with("/\\")) {
      push(Tok::And, 2);
    } else if (rest.starts_with("\\/")) {
      push(Tok::Or, 2);
    } else if (c == '!') {
      push(Tok::Not, 1);
    } else if (c == '(') {
      push(Tok::LParen, 1);
    } else if (c == ')') {
      push(Tok::RParen, 1);
    } else if (c == ',') {
      push(Tok::Comma, 1);
    } else if (c == '.') {
      push(Tok::Dot, 1);
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && is_ident_char(s[j])) ++j;
      std::string word(s.substr(i, j - i));
      Tok kind;
      if (word == "forall") {
        kind = Tok::Forall;
      } else if (word == "exists") {
        kind = Tok::Exists;
      } else if (word == "True") {
        kind = Tok::True;
      } else if (word == "False") {
        kind = Tok::False;
      } else if (std::isupper(static_cast<unsigned char>(c))) {
        kind = Tok::Upper;
      } else {
        kind = Tok::Lower;
      }
      out.push_back({kind, start, std::move(word)});
      i = j;
    } else {
      return unexpected(ParseError{start, std::string("unknown token '") + c + "'"});
    }
  }
  out.push_back({Tok::End, s.size(), {}});
  return out;
}

// ---------------------------------------------------------------------------
// Parser

constexpr std::size_t kMaxNesting = 512;

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Expected<Formula, ParseError> run() {
    if (peek().kind == Tok::End) return fail("empty formula");
    auto f = parse_iff();
    if (!f) return f;
    if (peek().kind != Tok::End) return fail(std::string("unexpected ") + describe_token(peek().kind));
    return f;
  }

 private:
  using Result = Expected<Formula, ParseError>;

  const Token& peek() const { return toks_[pos_]; }
  const Token& advance() { return toks_[pos_++]; }

  Unexpected<ParseError> fail(std::string msg) const { return unexpected(ParseError{peek().pos, std::move(msg)}); }

  bool too_deep() const { return nesting_ > kMaxNesting; }

  struct NestGuard {
    std::size_t& n;
    explicit NestGuard(std::size_t& c) : n(++c) {}
    ~NestGuard() { --n; }
  };

  Result parse_iff() {
    auto lhs = parse_implies();
    if (!lhs || peek().kind != Tok::Iff) return lhs;
    advance();
    NestGuard g(nesting_);
    if (too_deep()) return fail("formula nested too deeply");
    auto rhs = parse_iff();
    if (!rhs) return rhs;
    return Formula::biconditional(std::move(*lhs), std::move(*rhs));
  }

  Result parse_implies() {
    auto lhs = parse_or();
    if (!lhs || peek().kind != Tok::Implies) return lhs;
    advance();
    NestGuard g(nesting_);
    if (too_deep()) return fail("formula nested too deeply");
    auto rhs = parse_implies();
    if (!rhs) return rhs;
    return Formula::implication(std::move(*lhs), std::move(*rhs));
  }

  Result parse_or() {
    auto acc = parse_and();
    while (acc && peek().kind == Tok::Or) {
      advance();
      auto rhs = parse_and();
      if (!rhs) return rhs;
      acc = Formula::disjunction(std::move(*acc), std::move(*rhs));
    }
    return acc;
  }

  Result parse_and() {
    auto acc = parse_unary();
    while (acc && peek().kind == Tok::And) {
      advance();
      auto rhs = parse_unary();
      if (!rhs) return rhs;
      acc = Formula::conjunction(std::move(*acc), std::move(*rhs));
    }
    return acc;
  }

  Result parse_unary() {
    NestGuard g(nesting_);
    if (too_deep()) return fail("formula nested too deeply");
    switch (peek().kind) {
      case Tok::Not: {
        advance();
        auto operand = parse_unary();
        if (!operand) return operand;
        return Formula::negation(std::move(*operand));
      }
      case Tok::Forall:
      case Tok::Exists:
        return parse_quantifier();
      default:
        return parse_primary();
    }
  }

  Result parse_quantifier() {
    const auto kind = advance().kind == Tok::Forall ? Formula::Kind::Forall : Formula::Kind::Exists;
    if (peek().kind != Tok::Lower) return fail("expected a lowercase variable after quantifier");
    std::string var = advance().text;
    if (peek().kind != Tok::Dot) return fail("expected '.' after quantifier variable '" + var + "'");
    advance();
    bound_.push_back(var);
    auto body = parse_iff();
    bound_.pop_back();
    if (!body) return body;
    return Formula::quantifier(kind, std::move(var), std::move(*body));
  }

  Result parse_primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::True:
        advance();
        return Formula::truth();
      case Tok::False:
        advance();
        return Formula::falsity();
      case Tok::LParen: {
        advance();
        auto inner = parse_iff();
        if (!inner) return inner;
        if (peek().kind != Tok::RParen) return fail("expected ')' to close '(' at position " + std::to_string(t.pos));
        advance();
        return inner;
      }
      case Tok::Upper:
        return parse_atom();
      case Tok::Lower:
        return fail("expected a formula, found term '" + t.text + "' (predicates start with an uppercase letter)");
      case Tok::End:
        return fail("unexpected end of input");
      default:
        return fail(std::string("unexpected ") + describe_token(t.kind));
    }
  }

  Result parse_atom() {
    std::string pred = advance().text;
    std::vector<Term> args;
    if (peek().kind != Tok::LParen) return Formula::atom(std::move(pred));
    const std::size_t open_pos = advance().pos;
    for (;;) {
      if (peek().kind != Tok::Lower) return fail("expected a lowercase term in arguments of '" + pred + "'");
      args.push_back(make_term(advance().text));
      if (peek().kind == Tok::Comma) {
        advance();
        continue;
      }
      if (peek().kind == Tok::RParen) {
        advance();
        break;
      }
      return fail("expected ',' or ')' to close '(' at position " + std::to_string(open_pos));
    }
    return Formula::atom(std::move(pred), std::move(args));
  }

  Term make_term(std::string name) const {
    const bool is_bound = std::find(bound_.begin(), bound_.end(), name) != bound_.end();
    return is_bound ? Term::variable(std::move(name)) : Term::constant(std::move(name));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::size_t nesting_ = 0;
  std::vector<std::string> bound_;
};

// ---------------------------------------------------------------------------
// Printer

int precedence(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::Iff: return 1;
    case Formula::Kind::Implies: return 2;
    case Formula::Kind::Or: return 3;
    case Formula::Kind::And: return 4;
    default: return 5;
  }
}

const char* connective(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::Iff: return " <-> ";
    case Formula::Kind::Implies: return " -> ";
    case Formula::Kind::Or: return " \\/ ";
    case Formula::Kind::And: return " /\\ ";
    default: return "";
  }
}

// `open_right` is true when nothing follows the printed text at this level,
// so a trailing quantifier may extend to the end without parentheses.
void print_into(std::string& out, const Formula& f, int min_prec, bool open_right) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Truth:
      out += "True";
      return;
    case K::Falsity:
      out += "False";
      return;
    case K::Atom:
      out += f.name();
      if (!f.args().empty()) {
        out += '(';
        for (std::size_t i = 0; i < f.args().size(); ++i) {
          if (i) out += ", ";
          out += f.args()[i].name;
        }
        out += ')';
      }
      return;
    case K::Not:
      out += '!';
      print_into(out, f.operand(), 5, open_right);
      return;
    case K::Forall:
    case K::Exists: {
      const bool parens = !open_right;
      if (parens) out += '(';
      out += f.is(K::Forall) ? "forall " : "exists ";
      out += f.name();
      out += " . ";
      print_into(out, f.body(), 1, true);
      if (parens) out += ')';
      return;
    }
    case K::And:
    case K::Or:
    case K::Implies:
    case K::Iff: {
      const int p = precedence(f.kind());
      const bool parens = p < min_prec;
      const bool right_assoc = f.is(K::Implies) || f.is(K::Iff);
      if (parens) out += '(';
      print_into(out, f.lhs(), right_assoc ? p + 1 : p, false);
      out += connective(f.kind());
      print_into(out, f.rhs(), right_assoc ? p : p + 1, parens || open_right);
      if (parens) out += ')';
      return;
    }
  }
}

void collect(const Formula& f, std::vector<std::string>& bound, std::set<std::string>* vars, std::set<std::string>* consts) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      for (const auto& t : f.args()) {
        if (t.is_constant()) {
          if (consts) consts->insert(t.name);
        } else if (vars && std::find(bound.begin(), bound.end(), t.name) == bound.end()) {
          vars->insert(t.name);
        }
      }
      return;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      bound.push_back(f.name());
      collect(f.body(), bound, vars, consts);
      bound.pop_back();
      return;
    case Formula::Kind::Not:
      collect(f.operand(), bound, vars, consts);
      return;
    case Formula::Kind::Truth:
    case Formula::Kind::Falsity:
      return;
    default:
      collect(f.lhs(), bound, vars, consts);
      collect(f.rhs(), bound, vars, consts);
      return;
  }
}

Expected<Formula, CaptureError> substitute_in(const Formula& f, const std::string& var, const Term& t,
                                              std::vector<std::string>& binders) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Truth:
    case K::Falsity:
      return f;
    case K::Atom: {
      bool changed = false;
      std::vector<Term> args = f.args();
      for (auto& a : args) {
        if (!a.is_variable() || a.name != var) continue;
        for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
          if (*it == t.name) {
            return unexpected(CaptureError{*it, "substituting '" + t.name + "' for '" + var +
                                                    "' would be captured by the quantifier binding '" + *it + "'"});
          }
        }
        a = t;
        changed = true;
      }
      return changed ? Formula::atom(f.name(), std::move(args)) : f;
    }
    case K::Not: {
      auto inner = substitute_in(f.operand(), var, t, binders);
      if (!inner) return inner;
      return Formula::negation(std::move(*inner));
    }
    case K::Forall:
    case K::Exists: {
      if (f.name() == var) return f;
      binders.push_back(f.name());
      auto body = substitute_in(f.body(), var, t, binders);
      binders.pop_back();
      if (!body) return body;
      return Formula::quantifier(f.kind(), f.name(), std::move(*body));
    }
    default: {
      auto l = substitute_in(f.lhs(), var, t, binders);
      if (!l) return l;
      auto r = substitute_in(f.rhs(), var, t, binders);
      if (!r) return r;
      return Formula::binary(f.kind(), std::move(*l), std::move(*r));
    }
  }
}

// Walks body and candidate in lockstep, recording the term sitting at each
// free occurrence of `var`.
bool match_walk(const Formula& body, const Formula& cand, const std::string& var, std::optional<Term>& witness) {
  using K = Formula::Kind;
  if (body.kind() != cand.kind()) return false;
  switch (body.kind()) {
    case K::Truth:
    case K::Falsity:
      return true;
    case K::Atom: {
      if (body.name() != cand.name() || body.args().size() != cand.args().size()) return false;
      for (std::size_t i = 0; i < body.args().size(); ++i) {
        const Term& b = body.args()[i];
        const Term& c = cand.args()[i];
        if (b.is_variable() && b.name == var) {
          if (witness && *witness != c) return false;
          witness = c;
        } else if (b != c) {
          return false;
        }
      }
      return true;
    }
    case K::Not:
      return match_walk(body.operand(), cand.operand(), var, witness);
    case K::Forall:
    case K::Exists:
      if (body.name() != cand.name()) return false;
      if (body.name() == var) return body == cand;
      return match_walk(body.body(), cand.body(), var, witness);
    default:
      return match_walk(body.lhs(), cand.lhs(), var, witness) && match_walk(body.rhs(), cand.rhs(), var, witness);
  }
}

}  // namespace

Expected<Formula, ParseError> parse_formula(std::string_view text) {
  auto toks = tokenize(text);
  if (!toks) return unexpected(toks.error());
  return Parser(std::move(*toks)).run();
}

std::string print_formula(const Formula& f) {
  std::string out;
  print_into(out, f, 0, true);
  return out;
}

std::set<std::string> free_variables(const Formula& f) {
  std::set<std::string> vars;
  std::vector<std::string> bound;
  collect(f, bound, &vars, nullptr);
  return vars;
}

std::set<std::string> constants_of(const Formula& f) {
  std::set<std::string> consts;
  std::vector<std::string> bound;
  collect(f, bound, nullptr, &consts);
  return consts;
}

bool occurs_free(const Formula& f, const std::string& var) { return free_variables(f).contains(var); }

Expected<Formula, CaptureError> substitute(const Formula& f, const std::string& var, const Term& t) {
  std::vector<std::string> binders;
  return substitute_in(f, var, t, binders);
}

MatchResult match_instance(const Formula& body, const std::string& var, const Formula& candidate) {
  if (!occurs_free(body, var)) {
    if (body == candidate) return AnyTerm{};
    return NoMatch{};
  }
  std::optional<Term> witness;
  if (!match_walk(body, candidate, var, witness) || !witness) return NoMatch{};
  auto check = substitute(body, var, *witness);
  if (!check || *check != candidate) return NoMatch{};
  return *witness;
}

}  // namespace oprover
