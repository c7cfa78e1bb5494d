#pragma once

// Terms and formulas of first-order logic without function symbols, their
// ASCII concrete syntax, and the substitution machinery the quantifier rules
// are built on.
//
// Concrete syntax (tightest binding first):
//
//   !A            negation
//   A /\ B        conjunction, left-associative
//   A \/ B        disjunction, left-associative
//   A -> B        implication, right-associative
//   A <-> B       biconditional, right-associative
//   forall x . A  quantifiers; the body extends as far right as possible
//   exists x . A
//   True, False, P, R(x, c)
//
// A lowercase identifier denotes a Variable when an enclosing quantifier binds
// it, and a Constant otherwise.

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "oprover/expected.hpp"

namespace oprover {

struct Term {
  enum class Kind { Variable, Constant };

  Kind kind = Kind::Constant;
  std::string name;

  static Term variable(std::string name) { return {Kind::Variable, std::move(name)}; }
  static Term constant(std::string name) { return {Kind::Constant, std::move(name)}; }

  bool is_variable() const { return kind == Kind::Variable; }
  bool is_constant() const { return kind == Kind::Constant; }

  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term&, const Term&) = default;
};

/// Immutable formula tree. Copies share structure; equality is syntactic.
class Formula {
 public:
  enum class Kind { Atom, Truth, Falsity, Not, And, Or, Implies, Iff, Forall, Exists };

  static Formula atom(std::string predicate, std::vector<Term> args = {});
  static Formula truth();
  static Formula falsity();
  static Formula negation(Formula operand);
  static Formula conjunction(Formula lhs, Formula rhs);
  static Formula disjunction(Formula lhs, Formula rhs);
  static Formula implication(Formula lhs, Formula rhs);
  static Formula biconditional(Formula lhs, Formula rhs);
  static Formula forall(std::string var, Formula body);
  static Formula exists(std::string var, Formula body);
  static Formula binary(Kind kind, Formula lhs, Formula rhs);
  static Formula quantifier(Kind kind, std::string var, Formula body);

  Kind kind() const { return node_->kind; }
  bool is(Kind k) const { return node_->kind == k; }
  bool is_binary() const;
  bool is_quantifier() const { return is(Kind::Forall) || is(Kind::Exists); }

  /// Predicate name of an Atom, or bound variable of a quantifier.
  const std::string& name() const { return node_->name; }
  const std::vector<Term>& args() const { return node_->args; }
  /// Operand of Not, body of a quantifier.
  const Formula& operand() const { return node_->children.at(0); }
  const Formula& body() const { return node_->children.at(0); }
  const Formula& lhs() const { return node_->children.at(0); }
  const Formula& rhs() const { return node_->children.at(1); }

  /// Nesting depth; atoms and constants have depth 0.
  std::size_t depth() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }
  /// Arbitrary but stable total order, for use as a set/map key.
  friend bool operator<(const Formula& a, const Formula& b);

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::vector<Term> args;
    std::vector<Formula> children;
  };

  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

struct ParseError {
  std::size_t position = 0;
  std::string message;

  std::string describe() const;
};

Expected<Formula, ParseError> parse_formula(std::string_view text);

std::string print_formula(const Formula& f);

std::set<std::string> free_variables(const Formula& f);
std::set<std::string> constants_of(const Formula& f);

/// True when `var` has at least one free occurrence in `f`.
bool occurs_free(const Formula& f, const std::string& var);

struct CaptureError {
  /// Binder of the quantifier that would capture the substituted term.
  std::string binder;
  std::string message;
};

/// Replaces every free occurrence of the variable `var` in `f` by `t`.
Expected<Formula, CaptureError> substitute(const Formula& f, const std::string& var, const Term& t);

struct AnyTerm {
  friend bool operator==(AnyTerm, AnyTerm) { return true; }
};
struct NoMatch {
  friend bool operator==(NoMatch, NoMatch) { return true; }
};

/// Result of instance matching: the unique witness, any term at all (the
/// variable does not occur free and the bodies are equal), or no match.
using MatchResult = std::variant<Term, AnyTerm, NoMatch>;

/// Finds t with substitute(body, var, t) == candidate.
MatchResult match_instance(const Formula& body, const std::string& var, const Formula& candidate);

}  // namespace oprover
