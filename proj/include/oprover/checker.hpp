#pragma once

// Whole-tree validation behind the Check button. Every node receives a status
// for its formula field and one for its rule field; the tree as a whole is
// Complete, Incomplete, or HasErrors.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "oprover/calculus.hpp"
#include "oprover/derivation.hpp"
#include "oprover/expected.hpp"

namespace oprover {

struct NodeStatus {
  enum class Kind { Correct, Error, Pending };

  Kind kind = Kind::Pending;
  std::string message;  // nonempty iff kind == Error

  static NodeStatus correct() { return {Kind::Correct, {}}; }
  static NodeStatus pending() { return {Kind::Pending, {}}; }
  static NodeStatus error(std::string msg) { return {Kind::Error, std::move(msg)}; }

  bool is_correct() const { return kind == Kind::Correct; }
  bool is_error() const { return kind == Kind::Error; }
  bool is_pending() const { return kind == Kind::Pending; }

  friend bool operator==(const NodeStatus&, const NodeStatus&) = default;
};

struct AnnotatedNode {
  std::string formula_text;
  std::string rule_text;
  NodeStatus formula_status;
  NodeStatus rule_status;
  std::vector<AnnotatedNode> premises;

  /// Combined error text of both fields, if any.
  std::optional<std::string> message() const;

  friend bool operator==(const AnnotatedNode&, const AnnotatedNode&) = default;
};

struct AnnotatedTree {
  std::string goal;
  AnnotatedNode root;

  /// nullptr when the path does not resolve.
  const AnnotatedNode* find(const NodePath& path) const;

  friend bool operator==(const AnnotatedTree&, const AnnotatedTree&) = default;
};

enum class ProofOutcome { Complete, Incomplete, HasErrors };

std::string to_string(ProofOutcome o);

/// Undischarged assumptions of a subderivation, plus whether any open
/// premise (a leaf with no rule) remains above it.
struct Dependencies {
  AssumptionSet assumptions;
  bool open = false;

  bool empty() const { return assumptions.empty() && !open; }
  friend bool operator==(const Dependencies&, const Dependencies&) = default;
};

struct DependencyError {
  NodePath at;
  std::string message;
};

/// Dependency bookkeeping for a subtree whose formulas all parse.
Expected<Dependencies, DependencyError> dependencies(const ProofNode& node);

struct CheckResult {
  AnnotatedTree tree;
  ProofOutcome outcome;
};

CheckResult check_tree(const ProofTree& tree);

nlohmann::json encode_annotated(const AnnotatedTree& tree);
std::string to_string(NodeStatus::Kind k);

}  // namespace oprover
