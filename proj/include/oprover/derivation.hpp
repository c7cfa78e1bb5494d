#pragma once

// Editable derivation trees. Nodes hold raw text; nothing is parsed until a
// tree is checked.

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "oprover/expected.hpp"

namespace oprover {

struct ProofNode {
  std::string formula_text;
  std::string rule_text;
  std::vector<ProofNode> premises;

  bool is_leaf() const { return premises.empty(); }
  friend bool operator==(const ProofNode&, const ProofNode&) = default;
};

/// Child indices from the root; empty addresses the root.
using NodePath = std::vector<std::size_t>;

std::string path_to_string(const NodePath& path);

class ProofTree {
 public:
  /// A tree consisting only of the goal line.
  explicit ProofTree(std::string goal);

  const std::string& goal() const { return goal_; }
  const ProofNode& root() const { return root_; }

  /// nullptr when the path does not resolve.
  const ProofNode* find(const NodePath& path) const;

  /// Builds a tree from an existing root; the root's formula text is forced to the goal.
  static ProofTree from_root(std::string goal, ProofNode root);

  friend bool operator==(const ProofTree&, const ProofTree&) = default;

 private:
  friend class TreeEditor;

  std::string goal_;
  ProofNode root_;
};

struct AddPremise {
  NodePath at;
};
struct DeleteLeaf {
  NodePath at;
};
struct SetFormula {
  NodePath at;
  std::string text;
};
struct SetRule {
  NodePath at;
  std::string text;
};

using EditOp = std::variant<AddPremise, DeleteLeaf, SetFormula, SetRule>;

struct EditError {
  std::string message;
};

Expected<ProofTree, EditError> apply_edit(const ProofTree& tree, const EditOp& op);

/// Maximum nesting accepted by decode_tree.
inline constexpr std::size_t kMaxTreeDepth = 200;

nlohmann::json encode_node(const ProofNode& node);
nlohmann::json encode_tree(const ProofTree& tree);

struct DecodeError {
  /// JSON pointer to the offending value, e.g. "/root/premises/0/rule".
  std::string path;
  std::string message;

  std::string describe() const { return (path.empty() ? std::string("/") : path) + ": " + message; }
};

/// Strict decoding: unknown keys, missing keys, and wrong types are errors,
/// as is nesting deeper than kMaxTreeDepth.
Expected<ProofTree, DecodeError> decode_tree(const nlohmann::json& j);

}  // namespace oprover
