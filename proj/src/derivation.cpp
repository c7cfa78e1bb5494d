#include "oprover/derivation.hpp"

#include <utility>

namespace oprover {

using nlohmann::json;

std::string path_to_string(const NodePath& path) {
  std::string s = "[";
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(path[i]);
  }
  return s + "]";
}

ProofTree::ProofTree(std::string goal) : goal_(std::move(goal)) { root_.formula_text = goal_; }

ProofTree ProofTree::from_root(std::string goal, ProofNode root) {
  ProofTree t(std::move(goal));
  root.formula_text = t.goal_;
  t.root_ = std::move(root);
  return t;
}

const ProofNode* ProofTree::find(const NodePath& path) const {
  const ProofNode* n = &root_;
  for (auto i : path) {
    if (i >= n->premises.size()) return nullptr;
    n = &n->premises[i];
  }
  return n;
}

class TreeEditor {
 public:
  static Expected<ProofTree, EditError> apply(const ProofTree& tree, const EditOp& op) {
    ProofTree out = tree;
    const NodePath& at = std::visit([](const auto& o) -> const NodePath& { return o.at; }, op);
    ProofNode* parent = nullptr;
    ProofNode* node = &out.root_;
    for (auto i : at) {
      if (i >= node->premises.size()) {
        return unexpected(EditError{"path " + path_to_string(at) + " does not address a node"});
      }
      parent = node;
      node = &node->premises[i];
    }

    if (std::holds_alternative<AddPremise>(op)) {
      node->premises.emplace_back();
    } else if (std::holds_alternative<DeleteLeaf>(op)) {
      if (!parent) return unexpected(EditError{"the goal line cannot be deleted"});
      if (!node->is_leaf()) {
        return unexpected(EditError{"node " + path_to_string(at) + " has premises; only leaves can be deleted"});
      }
      parent->premises.erase(parent->premises.begin() + static_cast<std::ptrdiff_t>(at.back()));
    } else if (const auto* sf = std::get_if<SetFormula>(&op)) {
      if (!parent) return unexpected(EditError{"the goal formula cannot be edited"});
      node->formula_text = sf->text;
    } else {
      node->rule_text = std::get<SetRule>(op).text;
    }
    return out;
  }
};

Expected<ProofTree, EditError> apply_edit(const ProofTree& tree, const EditOp& op) { return TreeEditor::apply(tree, op); }

json encode_node(const ProofNode& node) {
  json premises = json::array();
  for (const auto& p : node.premises) premises.push_back(encode_node(p));
  return json{{"formula", node.formula_text}, {"rule", node.rule_text}, {"premises", std::move(premises)}};
}

json encode_tree(const ProofTree& tree) { return json{{"goal", tree.goal()}, {"root", encode_node(tree.root())}}; }

namespace {

Expected<std::string, DecodeError> string_field(const json& obj, const std::string& key, const std::string& at) {
  auto it = obj.find(key);
  if (it == obj.end()) return unexpected(DecodeError{at + "/" + key, "missing key"});
  if (!it->is_string()) return unexpected(DecodeError{at + "/" + key, "expected a string"});
  return it->get<std::string>();
}

Expected<ProofNode, DecodeError> decode_node(const json& j, const std::string& at, std::size_t depth) {
  if (depth > kMaxTreeDepth) {
    return unexpected(DecodeError{at, "tree deeper than " + std::to_string(kMaxTreeDepth) + " levels"});
  }
  if (!j.is_object()) return unexpected(DecodeError{at, "expected an object"});
  for (const auto& [key, _] : j.items()) {
    if (key != "formula" && key != "rule" && key != "premises") {
      return unexpected(DecodeError{at + "/" + key, "unexpected key"});
    }
  }
  ProofNode node;
  auto formula = string_field(j, "formula", at);
  if (!formula) return unexpected(formula.error());
  node.formula_text = std::move(*formula);
  auto rule = string_field(j, "rule", at);
  if (!rule) return unexpected(rule.error());
  node.rule_text = std::move(*rule);

  auto it = j.find("premises");
  if (it == j.end()) return unexpected(DecodeError{at + "/premises", "missing key"});
  if (!it->is_array()) return unexpected(DecodeError{at + "/premises", "expected an array"});
  for (std::size_t i = 0; i < it->size(); ++i) {
    auto child = decode_node((*it)[i], at + "/premises/" + std::to_string(i), depth + 1);
    if (!child) return child;
    node.premises.push_back(std::move(*child));
  }
  return node;
}

}  // namespace

Expected<ProofTree, DecodeError> decode_tree(const json& j) {
  if (!j.is_object()) return unexpected(DecodeError{"", "expected an object"});
  for (const auto& [key, _] : j.items()) {
    if (key != "goal" && key != "root") return unexpected(DecodeError{"/" + key, "unexpected key"});
  }
  auto goal = string_field(j, "goal", "");
  if (!goal) return unexpected(goal.error());
  auto it = j.find("root");
  if (it == j.end()) return unexpected(DecodeError{"/root", "missing key"});
  auto root = decode_node(*it, "/root", 1);
  if (!root) return unexpected(root.error());
  if (root->formula_text != *goal) {
    return unexpected(DecodeError{"/root/formula", "root formula must equal the goal"});
  }
  return ProofTree::from_root(std::move(*goal), std::move(*root));
}

}  // namespace oprover
