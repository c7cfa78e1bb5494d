#include "oprover/checker.hpp"

#include <algorithm>
#include <cctype>

namespace oprover {

using nlohmann::json;

std::optional<std::string> AnnotatedNode::message() const {
  std::string m;
  if (formula_status.is_error()) m = formula_status.message;
  if (rule_status.is_error()) {
    if (!m.empty()) m += " ";
    m += rule_status.message;
  }
  if (m.empty()) return std::nullopt;
  return m;
}

const AnnotatedNode* AnnotatedTree::find(const NodePath& path) const {
  const AnnotatedNode* n = &root;
  for (auto i : path) {
    if (i >= n->premises.size()) return nullptr;
    n = &n->premises[i];
  }
  return n;
}

std::string to_string(ProofOutcome o) {
  switch (o) {
    case ProofOutcome::Complete: return "complete";
    case ProofOutcome::Incomplete: return "incomplete";
    case ProofOutcome::HasErrors: return "has-errors";
  }
  return "unknown";
}

std::string to_string(NodeStatus::Kind k) {
  switch (k) {
    case NodeStatus::Kind::Correct: return "correct";
    case NodeStatus::Kind::Error: return "error";
    case NodeStatus::Kind::Pending: return "pending";
  }
  return "unknown";
}

namespace {

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) != 0; });
}

std::string sentence(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  if (!s.empty() && s.back() != '.') s += '.';
  return s;
}

struct Visit {
  std::optional<Formula> formula;
  /// nullopt when some assumption formula above could not be read.
  std::optional<Dependencies> deps;
  /// Tags named by discharging annotations in this subtree.
  std::set<Tag> discharge_tags;
};

class TreeChecker {
 public:
  AnnotatedNode annotate(const ProofNode& node, NodePath& path, Visit& out) {
    AnnotatedNode an{node.formula_text, node.rule_text, NodeStatus::pending(), NodeStatus::pending(), {}};

    std::vector<Visit> below(node.premises.size());
    for (std::size_t i = 0; i < node.premises.size(); ++i) {
      path.push_back(i);
      an.premises.push_back(annotate(node.premises[i], path, below[i]));
      path.pop_back();
    }

    if (!blank(node.formula_text)) {
      auto f = parse_formula(node.formula_text);
      if (f) {
        out.formula = *f;
        an.formula_status = NodeStatus::correct();
      } else {
        an.formula_status = NodeStatus::error("Formula error " + f.error().describe() + ".");
      }
    }

    for (const auto& b : below) out.discharge_tags.insert(b.discharge_tags.begin(), b.discharge_tags.end());

    if (blank(node.rule_text)) {
      out.deps = merge_unjustified(below, path, nullptr);
      return an;
    }

    auto ann = parse_rule_annotation(node.rule_text);
    if (!ann) {
      an.rule_status = NodeStatus::error("Rule error " + ann.error().describe() + ".");
      out.deps = merge_unjustified(below, path, nullptr);
      return an;
    }

    if (const auto* assume = std::get_if<Assume>(&*ann)) {
      if (!node.is_leaf()) {
        an.rule_status = NodeStatus::error("Assumption " + std::string(1, assume->tag) +
                                           " closes a branch, so this line cannot have premises.");
        out.deps = merge_unjustified(below, path, nullptr);
        return an;
      }
      if (out.formula) {
        an.rule_status = NodeStatus::correct();
        out.deps = Dependencies{{{assume->tag, *out.formula}}, false};
      }
      return an;
    }

    const Apply& apply = std::get<Apply>(*ann);
    const RuleInfo& info = rule_info(apply.rule);
    const bool discharging = info.tags != TagArity::None;
    if (discharging) out.discharge_tags.insert(apply.tags.begin(), apply.tags.end());

    if (node.premises.size() != info.premises) {
      an.rule_status = NodeStatus::error(std::string(info.surface) + ": the rule expects " +
                                         std::to_string(info.premises) + " premise" + (info.premises == 1 ? "" : "s") +
                                         " but the step has " + std::to_string(node.premises.size()) + ".");
      out.deps = merge_unjustified(below, path, nullptr);
      return an;
    }

    for (std::size_t t = 0; t < apply.tags.size(); ++t) {
      for (auto j : discharge_targets(apply.rule, t, below.size())) {
        if (below[j].discharge_tags.contains(apply.tags[t])) {
          an.rule_status = NodeStatus::error(std::string(info.surface) + ": tag " + std::string(1, apply.tags[t]) +
                                             " is already discharged further up this branch; use a fresh tag.");
          record(path, an.rule_status.message);
          out.deps = merge_unjustified(below, path, &apply);
          return an;
        }
      }
    }

    const bool readable = out.formula && std::all_of(below.begin(), below.end(), [](const Visit& v) {
                            return v.formula.has_value() && v.deps.has_value();
                          });
    if (!readable) {
      out.deps = merge_unjustified(below, path, &apply);
      return an;
    }

    std::vector<Premise> premises;
    for (const auto& b : below) premises.push_back({*b.formula, b.deps->assumptions});
    auto verdict = check_step(*out.formula, premises, apply);
    if (std::holds_alternative<StepFail>(verdict)) {
      // The tagged assumption may still be written above an open premise.
      Apply waiting{apply.rule, {}};
      auto assumed = premises;
      bool deferred = false;
      for (std::size_t t = 0; t < apply.tags.size(); ++t) {
        bool absent = true, open = false;
        const auto targets = discharge_targets(apply.rule, t, below.size());
        for (auto j : targets) {
          absent = absent && !below[j].deps->assumptions.contains(apply.tags[t]);
          open = open || below[j].deps->open;
        }
        if (!absent || !open) {
          waiting.tags.push_back(apply.tags[t]);
        } else if (info.tags == TagArity::Optional) {
          deferred = true;
        } else if (apply.rule == RuleId::OrE && premises[0].formula.is(Formula::Kind::Or)) {
          const Formula& d = premises[0].formula;
          for (auto j : targets) assumed[j].deps.emplace(apply.tags[t], t == 0 ? d.lhs() : d.rhs());
          waiting.tags.push_back(apply.tags[t]);
          deferred = true;
        } else {
          waiting.tags.push_back(apply.tags[t]);
        }
      }
      if (deferred) {
        auto relaxed = check_step(*out.formula, assumed, waiting);
        if (is_ok(relaxed)) {
          // Nothing was discharged yet; the real assumption arrives later.
          auto& d = std::get<StepOk>(relaxed).discharged;
          for (std::size_t t = 0; t < apply.tags.size(); ++t) {
            bool present = false;
            for (auto j : discharge_targets(apply.rule, t, below.size()))
              present = present || below[j].deps->assumptions.contains(apply.tags[t]);
            if (!present) d.erase(apply.tags[t]);
          }
          verdict = std::move(relaxed);
        }
      }
    }
    if (const auto* f = std::get_if<StepFail>(&verdict)) {
      an.rule_status = NodeStatus::error(sentence(f->message));
      out.deps = merge_unjustified(below, path, &apply);
      return an;
    }

    const auto& discharged = std::get<StepOk>(verdict).discharged;
    std::string conflict;
    out.deps = merge(below, apply, &discharged, conflict);
    if (!conflict.empty()) {
      an.rule_status = NodeStatus::error(conflict);
      record(path, conflict);
      out.deps.reset();
      return an;
    }
    an.rule_status = NodeStatus::correct();
    return an;
  }

  const std::optional<DependencyError>& first_dependency_error() const { return dep_error_; }

 private:
  void record(const NodePath& path, const std::string& msg) {
    if (!dep_error_) dep_error_ = DependencyError{path, msg};
  }

  // Union of the premises' assumptions after removing what the annotation
  // discharges. With `discharged` null, every tag the annotation names is
  // removed from the premises it targets.
  static std::optional<Dependencies> merge(const std::vector<Visit>& below, const Apply& apply,
                                           const std::set<Tag>* discharged, std::string& conflict) {
    Dependencies out;
    for (std::size_t j = 0; j < below.size(); ++j) {
      if (!below[j].deps) return std::nullopt;
      AssumptionSet mine = below[j].deps->assumptions;
      out.open = out.open || below[j].deps->open;
      for (std::size_t t = 0; t < apply.tags.size(); ++t) {
        const auto targets = discharge_targets(apply.rule, t, below.size());
        if (std::find(targets.begin(), targets.end(), j) == targets.end()) continue;
        if (discharged && !discharged->contains(apply.tags[t])) continue;
        mine.erase(apply.tags[t]);
      }
      for (const auto& [tag, f] : mine) {
        auto [it, inserted] = out.assumptions.emplace(tag, f);
        if (!inserted && it->second != f) {
          conflict = "Tag " + std::string(1, tag) + " names two different assumptions, '" + print_formula(it->second) +
                     "' and '" + print_formula(f) + "'; each assumption needs its own tag.";
          return out;
        }
      }
    }
    return out;
  }

  // Dependencies of a node whose step could not be validated: it behaves as
  // an open premise for completeness purposes.
  std::optional<Dependencies> merge_unjustified(const std::vector<Visit>& below, const NodePath& path,
                                                const Apply* apply) {
    std::string conflict;
    const Apply none{RuleId::TrueI, {}};
    auto d = merge(below, apply ? *apply : none, nullptr, conflict);
    if (!conflict.empty()) {
      record(path, conflict);
      return std::nullopt;
    }
    if (d) d->open = true;
    return d;
  }

  std::optional<DependencyError> dep_error_;
};

void collect_status(const AnnotatedNode& n, bool& error, bool& pending) {
  error = error || n.formula_status.is_error() || n.rule_status.is_error();
  pending = pending || n.formula_status.is_pending() || n.rule_status.is_pending();
  for (const auto& p : n.premises) collect_status(p, error, pending);
}

json encode_annotated_node(const AnnotatedNode& n) {
  json premises = json::array();
  for (const auto& p : n.premises) premises.push_back(encode_annotated_node(p));
  json j{{"formula", n.formula_text},
         {"rule", n.rule_text},
         {"premises", std::move(premises)},
         {"status", {{"formula", to_string(n.formula_status.kind)}, {"rule", to_string(n.rule_status.kind)}}}};
  if (auto m = n.message()) j["message"] = *m;
  return j;
}

}  // namespace

Expected<Dependencies, DependencyError> dependencies(const ProofNode& node) {
  TreeChecker checker;
  NodePath path;
  Visit v;
  checker.annotate(node, path, v);
  if (checker.first_dependency_error()) return unexpected(*checker.first_dependency_error());
  if (!v.deps) return unexpected(DependencyError{{}, "some assumption formula above this node does not parse"});
  return *v.deps;
}

CheckResult check_tree(const ProofTree& tree) {
  TreeChecker checker;
  NodePath path;
  Visit v;
  AnnotatedNode root = checker.annotate(tree.root(), path, v);

  bool error = false;
  bool pending = false;
  collect_status(root, error, pending);
  ProofOutcome outcome = ProofOutcome::Complete;
  if (error) {
    outcome = ProofOutcome::HasErrors;
  } else if (pending || !v.deps || !v.deps->empty()) {
    outcome = ProofOutcome::Incomplete;
  }
  return {AnnotatedTree{tree.goal(), std::move(root)}, outcome};
}

json encode_annotated(const AnnotatedTree& tree) {
  return json{{"goal", tree.goal}, {"root", encode_annotated_node(tree.root)}};
}

}  // namespace oprover
