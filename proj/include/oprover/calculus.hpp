#pragma once

// Natural-deduction rules with tagged assumptions and discharge, and the
// single-step validator the tree checker calls at every inner node.

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "oprover/expected.hpp"
#include "oprover/formula.hpp"

namespace oprover {

enum class RuleId {
  AndI,
  AndE,
  OrI,
  OrE,
  ImpI,
  ImpE,
  IffI,
  IffE,
  NotI,
  NotE,
  ForallI,
  ForallE,
  ExistsI,
  ExistsE,
  FalseE,
  TrueI,
};

inline constexpr std::size_t kRuleCount = 16;

enum class TagArity {
  None,      // no tags
  Optional,  // zero or one
  Two,       // exactly two
};

struct RuleInfo {
  RuleId id;
  std::string_view surface;
  std::size_t premises;
  TagArity tags;
  std::string_view schema;
};

/// The rule panel: one entry per RuleId, in enumeration order.
const std::array<RuleInfo, kRuleCount>& rule_catalog();
const RuleInfo& rule_info(RuleId id);

/// A single lowercase Latin letter.
using Tag = char;

struct Apply {
  RuleId rule;
  std::vector<Tag> tags;
  friend bool operator==(const Apply&, const Apply&) = default;
};

struct Assume {
  Tag tag;
  friend bool operator==(const Assume&, const Assume&) = default;
};

using RuleAnnotation = std::variant<Apply, Assume>;

Expected<RuleAnnotation, ParseError> parse_rule_annotation(std::string_view text);
std::string print_rule_annotation(const RuleAnnotation& a);

/// Undischarged assumptions a subderivation depends on; a tag maps to one formula.
using AssumptionSet = std::map<Tag, Formula>;

struct Premise {
  Formula formula;
  AssumptionSet deps;
};

struct StepOk {
  std::set<Tag> discharged;
  friend bool operator==(const StepOk&, const StepOk&) = default;
};

struct StepFail {
  std::string message;
};

using StepVerdict = std::variant<StepOk, StepFail>;

inline bool is_ok(const StepVerdict& v) { return std::holds_alternative<StepOk>(v); }

/// Premise indices from which the tag at `tag_index` of an annotation of
/// `rule` is discharged.
std::vector<std::size_t> discharge_targets(RuleId rule, std::size_t tag_index, std::size_t premise_count);

StepVerdict check_step(const Formula& conclusion, const std::vector<Premise>& premises, const Apply& annotation);

}  // namespace oprover
