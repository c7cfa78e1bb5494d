#pragma once

// Append-only editing history. Trees are never stored, only derived by
// replaying edits from goal-only trees.
//
// Wire format: JSON Lines, one event per line, keys in this order:
//   {"t":1700000000000,"exercise":"6-d","tree":0,"op":"set-rule","path":[0],"value":"a"}
// `path` is present for edit ops only, `value` for set-formula/set-rule only.

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "oprover/derivation.hpp"
#include "oprover/exercises.hpp"
#include "oprover/expected.hpp"

namespace oprover {

enum class EventKind { AddPremise, DeleteLeaf, SetFormula, SetRule, Check, Undo };

std::string_view to_string(EventKind k);
std::optional<EventKind> event_kind_from_string(std::string_view s);
bool is_edit(EventKind k);

struct Event {
  std::int64_t t = 0;  // epoch milliseconds
  std::string exercise_id;
  std::size_t tree_index = 0;
  EventKind kind = EventKind::Check;
  std::optional<NodePath> path;
  std::optional<std::string> value;

  friend bool operator==(const Event&, const Event&) = default;
};

/// Edit operation an edit event denotes; nullopt for check/undo.
std::optional<EditOp> to_edit_op(const Event& e);

struct EventLog {
  std::vector<Event> events;
  friend bool operator==(const EventLog&, const EventLog&) = default;
};

struct ReplayError {
  std::size_t event_index;
  std::string message;
};

using TreeKey = std::pair<std::string, std::size_t>;

/// Trees whose current state differs from their goal-only start.
/// A missing key means the tree is still goal-only.
class ReplayState {
 public:
  const std::map<TreeKey, ProofTree>& trees() const { return trees_; }
  const ProofTree* find(const std::string& exercise, std::size_t index) const;

  friend bool operator==(const ReplayState&, const ReplayState&) = default;

 private:
  friend Expected<ReplayState, ReplayError> replay(const EventLog&, const Catalog&);
  std::map<TreeKey, ProofTree> trees_;
};

Expected<ReplayState, ReplayError> replay(const EventLog& log, const Catalog& catalog);

/// The state of one tree after replay: the replayed tree or the goal-only tree.
Expected<ProofTree, ReplayError> replayed_tree(const EventLog& log, const Catalog& catalog, const std::string& exercise,
                                               std::size_t index);

std::string encode_event(const Event& e);
std::string export_log(const EventLog& log);
void export_log(const EventLog& log, const std::filesystem::path& file);

struct ImportError {
  std::size_t line;  // 1-based
  std::string message;

  std::string describe() const { return "line " + std::to_string(line) + ": " + message; }
};

Expected<EventLog, ImportError> import_log(std::string_view text);
Expected<EventLog, ImportError> import_log_file(const std::filesystem::path& file);

}  // namespace oprover
