#include "oprover/eventlog.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace oprover {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr std::pair<EventKind, std::string_view> kKindNames[] = {
    {EventKind::AddPremise, "add-premise"}, {EventKind::DeleteLeaf, "delete-leaf"}, {EventKind::SetFormula, "set-formula"},
    {EventKind::SetRule, "set-rule"},       {EventKind::Check, "check"},            {EventKind::Undo, "undo"},
};

bool has_value(EventKind k) { return k == EventKind::SetFormula || k == EventKind::SetRule; }

}  // namespace

std::string_view to_string(EventKind k) {
  for (const auto& [kind, name] : kKindNames) {
    if (kind == k) return name;
  }
  return "?";
}

std::optional<EventKind> event_kind_from_string(std::string_view s) {
  for (const auto& [kind, name] : kKindNames) {
    if (name == s) return kind;
  }
  return std::nullopt;
}

bool is_edit(EventKind k) { return k != EventKind::Check && k != EventKind::Undo; }

std::optional<EditOp> to_edit_op(const Event& e) {
  if (!is_edit(e.kind) || !e.path) return std::nullopt;
  switch (e.kind) {
    case EventKind::AddPremise: return AddPremise{*e.path};
    case EventKind::DeleteLeaf: return DeleteLeaf{*e.path};
    case EventKind::SetFormula: return SetFormula{*e.path, e.value.value_or("")};
    case EventKind::SetRule: return SetRule{*e.path, e.value.value_or("")};
    default: return std::nullopt;
  }
}

const ProofTree* ReplayState::find(const std::string& exercise, std::size_t index) const {
  auto it = trees_.find({exercise, index});
  return it == trees_.end() ? nullptr : &it->second;
}

Expected<ReplayState, ReplayError> replay(const EventLog& log, const Catalog& catalog) {
  // Per tree: the initial state followed by the state after each effective edit.
  std::map<TreeKey, std::vector<ProofTree>> history;
  for (std::size_t i = 0; i < log.events.size(); ++i) {
    const Event& e = log.events[i];
    const Exercise* ex = catalog.find(e.exercise_id);
    if (!ex) return unexpected(ReplayError{i, "unknown exercise \"" + e.exercise_id + "\""});
    if (e.tree_index >= ex->goals.size()) {
      return unexpected(ReplayError{i, "exercise " + e.exercise_id + " has no tree " + std::to_string(e.tree_index)});
    }
    if (e.kind == EventKind::Check) continue;

    auto [it, fresh] = history.try_emplace({e.exercise_id, e.tree_index});
    auto& states = it->second;
    if (fresh) states.emplace_back(ex->goals[e.tree_index]);

    if (e.kind == EventKind::Undo) {
      if (states.size() > 1) states.pop_back();
      continue;
    }
    auto op = to_edit_op(e);
    if (!op) return unexpected(ReplayError{i, std::string(to_string(e.kind)) + " event without a path"});
    auto next = apply_edit(states.back(), *op);
    if (!next) return unexpected(ReplayError{i, next.error().message});
    states.push_back(std::move(*next));
  }

  ReplayState out;
  for (auto& [key, states] : history) {
    if (states.back() != states.front()) out.trees_.emplace(key, std::move(states.back()));
  }
  return out;
}

Expected<ProofTree, ReplayError> replayed_tree(const EventLog& log, const Catalog& catalog, const std::string& exercise,
                                               std::size_t index) {
  auto state = replay(log, catalog);
  if (!state) return unexpected(state.error());
  if (const auto* t = state->find(exercise, index)) return *t;
  const Exercise* ex = catalog.find(exercise);
  if (!ex || index >= ex->goals.size()) return unexpected(ReplayError{log.events.size(), "no such tree"});
  return ProofTree(ex->goals[index]);
}

std::string encode_event(const Event& e) {
  ordered_json j;
  j["t"] = e.t;
  j["exercise"] = e.exercise_id;
  j["tree"] = e.tree_index;
  j["op"] = std::string(to_string(e.kind));
  if (e.path) j["path"] = *e.path;
  if (e.value) j["value"] = *e.value;
  return j.dump(-1, ' ', false, ordered_json::error_handler_t::replace);
}

std::string export_log(const EventLog& log) {
  std::string out;
  for (const auto& e : log.events) {
    out += encode_event(e);
    out += '\n';
  }
  return out;
}

void export_log(const EventLog& log, const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);
  out << export_log(log);
}

namespace {

Expected<Event, std::string> decode_event(const json& j) {
  if (!j.is_object()) return unexpected(std::string("expected a JSON object"));
  for (const auto& [key, _] : j.items()) {
    if (key != "t" && key != "exercise" && key != "tree" && key != "op" && key != "path" && key != "value") {
      return unexpected("unexpected key \"" + key + "\"");
    }
  }
  Event e;
  if (!j.contains("t") || !j["t"].is_number_integer()) return unexpected(std::string("\"t\" must be an integer"));
  e.t = j["t"].get<std::int64_t>();
  if (!j.contains("exercise") || !j["exercise"].is_string()) {
    return unexpected(std::string("\"exercise\" must be a string"));
  }
  e.exercise_id = j["exercise"].get<std::string>();
  if (!j.contains("tree") || !j["tree"].is_number_unsigned()) {
    return unexpected(std::string("\"tree\" must be a nonnegative integer"));
  }
  e.tree_index = j["tree"].get<std::size_t>();
  if (!j.contains("op") || !j["op"].is_string()) return unexpected(std::string("\"op\" must be a string"));
  auto kind = event_kind_from_string(j["op"].get<std::string>());
  if (!kind) return unexpected("unknown op \"" + j["op"].get<std::string>() + "\"");
  e.kind = *kind;

  if (j.contains("path")) {
    if (!is_edit(e.kind)) return unexpected("\"path\" is not allowed on " + std::string(to_string(e.kind)) + " events");
    const auto& p = j["path"];
    if (!p.is_array()) return unexpected(std::string("\"path\" must be an array"));
    NodePath path;
    for (const auto& idx : p) {
      if (!idx.is_number_unsigned()) return unexpected(std::string("\"path\" entries must be nonnegative integers"));
      path.push_back(idx.get<std::size_t>());
    }
    e.path = std::move(path);
  } else if (is_edit(e.kind)) {
    return unexpected(std::string(to_string(e.kind)) + " events need a \"path\"");
  }

  if (j.contains("value")) {
    if (!has_value(e.kind)) return unexpected("\"value\" is not allowed on " + std::string(to_string(e.kind)) + " events");
    if (!j["value"].is_string()) return unexpected(std::string("\"value\" must be a string"));
    e.value = j["value"].get<std::string>();
  } else if (has_value(e.kind)) {
    return unexpected(std::string(to_string(e.kind)) + " events need a \"value\"");
  }
  return e;
}

}  // namespace

Expected<EventLog, ImportError> import_log(std::string_view text) {
  EventLog log;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    ++line_no;
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;

    json j = json::parse(line, nullptr, false);
    if (j.is_discarded()) return unexpected(ImportError{line_no, "not a valid JSON record"});
    auto e = decode_event(j);
    if (!e) return unexpected(ImportError{line_no, e.error()});
    if (!log.events.empty() && e->t < log.events.back().t) {
      return unexpected(ImportError{line_no, "timestamp " + std::to_string(e->t) + " is earlier than the previous event's " +
                                                 std::to_string(log.events.back().t)});
    }
    log.events.push_back(std::move(*e));
  }
  return log;
}

Expected<EventLog, ImportError> import_log_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) return unexpected(ImportError{0, "cannot read " + file.string()});
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  return import_log(std::string_view(text));
}

}  // namespace oprover
