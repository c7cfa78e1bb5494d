#include "oprover/analytics.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <set>

namespace oprover::analytics {

namespace {

std::pair<long, std::string_view> split_id(std::string_view id) {
  std::size_t i = 0;
  long n = 0;
  while (i < id.size() && id[i] >= '0' && id[i] <= '9' && i < 9) {
    n = n * 10 + (id[i] - '0');
    ++i;
  }
  return {i == 0 ? std::numeric_limits<long>::max() : n, id.substr(i)};
}

struct Counts {
  std::set<std::size_t> students;
  std::size_t checks = 0;
  std::size_t additions = 0;
  std::size_t deletions = 0;
  std::size_t edits = 0;
  std::int64_t millis = 0;
};

PerExercise<Counts> tally(const std::vector<EventLog>& logs, std::chrono::milliseconds gap) {
  PerExercise<Counts> out;
  for (std::size_t s = 0; s < logs.size(); ++s) {
    const auto& events = logs[s].events;
    for (std::size_t i = 0; i < events.size(); ++i) {
      const Event& e = events[i];
      Counts& c = out[e.exercise_id];
      if (is_edit(e.kind)) {
        c.students.insert(s);
        ++c.edits;
        if (e.kind == EventKind::AddPremise) ++c.additions;
        if (e.kind == EventKind::DeleteLeaf) ++c.deletions;
      } else if (e.kind == EventKind::Check) {
        ++c.checks;
      }
      if (i + 1 < events.size()) {
        const std::int64_t delta = events[i + 1].t - e.t;
        if (delta >= 0 && delta <= gap.count()) c.millis += delta;
      }
    }
  }
  return out;
}

std::optional<double> ratio(std::size_t num, std::size_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

double minutes(std::int64_t ms) { return static_cast<double>(ms) / 60000.0; }

}  // namespace

bool ExerciseIdLess::operator()(std::string_view a, std::string_view b) const {
  auto [na, ra] = split_id(a);
  auto [nb, rb] = split_id(b);
  if (na != nb) return na < nb;
  if (ra != rb) return ra < rb;
  return a < b;
}

PerExercise<std::size_t> attempts(const std::vector<EventLog>& logs) {
  PerExercise<std::size_t> out;
  for (auto& [id, c] : tally(logs, kDefaultGap)) out[id] = c.students.size();
  return out;
}

PerExercise<double> time_spent(const std::vector<EventLog>& logs, std::chrono::milliseconds gap_threshold) {
  PerExercise<double> out;
  for (auto& [id, c] : tally(logs, gap_threshold)) out[id] = minutes(c.millis);
  return out;
}

PerExercise<std::size_t> checks_per_exercise(const std::vector<EventLog>& logs) {
  PerExercise<std::size_t> out;
  for (auto& [id, c] : tally(logs, kDefaultGap)) out[id] = c.checks;
  return out;
}

PerExercise<std::optional<double>> edit_check_ratio(const std::vector<EventLog>& logs) {
  PerExercise<std::optional<double>> out;
  for (auto& [id, c] : tally(logs, kDefaultGap)) out[id] = ratio(c.edits, c.checks);
  return out;
}

PerExercise<std::optional<double>> deletion_addition_ratio(const std::vector<EventLog>& logs) {
  PerExercise<std::optional<double>> out;
  for (auto& [id, c] : tally(logs, kDefaultGap)) out[id] = ratio(c.deletions, c.additions);
  return out;
}

std::vector<ExerciseMetrics> compute_metrics(const std::vector<EventLog>& logs, std::chrono::milliseconds gap_threshold) {
  std::vector<ExerciseMetrics> rows;
  for (auto& [id, c] : tally(logs, gap_threshold)) {
    ExerciseMetrics m;
    m.exercise_id = id;
    m.attempts = c.students.size();
    m.total_minutes = minutes(c.millis);
    m.checks = c.checks;
    m.additions = c.additions;
    m.deletions = c.deletions;
    m.edits = c.edits;
    m.edits_per_check = ratio(c.edits, c.checks);
    m.deletions_per_addition = ratio(c.deletions, c.additions);
    rows.push_back(std::move(m));
  }
  return rows;
}

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".eE") == std::string::npos && s.find_first_of("ni") == std::string::npos) s += ".0";
  return s;
}

std::string format_ratio(const std::optional<double>& v) { return v ? format_number(*v) : "n/a"; }

std::optional<Metric> metric_from_string(std::string_view s) {
  if (s == "attempts") return Metric::Attempts;
  if (s == "time") return Metric::Time;
  if (s == "checks") return Metric::Checks;
  if (s == "edit-check-ratio") return Metric::EditCheckRatio;
  if (s == "deletion-addition-ratio") return Metric::DeletionAdditionRatio;
  if (s == "all") return Metric::All;
  return std::nullopt;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string to_csv(Metric metric, const std::vector<ExerciseMetrics>& rows) {
  std::string out;
  switch (metric) {
    case Metric::Attempts: out = "exercise,attempts\n"; break;
    case Metric::Time: out = "exercise,minutes\n"; break;
    case Metric::Checks: out = "exercise,checks\n"; break;
    case Metric::EditCheckRatio: out = "exercise,edits,checks,edits_per_check\n"; break;
    case Metric::DeletionAdditionRatio: out = "exercise,deletions,additions,deletions_per_addition\n"; break;
    case Metric::All:
      out = "exercise,attempts,minutes,checks,additions,deletions,edits,edits_per_check,deletions_per_addition\n";
      break;
  }
  for (const auto& m : rows) {
    out += csv_field(m.exercise_id);
    switch (metric) {
      case Metric::Attempts: out += "," + std::to_string(m.attempts); break;
      case Metric::Time: out += "," + format_number(m.total_minutes); break;
      case Metric::Checks: out += "," + std::to_string(m.checks); break;
      case Metric::EditCheckRatio:
        out += "," + std::to_string(m.edits) + "," + std::to_string(m.checks) + "," + format_ratio(m.edits_per_check);
        break;
      case Metric::DeletionAdditionRatio:
        out += "," + std::to_string(m.deletions) + "," + std::to_string(m.additions) + "," +
               format_ratio(m.deletions_per_addition);
        break;
      case Metric::All:
        out += "," + std::to_string(m.attempts) + "," + format_number(m.total_minutes) + "," + std::to_string(m.checks) +
               "," + std::to_string(m.additions) + "," + std::to_string(m.deletions) + "," + std::to_string(m.edits) +
               "," + format_ratio(m.edits_per_check) + "," + format_ratio(m.deletions_per_addition);
        break;
    }
    out += '\n';
  }
  return out;
}

Expected<std::vector<EventLog>, LoadError> load_logs(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) return unexpected(LoadError{dir.string() + " is not a directory"});
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".jsonl") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<EventLog> logs;
  for (const auto& f : files) {
    auto log = import_log_file(f);
    if (!log) return unexpected(LoadError{f.filename().string() + ": " + log.error().describe()});
    logs.push_back(std::move(*log));
  }
  return logs;
}

}  // namespace oprover::analytics
