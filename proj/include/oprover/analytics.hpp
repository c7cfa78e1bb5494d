#pragma once

// Behavioral metrics over exported editing logs, one log per student.

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oprover/eventlog.hpp"
#include "oprover/expected.hpp"

namespace oprover::analytics {

/// Orders ids like "2-b" < "10-a": leading number first, then the rest.
struct ExerciseIdLess {
  bool operator()(std::string_view a, std::string_view b) const;
  using is_transparent = void;
};

template <typename T>
using PerExercise = std::map<std::string, T, ExerciseIdLess>;

inline constexpr std::chrono::minutes kDefaultGap{10};

struct ExerciseMetrics {
  std::string exercise_id;
  std::size_t attempts = 0;
  double total_minutes = 0;
  std::size_t checks = 0;
  std::size_t additions = 0;
  std::size_t deletions = 0;
  std::size_t edits = 0;
  std::optional<double> edits_per_check;
  std::optional<double> deletions_per_addition;
};

/// Students with at least one edit event on the exercise.
PerExercise<std::size_t> attempts(const std::vector<EventLog>& logs);

/// Sum of gaps between consecutive events of a student's log, credited to the
/// earlier event's exercise; gaps longer than `gap_threshold` count as breaks.
PerExercise<double> time_spent(const std::vector<EventLog>& logs,
                               std::chrono::milliseconds gap_threshold = kDefaultGap);

PerExercise<std::size_t> checks_per_exercise(const std::vector<EventLog>& logs);
PerExercise<std::optional<double>> edit_check_ratio(const std::vector<EventLog>& logs);
PerExercise<std::optional<double>> deletion_addition_ratio(const std::vector<EventLog>& logs);

std::vector<ExerciseMetrics> compute_metrics(const std::vector<EventLog>& logs,
                                             std::chrono::milliseconds gap_threshold = kDefaultGap);

/// Shortest round-trip decimal, always with a fractional part ("8.0").
std::string format_number(double v);
/// format_number, or "n/a" when undefined.
std::string format_ratio(const std::optional<double>& v);

enum class Metric { Attempts, Time, Checks, EditCheckRatio, DeletionAdditionRatio, All };

std::optional<Metric> metric_from_string(std::string_view s);

/// CSV with a header row and one row per exercise.
std::string to_csv(Metric metric, const std::vector<ExerciseMetrics>& rows);

struct LoadError {
  std::string message;
};

/// Imports every *.jsonl file of a directory, in file-name order.
Expected<std::vector<EventLog>, LoadError> load_logs(const std::filesystem::path& dir);

}  // namespace oprover::analytics
