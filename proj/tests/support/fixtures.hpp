#pragma once

// Synthetic editing logs whose metrics are known from the plan that generated
// them, not from the events.

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "oprover/eventlog.hpp"
#include "oprover/exercises.hpp"

namespace oprover::testing {

struct PlannedTotals {
  std::set<std::size_t> students;  // students who made at least one edit
  std::int64_t millis = 0;
  std::size_t checks = 0;
  std::size_t additions = 0;
  std::size_t deletions = 0;
  std::size_t edits = 0;
};

struct Corpus {
  std::vector<EventLog> logs;
  std::map<std::string, PlannedTotals> truth;
};

/// One log per student. Visits to exercises drawn from `ids`, with idle gaps
/// on both sides of the ten-minute threshold (including exactly ten minutes),
/// check-only visits, and undo events. Every log replays against a catalog
/// holding `ids`.
Corpus synthetic_corpus(const std::vector<std::string>& ids, std::size_t students = 36, std::uint32_t seed = 2024);

/// A random replay-valid log of at most `max_events` events over `ids`.
EventLog random_valid_log(std::mt19937& rng, const std::vector<std::string>& ids, std::size_t max_events);

/// One exercise, 40 edits and 5 checks.
EventLog forty_edits_five_checks(const std::string& exercise = "1-a");

Catalog test_catalog();

}  // namespace oprover::testing
