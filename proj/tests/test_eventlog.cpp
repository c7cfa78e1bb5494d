#include <filesystem>
#include <random>

#include <gtest/gtest.h>

#include "oprover/analytics.hpp"
#include "oprover/eventlog.hpp"
#include "support/fixtures.hpp"
#include "support/proofs.hpp"

namespace oprover {
namespace {

const Catalog& catalog() {
  static const Catalog c = testing::test_catalog();
  return c;
}

std::vector<std::string> all_ids() {
  std::vector<std::string> ids;
  for (const auto& e : catalog().exercises()) ids.push_back(e.id);
  return ids;
}

Event ev(std::int64_t t, EventKind k, std::optional<NodePath> path = {}, std::optional<std::string> value = {}) {
  return Event{t, "6-d", 0, k, std::move(path), std::move(value)};
}

TEST(Replay, EmptyLog) {
  auto s = replay(EventLog{}, catalog());
  ASSERT_TRUE(s);
  EXPECT_TRUE(s->trees().empty());
}

TEST(Replay, CanonicalSessionBuildsTheCanonicalTree) {
  const EventLog log{testing::eq1_edit_session()};
  ASSERT_EQ(log.events.size(), 14u);
  for (const auto& e : log.events) EXPECT_TRUE(is_edit(e.kind));
  auto s = replay(log, catalog());
  ASSERT_TRUE(s) << s.error().message;
  ASSERT_EQ(s->trees().size(), 1u);
  const ProofTree* t = s->find("6-d", 0);
  ASSERT_TRUE(t);
  EXPECT_EQ(*t, testing::canonical_eq1());
}

TEST(Replay, UndoTwiceRestoresGoalOnly) {
  const EventLog log{{ev(1, EventKind::AddPremise, NodePath{}), ev(2, EventKind::SetFormula, NodePath{0}, "P"),
                      ev(3, EventKind::Undo), ev(4, EventKind::Undo)}};
  auto s = replay(log, catalog());
  ASSERT_TRUE(s);
  EXPECT_EQ(s->find("6-d", 0), nullptr);
  auto t = replayed_tree(log, catalog(), "6-d", 0);
  ASSERT_TRUE(t);
  EXPECT_EQ(*t, ProofTree(testing::kEq1Goal));
}

TEST(Replay, UndoSkipsChecksAndIsPerTree) {
  EventLog log{{ev(1, EventKind::AddPremise, NodePath{}), ev(2, EventKind::SetFormula, NodePath{0}, "P"),
                Event{3, "1-a", 0, EventKind::AddPremise, NodePath{}, {}}, ev(4, EventKind::Check),
                ev(5, EventKind::Undo)}};
  auto s = replay(log, catalog());
  ASSERT_TRUE(s);
  const ProofTree* t = s->find("6-d", 0);
  ASSERT_TRUE(t);
  EXPECT_EQ(t->root().premises.at(0).formula_text, "");
  EXPECT_TRUE(s->find("1-a", 0));
}

TEST(Replay, UndoWithNothingToUndoIsANoOp) {
  auto s = replay(EventLog{{ev(1, EventKind::Undo), ev(2, EventKind::AddPremise, NodePath{})}}, catalog());
  ASSERT_TRUE(s);
  EXPECT_EQ(s->find("6-d", 0)->root().premises.size(), 1u);
}

TEST(Replay, ErrorsNameTheFirstBadEvent) {
  auto bad_path = replay(EventLog{{ev(1, EventKind::AddPremise, NodePath{}), ev(2, EventKind::SetRule, NodePath{3}, "a")}},
                         catalog());
  ASSERT_FALSE(bad_path);
  EXPECT_EQ(bad_path.error().event_index, 1u);

  auto unknown = replay(EventLog{{Event{1, "99-z", 0, EventKind::Check, {}, {}}}}, catalog());
  ASSERT_FALSE(unknown);
  EXPECT_EQ(unknown.error().event_index, 0u);

  auto no_tree = replay(EventLog{{Event{1, "6-d", 1, EventKind::AddPremise, NodePath{}, {}}}}, catalog());
  ASSERT_FALSE(no_tree);
}

TEST(Replay, UndoInvertsAnyEdit) {
  std::mt19937 rng(21);
  const auto ids = all_ids();
  for (int i = 0; i < 50; ++i) {
    EventLog log = testing::random_valid_log(rng, {ids[0], ids[1], "6-d"}, 120);
    auto base = replay(log, catalog());
    ASSERT_TRUE(base) << base.error().message;
    EventLog extended = log;
    const std::int64_t t = log.events.empty() ? 0 : log.events.back().t;
    extended.events.push_back(Event{t, "6-d", 0, EventKind::AddPremise, NodePath{}, {}});
    extended.events.push_back(Event{t, "6-d", 0, EventKind::Undo, {}, {}});
    auto after = replay(extended, catalog());
    ASSERT_TRUE(after);
    EXPECT_EQ(*after, *base);
  }
}

TEST(Export, KeyOrderAndFields) {
  EXPECT_EQ(encode_event(Event{1700000000000, "6-d", 0, EventKind::SetRule, NodePath{0}, "a"}),
            R"({"t":1700000000000,"exercise":"6-d","tree":0,"op":"set-rule","path":[0],"value":"a"})");
  EXPECT_EQ(encode_event(Event{5, "1-a", 2, EventKind::Check, {}, {}}), R"({"t":5,"exercise":"1-a","tree":2,"op":"check"})");
  EXPECT_EQ(encode_event(Event{5, "1-a", 0, EventKind::AddPremise, NodePath{}, {}}),
            R"({"t":5,"exercise":"1-a","tree":0,"op":"add-premise","path":[]})");
  EXPECT_EQ(encode_event(Event{5, "1-a", 0, EventKind::SetFormula, NodePath{1, 0}, "A /\\ \"B\""}),
            R"({"t":5,"exercise":"1-a","tree":0,"op":"set-formula","path":[1,0],"value":"A /\\ \"B\""})");
}

TEST(Export, RoundTripRandomLogs) {
  std::mt19937 rng(22);
  const auto ids = all_ids();
  for (int i = 0; i < 100; ++i) {
    const EventLog log = testing::random_valid_log(rng, ids, 200);
    const std::string text = export_log(log);
    auto back = import_log(text);
    ASSERT_TRUE(back) << back.error().describe();
    EXPECT_EQ(*back, log);
    EXPECT_EQ(export_log(*back), text);
  }
}

TEST(Import, DecreasingTimestampOnLineSeven) {
  EventLog log;
  for (int i = 0; i < 10; ++i) log.events.push_back(ev(1000 + i, EventKind::Check));
  log.events[6].t = 10;
  auto r = import_log(export_log(log));
  ASSERT_FALSE(r);
  EXPECT_EQ(r.error().line, 7u);
  EXPECT_EQ(r.error().describe().rfind("line 7: ", 0), 0u);
}

TEST(Import, MalformedRecords) {
  const std::pair<const char*, std::size_t> cases[] = {
      {"not json\n", 1},
      {R"({"t":1,"exercise":"6-d","tree":0,"op":"check"})" "\n" R"({"t":2})" "\n", 2},
      {R"({"t":1,"exercise":"6-d","tree":0,"op":"jump"})" "\n", 1},
      {R"({"t":1,"exercise":"6-d","tree":0,"op":"check","path":[]})" "\n", 1},
      {R"({"t":1,"exercise":"6-d","tree":0,"op":"add-premise"})" "\n", 1},
      {R"({"t":1,"exercise":"6-d","tree":0,"op":"set-rule","path":[0]})" "\n", 1},
      {R"({"t":1,"exercise":"6-d","tree":0,"op":"add-premise","path":[],"value":"x"})" "\n", 1},
      {R"({"t":1,"exercise":"6-d","tree":-1,"op":"check"})" "\n", 1},
      {R"({"t":1,"exercise":"6-d","tree":0,"op":"delete-leaf","path":[-1]})" "\n", 1},
      {R"({"t":1,"exercise":"6-d","tree":0,"op":"check","who":"me"})" "\n", 1},
      {R"({"t":1.5,"exercise":"6-d","tree":0,"op":"check"})" "\n", 1},
      {"\n", 1},
  };
  for (const auto& [text, line] : cases) {
    auto r = import_log(text);
    ASSERT_FALSE(r) << text;
    EXPECT_EQ(r.error().line, line) << text << " -> " << r.error().describe();
  }
}

TEST(Import, FileRoundTripFeedsAnalytics) {
  const auto dir = std::filesystem::temp_directory_path() / "oprover_eventlog_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  EventLog log{testing::eq1_edit_session()};
  log.events.push_back(Event{log.events.back().t + 2000, "6-d", 0, EventKind::Check, {}, {}});
  export_log(log, dir / "student.jsonl");
  auto back = import_log_file(dir / "student.jsonl");
  ASSERT_TRUE(back) << back.error().describe();
  EXPECT_EQ(*back, log);

  auto logs = analytics::load_logs(dir);
  ASSERT_TRUE(logs) << logs.error().message;
  const auto rows = analytics::compute_metrics(*logs);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].exercise_id, "6-d");
  EXPECT_EQ(rows[0].edits, 14u);
  EXPECT_EQ(rows[0].checks, 1u);
  EXPECT_EQ(rows[0].attempts, 1u);
  EXPECT_DOUBLE_EQ(rows[0].total_minutes, 15.0 / 60.0);  // 13 one-second gaps, then two seconds
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace oprover
