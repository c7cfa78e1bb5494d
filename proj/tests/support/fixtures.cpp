#include "support/fixtures.hpp"

#include <stdexcept>

namespace oprover::testing {

namespace {

constexpr std::int64_t kMinute = 60'000;

const char* const kFormulaTexts[] = {"P", "Q /\\ P", "forall x . A(x)", "A(c)", "", "P ->", "!!P", "exists y . B(y)"};
const char* const kRuleTexts[] = {"a", "b", "->I a", "/\\E", "forallE", "existsI", "", "frob", "\\/E a b"};

struct Student {
  std::size_t index;
  std::mt19937& rng;
  Corpus& corpus;
  EventLog log;
  std::int64_t t = 0;
  std::string last_exercise;
  std::map<std::string, std::size_t> premises;  // open root premises per exercise

  void emit(const std::string& ex, EventKind kind, std::optional<NodePath> path = {},
            std::optional<std::string> value = {}) {
    PlannedTotals& p = corpus.truth[ex];
    if (is_edit(kind)) {
      p.students.insert(index);
      ++p.edits;
      if (kind == EventKind::AddPremise) ++p.additions;
      if (kind == EventKind::DeleteLeaf) ++p.deletions;
    } else if (kind == EventKind::Check) {
      ++p.checks;
    }
    log.events.push_back(Event{t, ex, 0, kind, std::move(path), std::move(value)});
    last_exercise = ex;
  }

  // Advances the clock, crediting the delta to the exercise of the event just
  // written when it stays within the threshold.
  void wait(std::int64_t delta) {
    if (!log.events.empty() && delta <= 10 * kMinute) corpus.truth[last_exercise].millis += delta;
    t += delta;
  }

  std::int64_t pick_gap() {
    switch (rng() % 10) {
      case 0: return 10 * kMinute;
      case 1: return 10 * kMinute + 1;
      case 2: return 11 * kMinute + static_cast<std::int64_t>(rng() % (50 * kMinute));
      case 3: return 0;
      default: return 1000 + static_cast<std::int64_t>(rng() % (3 * kMinute));
    }
  }

  void visit(const std::string& ex, bool check_only) {
    const std::size_t n = 1 + rng() % 12;
    for (std::size_t k = 0; k < n; ++k) {
      if (!log.events.empty()) wait(pick_gap());
      if (check_only) {
        emit(ex, EventKind::Check);
        continue;
      }
      std::size_t& open = premises[ex];
      const unsigned roll = rng() % 10;
      if (roll < 2) {
        emit(ex, EventKind::Check);
      } else if (roll < 4 || open == 0) {
        emit(ex, EventKind::AddPremise, NodePath{});
        ++open;
      } else if (roll < 5) {
        emit(ex, EventKind::DeleteLeaf, NodePath{open - 1});
        --open;
      } else {
        const bool formula = roll < 8;
        const NodePath at{rng() % open};
        if (formula) {
          emit(ex, EventKind::SetFormula, at, kFormulaTexts[rng() % std::size(kFormulaTexts)]);
        } else {
          emit(ex, EventKind::SetRule, at, kRuleTexts[rng() % std::size(kRuleTexts)]);
        }
        if (rng() % 4 == 0) {
          wait(pick_gap());
          emit(ex, EventKind::Undo);
        }
      }
    }
  }
};

std::vector<NodePath> paths_of(const ProofNode& n, NodePath& at) {
  std::vector<NodePath> out{at};
  for (std::size_t i = 0; i < n.premises.size(); ++i) {
    at.push_back(i);
    auto sub = paths_of(n.premises[i], at);
    out.insert(out.end(), sub.begin(), sub.end());
    at.pop_back();
  }
  return out;
}

}  // namespace

Corpus synthetic_corpus(const std::vector<std::string>& ids, std::size_t students, std::uint32_t seed) {
  std::mt19937 rng(seed);
  Corpus corpus;
  for (std::size_t s = 0; s < students; ++s) {
    Student st{s, rng, corpus, {}, 1'700'000'000'000 + static_cast<std::int64_t>(s) * 7 * kMinute, {}, {}};
    const std::size_t visits = 1 + rng() % 15;
    for (std::size_t v = 0; v < visits; ++v) {
      // Early exercises are visited more often, as in a course that thins out.
      const std::size_t span = 1 + rng() % ids.size();
      st.visit(ids[rng() % span], rng() % 8 == 0);
    }
    corpus.logs.push_back(std::move(st.log));
  }
  return corpus;
}

EventLog random_valid_log(std::mt19937& rng, const std::vector<std::string>& ids, std::size_t max_events) {
  const Catalog catalog = test_catalog();
  EventLog log;
  std::map<std::string, std::vector<ProofTree>> states;
  const std::size_t n = rng() % (max_events + 1);
  std::int64_t t = 1'700'000'000'000;
  std::string ex = ids[rng() % ids.size()];
  while (log.events.size() < n) {
    if (rng() % 20 == 0) ex = ids[rng() % ids.size()];
    t += rng() % 3 == 0 ? 0 : static_cast<std::int64_t>(rng() % 120'000);
    auto& stack = states[ex];
    if (stack.empty()) stack.emplace_back(catalog.find(ex)->goals.at(0));
    const ProofTree& cur = stack.back();

    const unsigned roll = rng() % 20;
    if (roll < 2) {
      log.events.push_back(Event{t, ex, 0, EventKind::Check, {}, {}});
      continue;
    }
    if (roll < 4) {
      log.events.push_back(Event{t, ex, 0, EventKind::Undo, {}, {}});
      if (stack.size() > 1) stack.pop_back();
      continue;
    }
    NodePath root;
    const auto paths = paths_of(cur.root(), root);
    const NodePath& at = paths[rng() % paths.size()];
    Event e{t, ex, 0, EventKind::AddPremise, at, {}};
    if (roll < 9) {
      if (at.size() >= 8) continue;
    } else if (roll < 12) {
      e.kind = EventKind::DeleteLeaf;
    } else if (roll < 16) {
      e.kind = EventKind::SetFormula;
      e.value = kFormulaTexts[rng() % std::size(kFormulaTexts)];
    } else {
      e.kind = EventKind::SetRule;
      e.value = kRuleTexts[rng() % std::size(kRuleTexts)];
    }
    auto next = apply_edit(cur, *to_edit_op(e));
    if (!next) continue;  // deleting an inner node or the root, setting the root formula
    log.events.push_back(std::move(e));
    stack.push_back(std::move(*next));
  }
  return log;
}

EventLog forty_edits_five_checks(const std::string& exercise) {
  EventLog log;
  std::int64_t t = 1'700'000'000'000;
  for (int i = 0; i < 45; ++i, t += 1000) {
    if (i % 9 == 8) {
      log.events.push_back(Event{t, exercise, 0, EventKind::Check, {}, {}});
    } else {
      log.events.push_back(Event{t, exercise, 0, EventKind::AddPremise, NodePath{}, {}});
    }
  }
  return log;
}

Catalog test_catalog() {
  auto c = load_catalog(OPROVER_CATALOG_PATH);
  if (!c) throw std::runtime_error(c.error().message);
  return *c;
}

}  // namespace oprover::testing
