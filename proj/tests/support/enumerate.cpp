#include "support/enumerate.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <tuple>
#include <unordered_set>

namespace oprover::testing {

namespace {

using K = Formula::Kind;

std::string judgment_key(const Formula& f, const AssumptionSet& deps, const std::set<Tag>& tags) {
  std::string k = print_formula(f);
  k += " |";
  for (const auto& [t, g] : deps) {
    k += ' ';
    k += t;
    k += ':';
    k += print_formula(g);
    k += ';';
  }
  k += " |";
  k.append(tags.begin(), tags.end());
  return k;
}

std::vector<std::vector<Tag>> tag_variants(RuleId rule, const std::vector<Tag>& tags) {
  switch (rule_info(rule).tags) {
    case TagArity::None: return {{}};
    case TagArity::Optional: {
      std::vector<std::vector<Tag>> out{{}};
      for (Tag t : tags) out.push_back({t});
      return out;
    }
    case TagArity::Two: {
      std::vector<std::vector<Tag>> out;
      for (Tag a : tags) {
        for (Tag b : tags) {
          if (a != b) out.push_back({a, b});
        }
      }
      return out;
    }
  }
  return {{}};
}

// Mirrors what the tree checker does around check_step: the fresh-tag rule
// before, the assumption union after.
struct Stepper {
  const std::vector<Judgment>& pool;
  EnumerationStats& stats;

  std::optional<Judgment> step(RuleId rule, const std::vector<Tag>& tags, const std::vector<std::size_t>& prem,
                               const Formula& conclusion) {
    for (std::size_t t = 0; t < tags.size(); ++t) {
      for (auto j : discharge_targets(rule, t, prem.size())) {
        if (pool[prem[j]].discharge_tags.contains(tags[t])) return std::nullopt;
      }
    }
    std::vector<Premise> premises;
    for (auto i : prem) premises.push_back({pool[i].formula, pool[i].deps});
    const Apply apply{rule, tags};
    ++stats.step_checks;
    auto verdict = check_step(conclusion, premises, apply);
    const auto* ok = std::get_if<StepOk>(&verdict);
    if (!ok) return std::nullopt;

    Judgment out{conclusion, {}, {}, ProofNode{print_formula(conclusion), print_rule_annotation(apply), {}}, 0};
    for (std::size_t j = 0; j < prem.size(); ++j) {
      const Judgment& p = pool[prem[j]];
      AssumptionSet mine = p.deps;
      for (std::size_t t = 0; t < tags.size(); ++t) {
        const auto targets = discharge_targets(rule, t, prem.size());
        if (std::find(targets.begin(), targets.end(), j) != targets.end() && ok->discharged.contains(tags[t])) {
          mine.erase(tags[t]);
        }
      }
      for (const auto& [t, f] : mine) {
        auto [it, inserted] = out.deps.emplace(t, f);
        if (!inserted && it->second != f) return std::nullopt;
      }
      out.discharge_tags.insert(p.discharge_tags.begin(), p.discharge_tags.end());
      out.node.premises.push_back(p.node);
      out.depth = std::max(out.depth, p.depth + 1);
    }
    out.discharge_tags.insert(tags.begin(), tags.end());
    ++stats.accepted;
    return out;
  }
};

}  // namespace

std::vector<Formula> propositional_universe(const std::vector<std::string>& atoms) {
  std::vector<Formula> out;
  for (const auto& a : atoms) out.push_back(Formula::atom(a));
  out.push_back(Formula::truth());
  out.push_back(Formula::falsity());
  for (const auto& a : atoms) out.push_back(Formula::negation(Formula::atom(a)));
  for (K k : {K::And, K::Or, K::Implies, K::Iff}) {
    for (const auto& a : atoms) {
      for (const auto& b : atoms) out.push_back(Formula::binary(k, Formula::atom(a), Formula::atom(b)));
    }
  }
  return out;
}

const std::vector<RuleId>& propositional_rules() {
  static const std::vector<RuleId> rules{RuleId::AndI, RuleId::AndE, RuleId::OrI,  RuleId::OrE,
                                         RuleId::ImpI, RuleId::ImpE, RuleId::IffI, RuleId::IffE,
                                         RuleId::NotI, RuleId::NotE, RuleId::FalseE, RuleId::TrueI};
  return rules;
}

Enumeration enumerate_derivations(const EnumerationOptions& opts) {
  Enumeration e;
  e.universe = propositional_universe(opts.atoms);
  std::unordered_set<std::string> seen;

  auto add = [&](Judgment j) {
    if (seen.insert(judgment_key(j.formula, j.deps, j.discharge_tags)).second) e.pool.push_back(std::move(j));
  };

  for (const auto& f : e.universe) {
    for (Tag t : opts.tags) {
      add(Judgment{f, {{t, f}}, {}, ProofNode{print_formula(f), std::string(1, t), {}}, 1});
    }
  }
  add(Judgment{Formula::truth(), {}, {}, ProofNode{"True", "TrueI", {}}, 1});
  e.stats.per_level.push_back(e.pool.size());

  for (int level = 2; level <= opts.max_depth; ++level) {
    const std::size_t limit = e.pool.size();
    std::map<Formula, std::vector<std::size_t>> by_formula;
    for (std::size_t i = 0; i < limit; ++i) by_formula[e.pool[i].formula].push_back(i);
    auto with = [&](const Formula& f) -> const std::vector<std::size_t>& {
      static const std::vector<std::size_t> none;
      auto it = by_formula.find(f);
      return it == by_formula.end() ? none : it->second;
    };
    // Case premises of \/E, keyed by formula, tag, and the formula that tag assumes.
    std::map<std::tuple<Formula, Tag, Formula>, std::vector<std::size_t>> by_case;
    for (std::size_t i = 0; i < limit; ++i) {
      for (const auto& [t, g] : e.pool[i].deps) by_case[{e.pool[i].formula, t, g}].push_back(i);
    }
    auto cases = [&](const Formula& c, Tag t, const Formula& g) -> const std::vector<std::size_t>& {
      static const std::vector<std::size_t> none;
      auto it = by_case.find({c, t, g});
      return it == by_case.end() ? none : it->second;
    };
    auto fresh = [&](std::initializer_list<std::size_t> prem) {
      return std::any_of(prem.begin(), prem.end(), [&](std::size_t i) { return e.pool[i].depth == level - 1; });
    };

    std::vector<Judgment> found;
    Stepper s{e.pool, e.stats};
    auto run = [&](RuleId r, const std::vector<std::size_t>& prem, const Formula& c) {
      for (const auto& tags : tag_variants(r, opts.tags)) {
        if (auto j = s.step(r, tags, prem, c)) found.push_back(std::move(*j));
      }
    };

    for (std::size_t i = 0; i < limit; ++i) {
      if (e.pool[i].depth != level - 1) continue;
      for (RuleId r : {RuleId::AndE, RuleId::OrI, RuleId::ImpI, RuleId::IffE, RuleId::FalseE}) {
        for (const auto& c : e.universe) run(r, {i}, c);
      }
    }
    for (const auto& c : e.universe) {
      if (c.is(K::And)) {
        for (auto i : with(c.lhs()))
          for (auto j : with(c.rhs()))
            if (fresh({i, j})) run(RuleId::AndI, {i, j}, c);
      }
      if (c.is(K::Iff)) {
        for (auto i : with(Formula::implication(c.lhs(), c.rhs())))
          for (auto j : with(Formula::implication(c.rhs(), c.lhs())))
            if (fresh({i, j})) run(RuleId::IffI, {i, j}, c);
      }
    }
    for (std::size_t i = 0; i < limit; ++i) {
      const Formula& f = e.pool[i].formula;
      if (f.is(K::Implies)) {
        for (auto j : with(f.lhs()))
          if (fresh({i, j})) run(RuleId::ImpE, {i, j}, f.rhs());
      }
      for (auto j : with(Formula::negation(f))) {
        if (!fresh({i, j})) continue;
        for (const auto& c : e.universe) {
          run(RuleId::NotI, {i, j}, c);
          run(RuleId::NotE, {i, j}, c);
        }
      }
      if (f.is(K::Or)) {
        for (const auto& tags : tag_variants(RuleId::OrE, opts.tags))
          for (const auto& c : e.universe)
            for (auto j : cases(c, tags[0], f.lhs()))
              for (auto k : cases(c, tags[1], f.rhs()))
                if (fresh({i, j, k}))
                  if (auto r = s.step(RuleId::OrE, tags, {i, j, k}, c)) found.push_back(std::move(*r));
      }
    }
    for (auto& j : found) add(std::move(j));
    e.stats.per_level.push_back(e.pool.size() - limit);
  }
  return e;
}

std::size_t unfiltered_misses(const Enumeration& e, const EnumerationOptions& opts, std::mt19937& rng,
                              std::size_t draws, std::size_t* accepted) {
  std::unordered_set<std::string> seen;
  for (const auto& j : e.pool) seen.insert(judgment_key(j.formula, j.deps, j.discharge_tags));

  std::vector<std::size_t> shallow;
  for (std::size_t i = 0; i < e.pool.size(); ++i) {
    if (e.pool[i].depth < opts.max_depth) shallow.push_back(i);
  }
  const auto& rules = propositional_rules();
  EnumerationStats stats;
  Stepper s{e.pool, stats};
  std::size_t misses = 0, hits = 0;
  for (std::size_t n = 0; n < draws; ++n) {
    RuleId r = rules[rng() % rules.size()];
    auto variants = tag_variants(r, opts.tags);
    const auto& tags = variants[rng() % variants.size()];
    std::vector<std::size_t> prem;
    for (std::size_t k = 0; k < rule_info(r).premises; ++k) prem.push_back(shallow[rng() % shallow.size()]);
    const Formula& c = e.universe[rng() % e.universe.size()];
    auto j = s.step(r, tags, prem, c);
    if (!j || r == RuleId::TrueI) continue;
    ++hits;
    if (!seen.contains(judgment_key(j->formula, j->deps, j->discharge_tags))) ++misses;
  }
  if (accepted) *accepted = hits;
  return misses;
}

}  // namespace oprover::testing
