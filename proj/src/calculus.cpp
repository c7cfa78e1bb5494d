#include "oprover/calculus.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace oprover {

namespace {

using K = Formula::Kind;

constexpr std::array<RuleInfo, kRuleCount> kCatalog{{
    {RuleId::AndI, "/\\I", 2, TagArity::None, "from φ and ψ infer φ /\\ ψ"},
    {RuleId::AndE, "/\\E", 1, TagArity::None, "from φ /\\ ψ infer φ, or infer ψ"},
    {RuleId::OrI, "\\/I", 1, TagArity::None, "from φ infer φ \\/ ψ, or infer ψ \\/ φ"},
    {RuleId::OrE, "\\/E", 3, TagArity::Two,
     "from φ \\/ ψ, χ (assuming φ tagged a) and χ (assuming ψ tagged b) infer χ, discharging a and b"},
    {RuleId::ImpI, "->I", 1, TagArity::Optional, "from ψ infer φ -> ψ, discharging assumptions φ tagged a"},
    {RuleId::ImpE, "->E", 2, TagArity::None, "from φ -> ψ and φ infer ψ"},
    {RuleId::IffI, "<->I", 2, TagArity::None, "from φ -> ψ and ψ -> φ infer φ <-> ψ"},
    {RuleId::IffE, "<->E", 1, TagArity::None, "from φ <-> ψ infer φ -> ψ, or infer ψ -> φ"},
    {RuleId::NotI, "!I", 2, TagArity::Optional, "from ψ and !ψ infer !φ, discharging assumptions φ tagged a"},
    {RuleId::NotE, "!E", 2, TagArity::Optional, "from ψ and !ψ infer φ, discharging assumptions !φ tagged a"},
    {RuleId::ForallI, "forallI", 1, TagArity::None,
     "from φ[c/x] infer forall x . φ, where c occurs neither in the conclusion nor in any undischarged assumption"},
    {RuleId::ForallE, "forallE", 1, TagArity::None, "from forall x . φ infer φ[t/x] for any term t"},
    {RuleId::ExistsI, "existsI", 1, TagArity::None, "from φ[t/x] infer exists x . φ"},
    {RuleId::ExistsE, "existsE", 2, TagArity::Optional,
     "from exists x . φ and χ (assuming φ[c/x] tagged a) infer χ, discharging a, where c occurs neither in χ, "
     "exists x . φ, nor any other undischarged assumption"},
    {RuleId::FalseE, "FalseE", 1, TagArity::None, "from False infer any φ"},
    {RuleId::TrueI, "TrueI", 0, TagArity::None, "infer True from no premises"},
}};

bool is_tag_word(std::string_view w) {
  return w.size() == 1 && w[0] >= 'a' && w[0] <= 'z';
}

std::string tag_str(Tag t) { return std::string(1, t); }

StepFail fail(const RuleInfo& info, const std::string& what) {
  return StepFail{std::string(info.surface) + ": " + what};
}

std::string show(const Formula& f) { return "'" + print_formula(f) + "'"; }

std::string plural(std::size_t n, std::string_view word) {
  return std::to_string(n) + " " + std::string(word) + (n == 1 ? "" : "s");
}

// Checks a discharge of `tag` whose assumptions must all read `expected`.
// Returns an error message, or nothing when the discharge is fine.
std::optional<std::string> check_discharge(const std::vector<Premise>& premises, const std::vector<std::size_t>& targets,
                                           Tag tag, const Formula& expected, bool must_exist, bool& found) {
  found = false;
  for (auto i : targets) {
    auto it = premises[i].deps.find(tag);
    if (it == premises[i].deps.end()) continue;
    found = true;
    if (it->second != expected) {
      return "the assumption tagged " + tag_str(tag) + " is " + show(it->second) + ", but this rule can only discharge " +
             show(expected) + ".";
    }
  }
  if (!found && must_exist) {
    return "no undischarged assumption tagged " + tag_str(tag) + " occurs above this step.";
  }
  return std::nullopt;
}

std::optional<std::string> check_eigen_constant(const Term& witness, const std::string& role,
                                                const std::vector<std::pair<std::string, Formula>>& forbidden) {
  if (!witness.is_constant()) {
    return "the " + role + " must be a constant, but '" + witness.name + "' is a bound variable.";
  }
  for (const auto& [where, f] : forbidden) {
    if (constants_of(f).contains(witness.name)) {
      return "eigenvariable condition violated: the constant '" + witness.name + "' occurs in " + where + " " + show(f) +
             ".";
    }
  }
  return std::nullopt;
}

StepVerdict check_impl(const Formula& c, const std::vector<Premise>& ps, const Apply& a) {
  const RuleInfo& info = rule_info(a.rule);
  const std::size_t expected_tags = info.tags == TagArity::Two ? 2 : 0;
  if ((info.tags == TagArity::Optional && a.tags.size() > 1) ||
      (info.tags != TagArity::Optional && a.tags.size() != expected_tags)) {
    return fail(info, "wrong number of tags (" + std::to_string(a.tags.size()) + ").");
  }
  if (ps.size() != info.premises) {
    return fail(info, "the rule expects " + plural(info.premises, "premise") + " but the step has " +
                          std::to_string(ps.size()) + ".");
  }
  std::optional<Tag> tag;
  if (!a.tags.empty()) tag = a.tags.front();

  switch (a.rule) {
    case RuleId::AndI:
      if (!c.is(K::And)) return fail(info, "the conclusion " + show(c) + " is not a conjunction.");
      if (c.lhs() != ps[0].formula) return fail(info, "the left conjunct of the conclusion does not match the first premise.");
      if (c.rhs() != ps[1].formula) return fail(info, "the right conjunct of the conclusion does not match the second premise.");
      return StepOk{};

    case RuleId::AndE: {
      const Formula& p = ps[0].formula;
      if (!p.is(K::And)) return fail(info, "the premise " + show(p) + " is not a conjunction.");
      if (c != p.lhs() && c != p.rhs()) return fail(info, "the conclusion is neither conjunct of the premise.");
      return StepOk{};
    }

    case RuleId::OrI:
      if (!c.is(K::Or)) return fail(info, "the conclusion " + show(c) + " is not a disjunction.");
      if (c.lhs() != ps[0].formula && c.rhs() != ps[0].formula) {
        return fail(info, "the premise is neither disjunct of the conclusion.");
      }
      return StepOk{};

    case RuleId::OrE: {
      const Formula& d = ps[0].formula;
      if (!d.is(K::Or)) return fail(info, "the first premise " + show(d) + " is not a disjunction.");
      if (ps[1].formula != c) return fail(info, "the second premise does not match the conclusion.");
      if (ps[2].formula != c) return fail(info, "the third premise does not match the conclusion.");
      StepOk ok;
      const Formula* disjuncts[2] = {&d.lhs(), &d.rhs()};
      for (std::size_t i = 0; i < 2; ++i) {
        bool found = false;
        if (auto err = check_discharge(ps, discharge_targets(a.rule, i, 3), a.tags[i], *disjuncts[i], true, found)) {
          return fail(info, *err);
        }
        if (found) ok.discharged.insert(a.tags[i]);
      }
      return ok;
    }

    case RuleId::ImpI: {
      if (!c.is(K::Implies)) return fail(info, "the conclusion " + show(c) + " is not an implication.");
      if (c.rhs() != ps[0].formula) return fail(info, "the consequent of the conclusion does not match the premise.");
      StepOk ok;
      if (tag) {
        bool found = false;
        if (auto err = check_discharge(ps, {0}, *tag, c.lhs(), true, found)) return fail(info, *err);
        ok.discharged.insert(*tag);
      }
      return ok;
    }

    case RuleId::ImpE: {
      const Formula& cond = ps[0].formula;
      if (!cond.is(K::Implies)) return fail(info, "the first premise " + show(cond) + " is not an implication.");
      if (cond.lhs() != ps[1].formula) return fail(info, "the second premise does not match the antecedent of the first.");
      if (cond.rhs() != c) return fail(info, "the conclusion does not match the consequent of the first premise.");
      return StepOk{};
    }

    case RuleId::IffI:
      if (!c.is(K::Iff)) return fail(info, "the conclusion " + show(c) + " is not a biconditional.");
      if (ps[0].formula != Formula::implication(c.lhs(), c.rhs())) {
        return fail(info, "the first premise must be " + show(Formula::implication(c.lhs(), c.rhs())) + ".");
      }
      if (ps[1].formula != Formula::implication(c.rhs(), c.lhs())) {
        return fail(info, "the second premise must be " + show(Formula::implication(c.rhs(), c.lhs())) + ".");
      }
      return StepOk{};

    case RuleId::IffE: {
      const Formula& p = ps[0].formula;
      if (!p.is(K::Iff)) return fail(info, "the premise " + show(p) + " is not a biconditional.");
      if (c != Formula::implication(p.lhs(), p.rhs()) && c != Formula::implication(p.rhs(), p.lhs())) {
        return fail(info, "the conclusion is not an implication between the two sides of the premise.");
      }
      return StepOk{};
    }

    case RuleId::NotI:
    case RuleId::NotE: {
      if (ps[1].formula != Formula::negation(ps[0].formula)) {
        return fail(info, "the second premise must be the negation of the first.");
      }
      std::optional<Formula> discharged_formula;
      if (a.rule == RuleId::NotI) {
        if (!c.is(K::Not)) return fail(info, "the conclusion " + show(c) + " is not a negation.");
        discharged_formula = c.operand();
      } else {
        discharged_formula = Formula::negation(c);
      }
      StepOk ok;
      if (tag) {
        bool found = false;
        if (auto err = check_discharge(ps, {0, 1}, *tag, *discharged_formula, true, found)) return fail(info, *err);
        ok.discharged.insert(*tag);
      }
      return ok;
    }

    case RuleId::ForallI: {
      if (!c.is(K::Forall)) return fail(info, "the conclusion " + show(c) + " is not universally quantified.");
      auto m = match_instance(c.body(), c.name(), ps[0].formula);
      if (std::holds_alternative<NoMatch>(m)) {
        return fail(info, "the premise is not an instance of the body of " + show(c) + ".");
      }
      if (auto* w = std::get_if<Term>(&m)) {
        std::vector<std::pair<std::string, Formula>> forbidden{{"the conclusion", c}};
        for (const auto& [t, f] : ps[0].deps) forbidden.emplace_back("the undischarged assumption " + tag_str(t), f);
        if (auto err = check_eigen_constant(*w, "generalized term", forbidden)) return fail(info, *err);
      }
      return StepOk{};
    }

    case RuleId::ForallE: {
      const Formula& p = ps[0].formula;
      if (!p.is(K::Forall)) return fail(info, "the premise " + show(p) + " is not universally quantified.");
      if (std::holds_alternative<NoMatch>(match_instance(p.body(), p.name(), c))) {
        return fail(info, "the conclusion is not an instance of " + show(p) + " (witnesses disagree or shapes differ).");
      }
      return StepOk{};
    }

    case RuleId::ExistsI:
      if (!c.is(K::Exists)) return fail(info, "the conclusion " + show(c) + " is not existentially quantified.");
      if (std::holds_alternative<NoMatch>(match_instance(c.body(), c.name(), ps[0].formula))) {
        return fail(info, "the premise is not an instance of the body of " + show(c) + " (witnesses disagree or shapes differ).");
      }
      return StepOk{};

    case RuleId::ExistsE: {
      const Formula& ex = ps[0].formula;
      if (!ex.is(K::Exists)) return fail(info, "the first premise " + show(ex) + " is not existentially quantified.");
      if (ps[1].formula != c) return fail(info, "the second premise does not match the conclusion.");
      StepOk ok;
      if (!tag) return ok;
      auto it = ps[1].deps.find(*tag);
      if (it == ps[1].deps.end()) {
        return fail(info, "no undischarged assumption tagged " + tag_str(*tag) + " occurs above the second premise.");
      }
      const Formula& instance = it->second;
      auto m = match_instance(ex.body(), ex.name(), instance);
      if (std::holds_alternative<NoMatch>(m)) {
        return fail(info, "the assumption tagged " + tag_str(*tag) + " " + show(instance) + " is not an instance of the body of " +
                              show(ex) + ".");
      }
      if (auto* w = std::get_if<Term>(&m)) {
        std::vector<std::pair<std::string, Formula>> forbidden{{"the conclusion", c}, {"the existential premise", ex}};
        for (const auto& [t, f] : ps[1].deps) {
          if (t != *tag) forbidden.emplace_back("the undischarged assumption " + tag_str(t), f);
        }
        if (auto err = check_eigen_constant(*w, "instantiating term", forbidden)) return fail(info, *err);
      }
      ok.discharged.insert(*tag);
      return ok;
    }

    case RuleId::FalseE:
      if (!ps[0].formula.is(K::Falsity)) return fail(info, "the premise must be False.");
      return StepOk{};

    case RuleId::TrueI:
      if (!c.is(K::Truth)) return fail(info, "the conclusion must be True.");
      return StepOk{};
  }
  return fail(info, "unknown rule.");
}

}  // namespace

const std::array<RuleInfo, kRuleCount>& rule_catalog() { return kCatalog; }

const RuleInfo& rule_info(RuleId id) { return kCatalog[static_cast<std::size_t>(id)]; }

Expected<RuleAnnotation, ParseError> parse_rule_annotation(std::string_view text) {
  struct Word {
    std::size_t pos;
    std::string_view text;
  };
  std::vector<Word> words;
  for (std::size_t i = 0; i < text.size();) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    words.push_back({i, text.substr(i, j - i)});
    i = j;
  }
  if (words.empty()) return unexpected(ParseError{text.size(), "empty rule annotation"});

  if (words.size() == 1 && is_tag_word(words[0].text)) return RuleAnnotation{Assume{words[0].text[0]}};

  const RuleInfo* info = nullptr;
  for (const auto& r : kCatalog) {
    if (r.surface == words[0].text) info = &r;
  }
  if (!info) {
    return unexpected(ParseError{words[0].pos, "unknown rule '" + std::string(words[0].text) + "'"});
  }

  Apply apply{info->id, {}};
  for (std::size_t i = 1; i < words.size(); ++i) {
    if (!is_tag_word(words[i].text)) {
      return unexpected(
          ParseError{words[i].pos, "'" + std::string(words[i].text) + "' is not a tag (tags are single lowercase letters)"});
    }
    const Tag t = words[i].text[0];
    if (std::find(apply.tags.begin(), apply.tags.end(), t) != apply.tags.end()) {
      return unexpected(ParseError{words[i].pos, "tag " + tag_str(t) + " is listed twice"});
    }
    apply.tags.push_back(t);
  }

  const std::size_t n = apply.tags.size();
  const bool arity_ok = (info->tags == TagArity::None && n == 0) || (info->tags == TagArity::Optional && n <= 1) ||
                        (info->tags == TagArity::Two && n == 2);
  if (!arity_ok) {
    const char* want = info->tags == TagArity::None ? "no tags" : info->tags == TagArity::Optional ? "at most one tag"
                                                                                                 : "exactly two tags";
    const std::size_t pos = n > 0 ? words.back().pos : text.size();
    return unexpected(ParseError{pos, std::string(info->surface) + " takes " + want + ", got " + std::to_string(n)});
  }
  return RuleAnnotation{apply};
}

std::string print_rule_annotation(const RuleAnnotation& a) {
  if (const auto* as = std::get_if<Assume>(&a)) return tag_str(as->tag);
  const auto& ap = std::get<Apply>(a);
  std::string out(rule_info(ap.rule).surface);
  for (Tag t : ap.tags) {
    out += ' ';
    out += t;
  }
  return out;
}

std::vector<std::size_t> discharge_targets(RuleId rule, std::size_t tag_index, std::size_t premise_count) {
  switch (rule) {
    case RuleId::OrE:
      if (tag_index < 2 && tag_index + 1 < premise_count) return {tag_index + 1};
      return {};
    case RuleId::ExistsE:
      if (premise_count > 1) return {1};
      return {};
    case RuleId::ImpI:
    case RuleId::NotI:
    case RuleId::NotE: {
      std::vector<std::size_t> all(premise_count);
      for (std::size_t i = 0; i < premise_count; ++i) all[i] = i;
      return all;
    }
    default:
      return {};
  }
}

StepVerdict check_step(const Formula& conclusion, const std::vector<Premise>& premises, const Apply& annotation) {
  return check_impl(conclusion, premises, annotation);
}

}  // namespace oprover
