#include "ecplan/logic/optimizer.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "ecplan/logic/errors.hpp"
#include "ecplan/logic/evaluator.hpp"
#include "engine.hpp"

namespace ecplan::logic {

namespace {

struct CompiledChoice {
  std::int64_t lower = 0;
  std::optional<std::int64_t> upper;
  std::vector<std::size_t> candidates;  // indices into the candidate list
};

using Cost = std::map<std::int64_t, std::int64_t>;

// True if a is strictly better than b.
bool better(const Cost& a, const Cost& b) {
  std::set<std::int64_t> levels;
  for (const auto& [p, w] : a) levels.insert(p);
  for (const auto& [p, w] : b) levels.insert(p);
  for (auto it = levels.rbegin(); it != levels.rend(); ++it) {
    const auto wa = a.contains(*it) ? a.at(*it) : 0;
    const auto wb = b.contains(*it) ? b.at(*it) : 0;
    if (wa != wb) return wa < wb;
  }
  return false;
}

std::vector<Value> eval_terms(const std::vector<Term>& terms, const detail::Env& env) {
  std::vector<Value> out;
  for (const auto& t : terms) {
    auto v = detail::evaluate(t, env);
    if (!v) throw EvaluationError("unbound weak-constraint term " + t.str());
    out.push_back(std::move(*v));
  }
  return out;
}

}  // namespace

OptimalResult solve_optimal(const Program& source, const AtomSet& facts,
                            std::optional<std::int64_t> time) {
  const Program program = detail::substitute_constants(source);
  Program normal = program;
  normal.choices.clear();
  normal.weak_constraints.clear();
  Program base = normal;
  base.constraints.clear();
  const Evaluator base_eval(base);
  const Evaluator full_eval(normal);

  const detail::Store m0(base_eval.run(facts, time));

  std::vector<GroundAtom> candidates;
  std::map<GroundAtom, std::size_t> index;
  std::vector<CompiledChoice> choices;
  for (std::size_t ci = 0; ci < program.choices.size(); ++ci) {
    const auto& choice = program.choices[ci];
    CompiledChoice compiled{choice.lower, detail::choice_upper(choice, program), {}};
    std::set<std::size_t> mine;
    detail::SlotMap slots;
    std::vector<Literal> body;
    for (const auto& l : choice.body) body.push_back(detail::assign_slots(l, slots));
    std::vector<std::string> prebound;
    for (const auto& [name, slot] : slots) prebound.push_back(name);
    const auto body_plan = detail::plan_body(body, {}, ci + 1);
    // Elements extend the body slots independently.
    std::size_t slot_count = slots.size();
    std::vector<std::tuple<Atom, detail::BodyPlan>> elements;
    for (const auto& element : choice.elements) {
      detail::SlotMap local = slots;
      std::vector<Literal> cond;
      for (const auto& l : element.condition) cond.push_back(detail::assign_slots(l, local));
      Atom head = detail::assign_slots(element.atom, local);
      elements.emplace_back(std::move(head), detail::plan_body(cond, prebound, ci + 1));
      slot_count = std::max(slot_count, local.size());
    }
    detail::Env env{std::vector<std::optional<Value>>(slot_count), time};
    detail::enumerate(body_plan, 0, env, m0, [&](detail::Env& e) {
      for (const auto& [head, plan] : elements) {
        detail::enumerate(plan, 0, e, m0, [&](const detail::Env& inner) {
          GroundAtom g = detail::instantiate(head, inner);
          auto [it, inserted] = index.try_emplace(g, candidates.size());
          if (inserted) candidates.push_back(g);
          mine.insert(it->second);
        });
      }
    });
    compiled.candidates.assign(mine.begin(), mine.end());
    choices.push_back(std::move(compiled));
  }
  if (candidates.size() > kMaxChoiceAtoms)
    throw TooManyChoices(std::to_string(candidates.size()) + " candidate choice atoms exceed the limit of " +
                         std::to_string(kMaxChoiceAtoms));

  std::vector<detail::CompiledRule> weak;
  for (std::size_t i = 0; i < program.weak_constraints.size(); ++i) {
    NormalRule as_rule{Atom{"", {}}, program.weak_constraints[i].body};
    weak.push_back(detail::compile_rule(as_rule, i + 1));
  }
  // Weak-constraint terms use the same slot numbering as the compiled body.
  std::vector<std::tuple<Term, Term, std::vector<Term>>> weak_terms;
  for (const auto& w : program.weak_constraints) {
    detail::SlotMap slots;
    for (const auto& l : w.body) detail::assign_slots(l, slots);
    std::vector<Term> terms;
    for (const auto& t : w.terms) terms.push_back(detail::assign_slots(t, slots));
    weak_terms.emplace_back(detail::assign_slots(w.weight, slots), detail::assign_slots(w.priority, slots),
                            std::move(terms));
  }

  OptimalResult best;
  bool found = false;
  std::set<AtomSet> seen;
  const std::size_t n = candidates.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    bool within = true;
    for (const auto& c : choices) {
      std::int64_t count = 0;
      for (auto i : c.candidates) count += (mask >> i) & 1U;
      if (count < c.lower || (c.upper && count > *c.upper)) {
        within = false;
        break;
      }
    }
    if (!within) continue;
    AtomSet input = facts;
    AtomSet chosen;
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1U) {
        input.insert(candidates[i]);
        chosen.insert(candidates[i]);
      }
    }
    AtomSet model;
    try {
      model = full_eval.run(input, time);
    } catch (const Unsatisfiable&) {
      continue;
    }
    if (!seen.insert(model).second) continue;
    ++best.models_considered;

    const detail::Store store(model);
    Cost cost;
    std::set<std::tuple<std::int64_t, std::int64_t, std::vector<Value>>> violations;
    for (std::size_t i = 0; i < weak.size(); ++i) {
      const auto& [weight_t, priority_t, terms] = weak_terms[i];
      detail::Env env{std::vector<std::optional<Value>>(static_cast<std::size_t>(weak[i].slot_count)), time};
      detail::enumerate(weak[i].body, 0, env, store, [&](const detail::Env& e) {
        auto w = detail::evaluate(weight_t, e);
        auto p = detail::evaluate(priority_t, e);
        if (!w || !p || !w->is_integer() || !p->is_integer())
          throw EvaluationError("weak-constraint weight and priority must be integers");
        violations.emplace(w->number(), p->number(), eval_terms(terms, e));
      });
    }
    for (const auto& [w, p, terms] : violations) cost[p] += w;

    if (!found || better(cost, best.cost) || (!better(best.cost, cost) && model < best.answer_set)) {
      best.answer_set = std::move(model);
      best.chosen = std::move(chosen);
      best.cost = std::move(cost);
      found = true;
    }
  }
  if (!found) throw Unsatisfiable("no choice subset yields an answer set");
  return best;
}

}  // namespace ecplan::logic
