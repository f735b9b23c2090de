#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ecplan/logic/program.hpp"

namespace ecplan::logic::detail {

/// Variable name -> slot index, per statement.
using SlotMap = std::map<std::string, int>;

/// Variable assignment plus the time step used for `t`.
struct Env {
  std::vector<std::optional<Value>> slots;
  std::optional<std::int64_t> time;
};

/// Copies `term` with variable slots resolved through `slots` (new names are
/// appended).
Term assign_slots(const Term& term, SlotMap& slots);
Atom assign_slots(const Atom& atom, SlotMap& slots);
Literal assign_slots(const Literal& literal, SlotMap& slots);

/// Evaluates a term; nullopt if it mentions an unbound variable.
std::optional<Value> evaluate(const Term& term, const Env& env);

/// Ground atom under `env`; throws EvaluationError if not fully bound.
GroundAtom instantiate(const Atom& atom, const Env& env);

bool compare(const Value& lhs, CompareOp op, const Value& rhs);

/// Atoms indexed by signature. Node addresses in the set are stable.
class Store {
 public:
  Store() = default;
  explicit Store(const AtomSet& atoms) {
    for (const auto& a : atoms) insert(a);
  }
  bool insert(const GroundAtom& atom);
  [[nodiscard]] bool contains(const GroundAtom& atom) const { return atoms_.contains(atom); }
  [[nodiscard]] const std::vector<const GroundAtom*>& with(const Signature& sig) const;
  [[nodiscard]] const AtomSet& atoms() const { return atoms_; }

 private:
  AtomSet atoms_;
  std::map<Signature, std::vector<const GroundAtom*>> index_;
};

/// Body literals in join order: positive atoms are matched as soon as their
/// arithmetic arguments can be solved; filters run as soon as they are bound.
struct BodyPlan {
  std::vector<Literal> steps;
};

/// Orders `body` given variables already bound on entry. Throws SafetyError
/// (statement index `statement`) if some literal can never be evaluated.
BodyPlan plan_body(const std::vector<Literal>& body, const std::vector<std::string>& prebound,
                   std::size_t statement);

struct CompiledRule {
  Atom head;
  BodyPlan body;
  int slot_count = 0;
};

CompiledRule compile_rule(const NormalRule& rule, std::size_t statement);

/// Calls `on_match(env)` for every extension of `env` satisfying the plan.
template <class F>
void enumerate(const BodyPlan& plan, std::size_t step, Env& env, const Store& store, F&& on_match);

bool match(const Term& pattern, const Value& value, Env& env, std::vector<int>& trail);

template <class F>
void enumerate(const BodyPlan& plan, std::size_t step, Env& env, const Store& store, F&& on_match) {
  if (step == plan.steps.size()) {
    on_match(env);
    return;
  }
  const Literal& literal = plan.steps[step];
  if (const auto* atom = std::get_if<Atom>(&literal)) {
    const auto& candidates = store.with(atom->signature());
    std::vector<int> trail;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      const GroundAtom& fact = *candidates[i];
      bool ok = true;
      for (std::size_t k = 0; k < atom->args.size() && ok; ++k)
        ok = match(atom->args[k], fact.args[k], env, trail);
      if (ok) enumerate(plan, step + 1, env, store, on_match);
      for (int slot : trail) env.slots[static_cast<std::size_t>(slot)].reset();
      trail.clear();
    }
  } else if (const auto* neg = std::get_if<Negated>(&literal)) {
    if (!store.contains(instantiate(neg->atom, env))) enumerate(plan, step + 1, env, store, on_match);
  } else {
    const auto& cmp = std::get<Comparison>(literal);
    auto lhs = evaluate(cmp.lhs, env);
    auto rhs = evaluate(cmp.rhs, env);
    if (!lhs || !rhs) return;
    if (compare(*lhs, cmp.op, *rhs)) enumerate(plan, step + 1, env, store, on_match);
  }
}

/// Replaces symbolic constants declared with `#const` by their values.
Program substitute_constants(const Program& program);

/// Choice upper bound, nullopt when unbounded.
std::optional<std::int64_t> choice_upper(const ChoiceRule& choice, const Program& program);

/// Strongly connected components of the predicate dependency graph, in
/// evaluation order. Throws StratificationError on a negative cycle.
std::vector<std::vector<Signature>> stratify(const Program& program);

}  // namespace ecplan::logic::detail
