#include "ecplan/logic/evaluator.hpp"

#include <set>

#include "ecplan/logic/errors.hpp"
#include "engine.hpp"

namespace ecplan::logic {

std::vector<std::vector<Signature>> stratify(const Program& program) {
  return detail::stratify(program);
}

struct Evaluator::Impl {
  AtomSet facts;
  std::vector<std::vector<detail::CompiledRule>> strata;
  std::vector<detail::CompiledRule> constraints;
};

Evaluator::Evaluator(const Program& source) : impl_(std::make_shared<Impl>()) {
  if (!source.choices.empty()) throw EvaluationError("choice rules need solve_optimal");
  const Program program = detail::substitute_constants(source);
  const auto strata = detail::stratify(program);
  std::map<Signature, std::size_t> stratum_of;
  for (std::size_t i = 0; i < strata.size(); ++i) {
    for (const auto& sig : strata[i]) stratum_of[sig] = i;
  }
  impl_->facts = program.facts;
  impl_->strata.resize(strata.size());
  for (std::size_t i = 0; i < program.rules.size(); ++i) {
    const auto& rule = program.rules[i];
    impl_->strata[stratum_of.at(rule.head.signature())].push_back(detail::compile_rule(rule, i + 1));
  }
  std::erase_if(impl_->strata, [](const auto& s) { return s.empty(); });
  for (std::size_t i = 0; i < program.constraints.size(); ++i) {
    NormalRule as_rule{Atom{"", {}}, program.constraints[i].body};
    impl_->constraints.push_back(detail::compile_rule(as_rule, i + 1));
  }
}


AtomSet Evaluator::run(const AtomSet& facts, std::optional<std::int64_t> time) const {
  detail::Store store(impl_->facts);
  for (const auto& f : facts) store.insert(f);
  std::vector<GroundAtom> fresh;
  for (const auto& stratum : impl_->strata) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& rule : stratum) {
        detail::Env env{std::vector<std::optional<Value>>(static_cast<std::size_t>(rule.slot_count)), time};
        detail::enumerate(rule.body, 0, env, store, [&](const detail::Env& e) {
          GroundAtom head = detail::instantiate(rule.head, e);
          if (!store.contains(head)) fresh.push_back(std::move(head));
        });
        for (auto& atom : fresh) changed |= store.insert(atom);
        fresh.clear();
      }
    }
  }
  for (const auto& c : impl_->constraints) {
    detail::Env env{std::vector<std::optional<Value>>(static_cast<std::size_t>(c.slot_count)), time};
    bool violated = false;
    detail::enumerate(c.body, 0, env, store, [&](const detail::Env&) { violated = true; });
    if (violated) throw Unsatisfiable("integrity constraint violated");
  }
  return store.atoms();
}

AtomSet evaluate_stratified(const Program& program, const AtomSet& facts,
                            std::optional<std::int64_t> time) {
  return Evaluator(program).run(facts, time);
}

}  // namespace ecplan::logic
