#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "ecplan/logic/program.hpp"

namespace ecplan::logic {

/// Predicate strata in evaluation order. Throws StratificationError if a
/// predicate depends negatively on itself through a cycle.
std::vector<std::vector<Signature>> stratify(const Program& program);

/// Compiled normal-rule program. Evaluation computes the unique answer set
/// stratum by stratum; `time` is the value of the reserved symbol `t`.
/// Weak constraints are ignored; choice rules are rejected. Copies share the
/// compiled rules.
class Evaluator {
 public:
  explicit Evaluator(const Program& program);

  /// Throws Unsatisfiable if an integrity constraint fires.
  [[nodiscard]] AtomSet run(const AtomSet& facts, std::optional<std::int64_t> time = {}) const;

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

AtomSet evaluate_stratified(const Program& program, const AtomSet& facts,
                            std::optional<std::int64_t> time = {});

}  // namespace ecplan::logic
