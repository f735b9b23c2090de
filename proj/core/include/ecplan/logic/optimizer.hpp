#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>

#include "ecplan/logic/program.hpp"

namespace ecplan::logic {

/// Largest number of candidate choice atoms enumerated exhaustively.
inline constexpr std::size_t kMaxChoiceAtoms = 20;

struct OptimalResult {
  AtomSet answer_set;
  AtomSet chosen;
  /// Summed weight per priority level.
  std::map<std::int64_t, std::int64_t> cost;
  std::size_t models_considered = 0;
};

/// Optimal answer set of a program with cardinality choice rules and weak
/// constraints, by enumerating every subset of the candidate choice atoms.
/// Costs compare from the highest priority down; ties go to the
/// lexicographically smallest answer set. Choice conditions may not depend on
/// chosen atoms.
///
/// Throws TooManyChoices above kMaxChoiceAtoms candidates and Unsatisfiable if
/// no subset yields a model.
OptimalResult solve_optimal(const Program& program, const AtomSet& facts,
                            std::optional<std::int64_t> time = {});

}  // namespace ecplan::logic
