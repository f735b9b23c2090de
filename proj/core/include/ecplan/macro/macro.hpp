#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ecplan/logic/evaluator.hpp"
#include "ecplan/logic/program.hpp"

namespace ecplan {

/// Persistent macro-action: `length` repetitions of `action`.
struct MacroAction {
  int action = 0;
  int length = 0;

  /// Action at index t < length; always `action`.
  [[nodiscard]] int step(int t) const;
  friend bool operator==(const MacroAction&, const MacroAction&) = default;
};

/// One macro per action id.
using MacroSet = std::vector<MacroAction>;

/// Rollout weight per action; 1.0 for actions without a learned theory.
class CoverageTable {
 public:
  explicit CoverageTable(int action_count = 0) : values_(static_cast<std::size_t>(action_count), 1.0) {}

  void set(int action, double cov);
  [[nodiscard]] double at(int action) const;
  [[nodiscard]] int size() const { return static_cast<int>(values_.size()); }
  [[nodiscard]] const std::vector<double>& values() const { return values_; }

  /// Reads `name = value` lines; `action_of` maps names to action ids.
  template <class F>
  static CoverageTable load(const std::string& path, int action_count, F&& action_of);

 private:
  std::vector<double> values_;
};

/// Parsed `name = value` lines of a coverage file.
std::map<std::string, double> read_coverage_file(const std::string& path);

template <class F>
CoverageTable CoverageTable::load(const std::string& path, int action_count, F&& action_of) {
  CoverageTable table(action_count);
  for (const auto& [name, value] : read_coverage_file(path)) table.set(action_of(name), value);
  return table;
}

/// Learned init/contd rules. Rules are selected per action atom by the first
/// head argument; rules with a non-ground first argument apply to every
/// action.
class Hypothesis {
 public:
  Hypothesis() = default;
  explicit Hypothesis(logic::Program program);

  [[nodiscard]] const logic::Program& program() const { return program_; }
  [[nodiscard]] logic::Program for_action(const logic::GroundAtom& action_atom) const;
  [[nodiscard]] bool covers(const logic::GroundAtom& action_atom) const;

 private:
  logic::Program program_;
};

/// Symbolic transition rules from features at t-1 to features at t, selected
/// by the lifted action fact `a(..., t-1)`. Predicates defined by the rules
/// are rewritten; every other feature persists.
class TransitionAxioms {
 public:
  TransitionAxioms() = default;
  explicit TransitionAxioms(logic::Program program);

  /// Features after executing `action_atom` at step `k`.
  [[nodiscard]] logic::AtomSet apply(const logic::AtomSet& features, const logic::GroundAtom& action_atom,
                                     std::int64_t k, const logic::AtomSet& background) const;

  [[nodiscard]] bool rewrites(const std::string& predicate) const { return rewritten_.contains(predicate); }

 private:
  std::optional<logic::Evaluator> evaluator_;
  std::map<std::string, std::size_t> rewritten_;  // predicate -> time-free arity
};

/// `atom` with the time step appended as its last argument.
logic::GroundAtom at_time(const logic::GroundAtom& atom, std::int64_t k);

/// Unrolls the macro for `action`: length 0 unless init(a,1) is derivable;
/// otherwise the largest n <= max_length with contd(a,k) for 2 <= k <= n,
/// features at k obtained by applying the transition axioms to those at k-1.
/// `theory` is prelude plus H_a.
MacroAction unroll_macro(int action, const logic::GroundAtom& action_atom, const logic::AtomSet& features,
                         const logic::Program& theory, const TransitionAxioms& transitions,
                         const logic::AtomSet& background, int max_length);

/// Γ with per-action evaluators compiled once. Actions whose atom is unset
/// have no learned theory and always get length 0.
class MacroGenerator {
 public:
  MacroGenerator(const logic::Program& prelude, const Hypothesis& hypothesis, TransitionAxioms transitions,
                 logic::AtomSet background, std::vector<std::optional<logic::GroundAtom>> action_atoms,
                 int max_length = 10);

  [[nodiscard]] int max_length() const { return max_length_; }
  [[nodiscard]] int action_count() const { return static_cast<int>(atoms_.size()); }

  [[nodiscard]] MacroAction unroll(int action, const logic::AtomSet& features) const;
  [[nodiscard]] MacroSet compute(const logic::AtomSet& features) const;

  /// Γ(b): featurizes `belief` exactly once, then unrolls every action.
  template <class Belief, class Featurize>
  [[nodiscard]] MacroSet compute_macro_set(const Belief& belief, Featurize&& featurize) const {
    return compute(featurize(belief));
  }

 private:
  std::vector<std::optional<logic::GroundAtom>> atoms_;
  std::vector<std::optional<logic::Evaluator>> theories_;
  TransitionAxioms transitions_;
  logic::AtomSet background_;
  int max_length_;
};

/// Refresh-on-exhaustion schedule: Γ is recomputed only once no macro is
/// longer than the number of steps executed since the last refresh.
class MacroSchedule {
 public:
  void refresh(MacroSet macros);
  void advance() { ++t_; }

  [[nodiscard]] bool exhausted() const;
  [[nodiscard]] int t() const { return t_; }
  [[nodiscard]] int refresh_count() const { return refreshes_; }
  [[nodiscard]] const MacroSet& macros() const { return macros_; }

 private:
  MacroSet macros_;
  int t_ = 0;
  int refreshes_ = 0;
};

/// Actions suggested `depth` steps after index t: those with |M_a| > t + depth.
std::vector<int> suggested_actions(const MacroSet& macros, int t);

/// Longest macro with steps left after index t (ties to the lowest action
/// id), or nullopt when every macro is exhausted.
std::optional<MacroAction> longest_macro(const MacroSet& macros, int t);

}  // namespace ecplan
