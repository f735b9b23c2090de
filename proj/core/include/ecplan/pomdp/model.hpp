#pragma once

#include <concepts>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ecplan/pomdp/rng.hpp"

namespace ecplan {

/// Observations are canonicalized to integers by each domain.
using Observation = std::int64_t;

template <class State>
struct StepOutcome {
  State next_state;
  Observation observation = 0;
  double reward = 0.0;
  bool terminal = false;
};

/// Black-box simulator contract used by every solver. `step` must be a pure
/// function of (state, action, generator stream).
template <class M>
concept GenerativeModel = requires(const M& model, const typename M::State& state, int action,
                                   Rng& rng) {
  typename M::State;
  { model.action_count() } -> std::convertible_to<int>;
  { model.discount() } -> std::convertible_to<double>;
  { model.step(state, action, rng) } -> std::same_as<StepOutcome<typename M::State>>;
  { model.sample_initial_state(rng) } -> std::same_as<typename M::State>;
};

/// Models that can repair a depleted particle set. `reinvigorate` perturbs a
/// survivor and returns it only if it stays consistent with the last
/// (action, observation) pair.
template <class M>
concept ReinvigoratingModel =
    GenerativeModel<M> && requires(const M& model, const typename M::State& state, int action,
                                   Observation z, Rng& rng) {
      { model.reinvigorate(state, action, z, rng) }
          -> std::same_as<std::optional<typename M::State>>;
    };

/// Models exposing the quantities the bound-based solvers need.
template <class M>
concept BoundedModel = GenerativeModel<M> && requires(const M& model,
                                                      const typename M::State& state) {
  { model.max_reward() } -> std::convertible_to<double>;
  { model.default_action() } -> std::convertible_to<int>;
  { model.hindsight_bound(state) } -> std::convertible_to<double>;
};

/// Sum of discount^t * rewards[t], t starting at 0.
double discounted_return(std::span<const double> rewards, double discount);

struct HistoryStep {
  int action = 0;
  Observation observation = 0;
  friend bool operator==(const HistoryStep&, const HistoryStep&) = default;
};

/// Append-only record of executed (action, observation) pairs.
class History {
 public:
  void append(int action, Observation observation) { steps_.push_back({action, observation}); }
  [[nodiscard]] std::span<const HistoryStep> steps() const { return steps_; }
  [[nodiscard]] std::size_t size() const { return steps_.size(); }
  [[nodiscard]] bool empty() const { return steps_.empty(); }
  [[nodiscard]] const HistoryStep& back() const { return steps_.back(); }

 private:
  std::vector<HistoryStep> steps_;
};

}  // namespace ecplan
