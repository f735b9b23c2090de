#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ecplan/pomdp/model.hpp"

namespace ecplan {

/// Raised when no particle agrees with the real observation after the retry
/// budget is spent. Callers restart from a fresh prior.
class BeliefCollapse : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Particle approximation of a belief. The particle count always equals the
/// target size once constructed.
template <class State>
class ParticleBelief {
 public:
  ParticleBelief(std::vector<State> particles, std::size_t target_size)
      : particles_(std::move(particles)), target_size_(target_size) {
    if (target_size_ == 0) throw std::invalid_argument("belief target size must be positive");
    if (particles_.size() != target_size_)
      throw std::invalid_argument("particle count does not match target size");
  }

  [[nodiscard]] std::span<const State> particles() const { return particles_; }
  [[nodiscard]] std::size_t size() const { return particles_.size(); }
  [[nodiscard]] std::size_t target_size() const { return target_size_; }
  [[nodiscard]] const State& operator[](std::size_t i) const { return particles_[i]; }

  [[nodiscard]] const State& sample(Rng& rng) const {
    return particles_[static_cast<std::size_t>(rng.below(static_cast<int>(particles_.size())))];
  }

 private:
  std::vector<State> particles_;
  std::size_t target_size_;
};

template <GenerativeModel M>
ParticleBelief<typename M::State> sample_initial_belief(const M& model, std::size_t target_size,
                                                        Rng& rng) {
  if (target_size == 0) throw std::invalid_argument("belief target size must be positive");
  std::vector<typename M::State> particles;
  particles.reserve(target_size);
  for (std::size_t i = 0; i < target_size; ++i) particles.push_back(model.sample_initial_state(rng));
  return ParticleBelief<typename M::State>(std::move(particles), target_size);
}

/// Rejection-based particle filter step. Every particle is pushed through the
/// model once; those reproducing the real observation survive. With no
/// survivor, random particles are retried up to 10x target size transitions
/// in total. Missing particles are refilled by reinvigorating survivors.
template <ReinvigoratingModel M>
ParticleBelief<typename M::State> belief_update(const ParticleBelief<typename M::State>& belief,
                                                int action, Observation observation,
                                                const M& model, Rng& rng) {
  using State = typename M::State;
  const std::size_t target = belief.target_size();
  const std::size_t budget = 10 * target;

  std::vector<State> next;
  next.reserve(target);
  std::size_t attempts = 0;
  for (const State& particle : belief.particles()) {
    auto outcome = model.step(particle, action, rng);
    ++attempts;
    if (outcome.observation == observation) next.push_back(std::move(outcome.next_state));
  }
  while (next.empty() && attempts < budget) {
    auto outcome = model.step(belief.sample(rng), action, rng);
    ++attempts;
    if (outcome.observation == observation) next.push_back(std::move(outcome.next_state));
  }
  if (next.empty())
    throw BeliefCollapse("no particle reproduced observation " + std::to_string(observation) +
                         " after " + std::to_string(attempts) + " transitions");

  const std::size_t survivors = next.size();
  std::size_t proposals = 0;
  while (next.size() < target && proposals < budget) {
    ++proposals;
    const State& base = next[static_cast<std::size_t>(rng.below(static_cast<int>(survivors)))];
    if (auto moved = model.reinvigorate(base, action, observation, rng)) next.push_back(*moved);
  }
  // Proposal budget exhausted: plain resampling keeps the size contract.
  while (next.size() < target)
    next.push_back(next[static_cast<std::size_t>(rng.below(static_cast<int>(survivors)))]);
  return ParticleBelief<State>(std::move(next), target);
}

}  // namespace ecplan
