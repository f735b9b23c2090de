#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ecplan/domains/common.hpp"
#include "ecplan/logic/value.hpp"
#include "ecplan/pomdp/belief.hpp"
#include "ecplan/pomdp/model.hpp"

namespace ecplan {

struct RocksampleState {
  Cell agent;
  std::uint32_t valuable = 0;  // bit i: rock i is valuable
  std::uint32_t sampled = 0;
  bool exited = false;
  friend bool operator==(const RocksampleState&, const RocksampleState&) = default;
};

/// Rocksample(N, M). Actions: 0 north (y+1), 1 east, 2 south, 3 west,
/// 4 sample, 5+i check(i). Observations: 0 none, 1 good, 2 bad.
class Rocksample {
 public:
  using State = RocksampleState;

  static constexpr int kSample = 4;
  static constexpr int kFirstCheck = 5;
  static constexpr Observation kNone = 0;
  static constexpr Observation kGood = 1;
  static constexpr Observation kBad = 2;

  /// Rocks on distinct random cells other than the start, drawn from
  /// `layout_seed`.
  Rocksample(int size, int rocks, std::uint64_t layout_seed, double discount = 0.95);
  Rocksample(int size, std::vector<Cell> rocks, double discount = 0.95);

  [[nodiscard]] int size() const { return size_; }
  [[nodiscard]] int rock_count() const { return static_cast<int>(rocks_.size()); }
  [[nodiscard]] const std::vector<Cell>& rocks() const { return rocks_; }
  [[nodiscard]] Cell start() const { return {0, size_ / 2}; }

  [[nodiscard]] int action_count() const { return kFirstCheck + rock_count(); }
  [[nodiscard]] double discount() const { return discount_; }
  [[nodiscard]] double max_reward() const { return 10.0; }
  [[nodiscard]] int default_action() const { return kEast; }

  [[nodiscard]] StepOutcome<State> step(const State& state, int action, Rng& rng) const;
  [[nodiscard]] State sample_initial_state(Rng& rng) const;

  /// Flips one unsampled rock; after check(i) the flipped particle must
  /// reproduce the observation.
  [[nodiscard]] std::optional<State> reinvigorate(const State& state, int action, Observation z,
                                                  Rng& rng) const;

  /// Fresh hidden values around the observable part of `state`.
  [[nodiscard]] State observable_prior(const State& state, Rng& rng) const;

  /// Optimistic value with rock values revealed: every valuable rock and the
  /// exit collected at their Manhattan distances.
  [[nodiscard]] double hindsight_bound(const State& state) const;

  /// Index of the rock at `cell`, or -1.
  [[nodiscard]] int rock_at(Cell cell) const;

  /// Probability that check reports the true value at Manhattan distance d.
  [[nodiscard]] static double check_accuracy(int distance);

  [[nodiscard]] std::string action_name(int action) const;

 private:
  void fill_powers();

  int size_;
  std::vector<Cell> rocks_;
  double discount_;
  std::vector<double> powers_;  // discount_^k, k < 2 * size_
};

/// Symbolic features of a rocksample belief: dist, delta_x, delta_y and
/// guess for every rock still unsampled.
logic::AtomSet featurize_rocksample(const ParticleBelief<RocksampleState>& belief,
                                    const Rocksample& model);

/// Action atom: north/east/south/west, sample(R) with R the rock under the
/// agent (-1 when none), check(R).
logic::GroundAtom rocksample_action_atom(const Rocksample& model, int action, Cell agent);

/// Inverse of rocksample_action_atom; throws InvalidAtom on unknown atoms.
int rocksample_action_from_atom(const Rocksample& model, const logic::GroundAtom& atom);

}  // namespace ecplan
