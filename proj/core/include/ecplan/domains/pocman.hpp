#pragma once

#include <array>
#include <bitset>
#include <optional>
#include <string>

#include "ecplan/domains/common.hpp"
#include "ecplan/domains/maze.hpp"
#include "ecplan/logic/value.hpp"
#include "ecplan/pomdp/belief.hpp"
#include "ecplan/pomdp/model.hpp"

namespace ecplan {

inline constexpr int kMaxGhosts = 4;
inline constexpr int kMaxMazeCells = 512;
/// Largest distance used by the pocman food/ghost features.
inline constexpr int kPocmanFeatureRange = 6;
inline constexpr int kPocmanObservationRange = 2;

struct PocmanState {
  Cell pocman;
  std::array<Cell, kMaxGhosts> ghosts{};
  std::bitset<kMaxMazeCells> food;
  int food_left = 0;
  bool done = false;
  friend bool operator==(const PocmanState&, const PocmanState&) = default;
};

struct PocmanParams {
  int ghosts = 2;
  double food_prob = 0.5;
  double chase_prob = 0.75;
  double discount = 0.95;
};

/// True if the displacement (dx, dy) lies in direction d: its dominant axis
/// matches d, with axis ties counted in both directions. dy grows southwards.
bool in_direction(int dx, int dy, int d);

/// Pocman on a fixed maze. The pocman spawns on the free cell nearest the
/// bottom-center, ghosts on the free cells nearest the top-center. Actions 0 north (row - 1), 1 east, 2 south,
/// 3 west. The observation has bit d set when food lies within distance 2 in
/// direction d and bit 4 + d when a ghost does.
class Pocman {
 public:
  using State = PocmanState;

  Pocman(Maze maze, PocmanParams params);

  [[nodiscard]] const Maze& maze() const { return maze_; }
  [[nodiscard]] const PocmanParams& params() const { return params_; }
  [[nodiscard]] Cell spawn() const { return spawn_; }
  [[nodiscard]] const std::vector<Cell>& ghost_spawns() const { return ghost_spawns_; }

  [[nodiscard]] int action_count() const { return 4; }
  [[nodiscard]] double discount() const { return params_.discount; }
  [[nodiscard]] double max_reward() const { return 1000.0; }
  [[nodiscard]] int default_action() const { return kNorth; }

  [[nodiscard]] StepOutcome<State> step(const State& state, int action, Rng& rng) const;
  [[nodiscard]] State sample_initial_state(Rng& rng) const;
  [[nodiscard]] Observation observe(const State& state) const;

  /// Moves one ghost by at most one cell and toggles one food cell; the
  /// result must reproduce `z`.
  [[nodiscard]] std::optional<State> reinvigorate(const State& state, int action, Observation z,
                                                  Rng& rng) const;

  /// Fresh ghosts and food around the pocman position of `state`.
  [[nodiscard]] State observable_prior(const State& state, Rng& rng) const;

  /// Optimistic value with everything revealed: each pellet collected at its
  /// Manhattan distance, clearing bonus after max(pellets, farthest pellet)
  /// steps, no step or ghost penalties.
  [[nodiscard]] double hindsight_bound(const State& state) const;

  [[nodiscard]] std::string action_name(int action) const { return direction_name(action); }

 private:
  Cell move_ghost(const State& s, Cell ghost, Rng& rng) const;
  Cell random_neighbour(Cell c, Rng& rng) const;

  Maze maze_;
  PocmanParams params_;
  Cell spawn_;
  std::vector<Cell> ghost_spawns_;
  std::vector<double> powers_;  // discount^k
};

/// food(C,D,V) and ghost(C,D,V) for D in 1..6, V the percentage of particles
/// with a pellet (ghost) within distance D in direction C; wall(C) for walls
/// next to `pos`; pos(X,Y). Only the first `ghosts` ghost slots are read.
logic::AtomSet featurize_pocman(const ParticleBelief<PocmanState>& belief, const Maze& maze, Cell pos,
                                int ghosts);

/// free(X,Y) for every free maze cell, used by the position transition rules.
logic::AtomSet pocman_background(const Maze& maze);

logic::GroundAtom pocman_action_atom(int action);
int pocman_action_from_atom(const logic::GroundAtom& atom);

}  // namespace ecplan
