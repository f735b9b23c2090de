#include "ecplan/domains/pocman.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ecplan {

using logic::GroundAtom;
using logic::Value;

bool in_direction(int dx, int dy, int d) {
  const int ax = std::abs(dx);
  const int ay = std::abs(dy);
  switch (d) {
    case kNorth: return dy < 0 && ay >= ax;
    case kSouth: return dy > 0 && ay >= ax;
    case kEast: return dx > 0 && ax >= ay;
    default: return dx < 0 && ax >= ay;
  }
}

namespace {

// Free cells sorted by distance to `target`, ties by row then column.
std::vector<Cell> nearest_free(const Maze& maze, Cell target) {
  std::vector<Cell> cells = maze.free_cells();
  std::stable_sort(cells.begin(), cells.end(), [&](Cell a, Cell b) {
    const int da = manhattan(a, target);
    const int db = manhattan(b, target);
    if (da != db) return da < db;
    return std::tie(a.y, a.x) < std::tie(b.y, b.x);
  });
  return cells;
}

}  // namespace

Pocman::Pocman(Maze maze, PocmanParams params) : maze_(std::move(maze)), params_(params) {
  if (maze_.cell_count() > kMaxMazeCells) throw std::invalid_argument("maze too large");
  if (params_.ghosts < 0 || params_.ghosts > kMaxGhosts) throw std::invalid_argument("ghost count out of range");
  if (params_.food_prob < 0 || params_.food_prob > 1 || params_.chase_prob < 0 || params_.chase_prob > 1)
    throw std::invalid_argument("pocman probabilities must lie in [0,1]");
  spawn_ = nearest_free(maze_, {maze_.width() / 2, maze_.height() - 1}).front();
  for (Cell c : nearest_free(maze_, {maze_.width() / 2, 0})) {
    if (static_cast<int>(ghost_spawns_.size()) == params_.ghosts) break;
    if (c != spawn_) ghost_spawns_.push_back(c);
  }
  if (static_cast<int>(ghost_spawns_.size()) < params_.ghosts) throw std::invalid_argument("maze too small for ghosts");
  powers_.resize(static_cast<std::size_t>(maze_.cell_count() + maze_.width() + maze_.height()));
  for (std::size_t k = 0; k < powers_.size(); ++k) powers_[k] = std::pow(params_.discount, static_cast<double>(k));
}

PocmanState Pocman::sample_initial_state(Rng& rng) const {
  State s;
  s.pocman = spawn_;
  for (int g = 0; g < params_.ghosts; ++g) s.ghosts[static_cast<std::size_t>(g)] = ghost_spawns_[static_cast<std::size_t>(g)];
  do {
    s.food.reset();
    s.food_left = 0;
    for (Cell c : maze_.free_cells()) {
      if (c == spawn_) continue;
      if (rng.bernoulli(params_.food_prob)) {
        s.food.set(static_cast<std::size_t>(maze_.index(c)));
        ++s.food_left;
      }
    }
  } while (s.food_left == 0 && params_.food_prob > 0.0 && maze_.free_cells().size() > 1);
  return s;
}

Cell Pocman::random_neighbour(Cell c, Rng& rng) const {
  std::array<Cell, 4> options;
  int n = 0;
  for (int d = 0; d < 4; ++d) {
    const Cell next = Maze::neighbour(c, d);
    if (maze_.free(next)) options[static_cast<std::size_t>(n++)] = next;
  }
  if (n == 0) return c;
  return options[static_cast<std::size_t>(rng.below(n))];
}

Cell Pocman::move_ghost(const State& s, Cell ghost, Rng& rng) const {
  if (manhattan(ghost, s.pocman) < 4 && rng.bernoulli(params_.chase_prob)) {
    const int dx = s.pocman.x - ghost.x;
    const int dy = s.pocman.y - ghost.y;
    const Cell along_x{ghost.x + (dx > 0 ? 1 : -1), ghost.y};
    const Cell along_y{ghost.x, ghost.y + (dy > 0 ? 1 : -1)};
    bool x_first = std::abs(dx) > std::abs(dy);
    if (std::abs(dx) == std::abs(dy)) x_first = rng.bernoulli(0.5);
    const Cell first = x_first ? along_x : along_y;
    const Cell second = x_first ? along_y : along_x;
    const bool second_useful = x_first ? dy != 0 : dx != 0;
    if ((x_first ? dx != 0 : dy != 0) && maze_.free(first)) return first;
    if (second_useful && maze_.free(second)) return second;
  }
  return random_neighbour(ghost, rng);
}

StepOutcome<PocmanState> Pocman::step(const State& state, int action, Rng& rng) const {
  if (action < 0 || action >= 4) throw InvalidAction("pocman action " + std::to_string(action) + " out of range");
  StepOutcome<State> out{state, 0, 0.0, false};
  State& s = out.next_state;
  if (s.done) {
    out.terminal = true;
    out.observation = observe(s);
    return out;
  }
  out.reward = -1.0;
  const Cell target = Maze::neighbour(s.pocman, action);
  if (maze_.free(target)) {
    s.pocman = target;
  } else {
    out.reward -= 100.0;
  }
  auto caught = [&] {
    for (int g = 0; g < params_.ghosts; ++g) {
      if (s.ghosts[static_cast<std::size_t>(g)] == s.pocman) return true;
    }
    return false;
  };
  if (caught()) {
    out.reward -= 100.0;
    s.done = true;
  } else {
    const auto idx = static_cast<std::size_t>(maze_.index(s.pocman));
    if (s.food.test(idx)) {
      s.food.reset(idx);
      --s.food_left;
      out.reward += 1.0;
      if (s.food_left == 0) {
        out.reward += 1000.0;
        s.done = true;
      }
    }
    if (!s.done) {
      for (int g = 0; g < params_.ghosts; ++g) {
        auto& ghost = s.ghosts[static_cast<std::size_t>(g)];
        ghost = move_ghost(s, ghost, rng);
      }
      if (caught()) {
        out.reward -= 100.0;
        s.done = true;
      }
    }
  }
  out.terminal = s.done;
  out.observation = observe(s);
  return out;
}

Observation Pocman::observe(const State& s) const {
  Observation z = 0;
  const int r = kPocmanObservationRange;
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      if (std::abs(dx) + std::abs(dy) > r || (dx == 0 && dy == 0)) continue;
      const Cell c{s.pocman.x + dx, s.pocman.y + dy};
      if (!maze_.inside(c) || !s.food.test(static_cast<std::size_t>(maze_.index(c)))) continue;
      for (int d = 0; d < 4; ++d) {
        if (in_direction(dx, dy, d)) z |= Observation{1} << d;
      }
    }
  }
  for (int g = 0; g < params_.ghosts; ++g) {
    const Cell ghost = s.ghosts[static_cast<std::size_t>(g)];
    const int dx = ghost.x - s.pocman.x;
    const int dy = ghost.y - s.pocman.y;
    if (std::abs(dx) + std::abs(dy) > r || (dx == 0 && dy == 0)) continue;
    for (int d = 0; d < 4; ++d) {
      if (in_direction(dx, dy, d)) z |= Observation{1} << (4 + d);
    }
  }
  return z;
}

std::optional<PocmanState> Pocman::reinvigorate(const State& state, int, Observation z, Rng& rng) const {
  State s = state;
  if (params_.ghosts > 0) {
    auto& ghost = s.ghosts[static_cast<std::size_t>(rng.below(params_.ghosts))];
    if (rng.bernoulli(0.8)) ghost = random_neighbour(ghost, rng);
  }
  const auto& cells = maze_.free_cells();
  const Cell c = cells[static_cast<std::size_t>(rng.below(static_cast<int>(cells.size())))];
  if (c != s.pocman) {
    const auto idx = static_cast<std::size_t>(maze_.index(c));
    if (s.food.test(idx)) {
      if (s.food_left > 1) {
        s.food.reset(idx);
        --s.food_left;
      }
    } else {
      s.food.set(idx);
      ++s.food_left;
    }
  }
  for (int g = 0; g < params_.ghosts; ++g) {
    if (s.ghosts[static_cast<std::size_t>(g)] == s.pocman) return std::nullopt;
  }
  if (observe(s) != z) return std::nullopt;
  return s;
}

PocmanState Pocman::observable_prior(const State& state, Rng& rng) const {
  State s = sample_initial_state(rng);
  const auto& cells = maze_.free_cells();
  s.pocman = state.pocman;
  const auto own = static_cast<std::size_t>(maze_.index(s.pocman));
  if (s.food.test(own)) {
    s.food.reset(own);
    --s.food_left;
  }
  if (s.food_left == 0) {
    for (Cell c : cells) {
      if (c != s.pocman) {
        s.food.set(static_cast<std::size_t>(maze_.index(c)));
        s.food_left = 1;
        break;
      }
    }
  }
  for (int g = 0; g < params_.ghosts; ++g) {
    Cell c;
    do {
      c = cells[static_cast<std::size_t>(rng.below(static_cast<int>(cells.size())))];
    } while (manhattan(c, s.pocman) <= kPocmanObservationRange && cells.size() > 13);
    s.ghosts[static_cast<std::size_t>(g)] = c;
  }
  s.done = state.done;
  return s;
}

double Pocman::hindsight_bound(const State& state) const {
  if (state.done) return 0.0;
  double total = 0.0;
  int farthest = 0;
  for (Cell c : maze_.free_cells()) {
    if (!state.food.test(static_cast<std::size_t>(maze_.index(c)))) continue;
    const int d = std::max(1, manhattan(c, state.pocman));
    farthest = std::max(farthest, d);
    total += powers_[static_cast<std::size_t>(d - 1)];
  }
  const int steps = std::max(farthest, state.food_left);
  if (steps > 0) total += 1000.0 * powers_[static_cast<std::size_t>(steps - 1)];
  return total;
}

logic::AtomSet featurize_pocman(const ParticleBelief<PocmanState>& belief, const Maze& maze, Cell pos,
                                int ghosts) {
  const auto ghost_count = static_cast<std::size_t>(ghosts);
  constexpr int R = kPocmanFeatureRange;
  // counts[kind][d][D]: particles with the nearest item in direction d at
  // distance exactly D.
  std::array<std::array<std::array<std::size_t, R + 1>, 4>, 2> counts{};
  for (const auto& p : belief.particles()) {
    std::array<std::array<int, 4>, 2> nearest{};
    for (auto& k : nearest) k.fill(R + 1);
    for (int dy = -R; dy <= R; ++dy) {
      for (int dx = -R; dx <= R; ++dx) {
        const int dist = std::abs(dx) + std::abs(dy);
        if (dist == 0 || dist > R) continue;
        const Cell c{pos.x + dx, pos.y + dy};
        if (!maze.inside(c) || !p.food.test(static_cast<std::size_t>(maze.index(c)))) continue;
        for (int d = 0; d < 4; ++d) {
          if (in_direction(dx, dy, d)) nearest[0][static_cast<std::size_t>(d)] = std::min(nearest[0][static_cast<std::size_t>(d)], dist);
        }
      }
    }
    for (std::size_t g = 0; g < ghost_count; ++g) {
      const Cell ghost = p.ghosts[g];
      const int dx = ghost.x - pos.x;
      const int dy = ghost.y - pos.y;
      const int dist = std::abs(dx) + std::abs(dy);
      if (dist == 0 || dist > R) continue;
      for (int d = 0; d < 4; ++d) {
        if (in_direction(dx, dy, d)) nearest[1][static_cast<std::size_t>(d)] = std::min(nearest[1][static_cast<std::size_t>(d)], dist);
      }
    }
    for (std::size_t k = 0; k < 2; ++k) {
      for (std::size_t d = 0; d < 4; ++d) {
        if (nearest[k][d] <= R) ++counts[k][d][static_cast<std::size_t>(nearest[k][d])];
      }
    }
  }
  logic::AtomSet atoms;
  const double n = static_cast<double>(belief.size());
  constexpr const char* kinds[] = {"food", "ghost"};
  for (std::size_t k = 0; k < 2; ++k) {
    for (int d = 0; d < 4; ++d) {
      std::size_t cumulative = 0;
      for (int D = 1; D <= R; ++D) {
        cumulative += counts[k][static_cast<std::size_t>(d)][static_cast<std::size_t>(D)];
        atoms.insert(GroundAtom(kinds[k], {Value::symbol(direction_name(d)), Value::integer(D),
                                           Value::integer(percent_bucket(static_cast<double>(cumulative) / n))}));
      }
    }
  }
  for (int d = 0; d < 4; ++d) {
    if (!maze.free(Maze::neighbour(pos, d))) atoms.insert(GroundAtom("wall", {Value::symbol(direction_name(d))}));
  }
  atoms.insert(GroundAtom("pos", {Value::integer(pos.x), Value::integer(pos.y)}));
  return atoms;
}

logic::AtomSet pocman_background(const Maze& maze) {
  logic::AtomSet atoms;
  for (Cell c : maze.free_cells()) atoms.insert(GroundAtom("free", {Value::integer(c.x), Value::integer(c.y)}));
  return atoms;
}

GroundAtom pocman_action_atom(int action) {
  if (action < 0 || action >= 4) throw InvalidAction("pocman action " + std::to_string(action) + " out of range");
  return GroundAtom("move", {Value::symbol(direction_name(action))});
}

int pocman_action_from_atom(const GroundAtom& atom) {
  if (atom.predicate == "move" && atom.args.size() == 1 && atom.args[0].kind() == Value::Kind::Symbol) {
    for (int d = 0; d < 4; ++d) {
      if (atom.args[0].name() == direction_name(d)) return d;
    }
  }
  throw InvalidAtom("not a pocman action atom: " + atom.str());
}

}  // namespace ecplan
