#include "ecplan/solvers/pref_policies.hpp"

#include <cstdlib>
#include <limits>

namespace ecplan {

void RocksamplePref::reset(const RocksampleState&) {
  good_.assign(static_cast<std::size_t>(model_->rock_count()), 0);
  bad_.assign(static_cast<std::size_t>(model_->rock_count()), 0);
}

int RocksamplePref::act(const RocksampleState& s) {
  const auto& rocks = model_->rocks();
  auto nearest = [&](auto&& keep) {
    int best = -1;
    int best_d = std::numeric_limits<int>::max();
    for (int i = 0; i < model_->rock_count(); ++i) {
      if ((s.sampled >> i) & 1U) continue;
      if (!keep(static_cast<std::size_t>(i))) continue;
      const int d = manhattan(s.agent, rocks[static_cast<std::size_t>(i)]);
      if (d < best_d) {
        best_d = d;
        best = i;
      }
    }
    return best;
  };
  const int uncertain = nearest([&](std::size_t i) {
    return std::abs(good_[i] - bad_[i]) <= 1 && good_[i] + bad_[i] < max_checks_;
  });
  if (uncertain >= 0) return Rocksample::kFirstCheck + uncertain;
  const int here = model_->rock_at(s.agent);
  if (here >= 0 && !((s.sampled >> here) & 1U) &&
      good_[static_cast<std::size_t>(here)] > bad_[static_cast<std::size_t>(here)])
    return Rocksample::kSample;
  const int target = nearest([&](std::size_t i) { return good_[i] > bad_[i]; });
  if (target >= 0) {
    const Cell r = rocks[static_cast<std::size_t>(target)];
    if (r.x > s.agent.x) return kEast;
    if (r.x < s.agent.x) return kWest;
    if (r.y > s.agent.y) return kNorth;
    return kSouth;
  }
  return kEast;
}

void RocksamplePref::observe(int action, Observation z) {
  if (action < Rocksample::kFirstCheck) return;
  const auto i = static_cast<std::size_t>(action - Rocksample::kFirstCheck);
  if (z == Rocksample::kGood) ++good_[i];
  if (z == Rocksample::kBad) ++bad_[i];
}

int PocmanPref::act(const PocmanState& s) {
  const Maze& maze = model_->maze();
  auto blocked = [&](int d) { return !maze.free(Maze::neighbour(s.pocman, d)); };
  auto ghost = [&](int d) { return ((last_ >> (4 + d)) & 1) != 0; };
  bool any_ghost = false;
  for (int d = 0; d < 4; ++d) any_ghost = any_ghost || ghost(d);
  if (!any_ghost && !blocked(previous_)) return previous_;
  if (!ghost(previous_) && !blocked(previous_)) return previous_;
  for (int d = 0; d < 4; ++d)
    if (!ghost(d) && !blocked(d)) return d;
  for (int d = 0; d < 4; ++d)
    if (!blocked(d)) return d;
  return previous_;
}

}  // namespace ecplan
