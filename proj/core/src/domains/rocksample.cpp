#include "ecplan/domains/rocksample.hpp"

#include <algorithm>
#include <cmath>

namespace ecplan {

using logic::GroundAtom;
using logic::Value;

Rocksample::Rocksample(int size, int rocks, std::uint64_t layout_seed, double discount)
    : size_(size), discount_(discount) {
  if (size < 1) throw std::invalid_argument("grid size must be positive");
  if (rocks < 0 || rocks > 32 || rocks >= size * size)
    throw std::invalid_argument("rock count out of range");
  Rng rng(mix_seed(layout_seed, 0x726f636bULL));
  std::vector<Cell> cells;
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      if (Cell{x, y} != start()) cells.push_back({x, y});
    }
  }
  for (int i = 0; i < rocks; ++i) {
    const int j = i + rng.below(static_cast<int>(cells.size()) - i);
    std::swap(cells[static_cast<std::size_t>(i)], cells[static_cast<std::size_t>(j)]);
    rocks_.push_back(cells[static_cast<std::size_t>(i)]);
  }
  fill_powers();
}

Rocksample::Rocksample(int size, std::vector<Cell> rocks, double discount)
    : size_(size), rocks_(std::move(rocks)), discount_(discount) {
  if (size < 1) throw std::invalid_argument("grid size must be positive");
  if (rocks_.size() > 32) throw std::invalid_argument("at most 32 rocks");
  for (const auto& r : rocks_) {
    if (r.x < 0 || r.y < 0 || r.x >= size || r.y >= size)
      throw std::invalid_argument("rock outside the grid");
  }
  fill_powers();
}

void Rocksample::fill_powers() {
  powers_.resize(2 * static_cast<std::size_t>(size_));
  for (std::size_t k = 0; k < powers_.size(); ++k) powers_[k] = std::pow(discount_, static_cast<double>(k));
}

double Rocksample::check_accuracy(int distance) {
  const double efficiency = std::exp2(-static_cast<double>(distance) / 20.0);
  return (1.0 + efficiency) / 2.0;
}

int Rocksample::rock_at(Cell cell) const {
  for (std::size_t i = 0; i < rocks_.size(); ++i) {
    if (rocks_[i] == cell) return static_cast<int>(i);
  }
  return -1;
}

StepOutcome<RocksampleState> Rocksample::step(const State& state, int action, Rng& rng) const {
  if (action < 0 || action >= action_count())
    throw InvalidAction("rocksample action " + std::to_string(action) + " out of range");
  StepOutcome<State> out{state, kNone, 0.0, false};
  if (state.exited) {
    out.terminal = true;
    return out;
  }
  State& s = out.next_state;
  switch (action) {
    case kNorth:
      if (s.agent.y + 1 < size_) ++s.agent.y;
      break;
    case kSouth:
      if (s.agent.y > 0) --s.agent.y;
      break;
    case kWest:
      if (s.agent.x > 0) --s.agent.x;
      break;
    case kEast:
      if (s.agent.x + 1 < size_) {
        ++s.agent.x;
      } else {
        s.exited = true;
        out.reward = 10.0;
        out.terminal = true;
      }
      break;
    case kSample: {
      const int rock = rock_at(s.agent);
      const std::uint32_t bit = rock >= 0 ? 1U << rock : 0U;
      if (rock >= 0 && !(s.sampled & bit)) {
        out.reward = (s.valuable & bit) ? 10.0 : -10.0;
        s.sampled |= bit;
      } else {
        out.reward = -10.0;
      }
      break;
    }
    default: {
      const int rock = action - kFirstCheck;
      const bool good = (s.valuable >> rock) & 1U;
      const bool correct = rng.bernoulli(check_accuracy(manhattan(s.agent, rocks_[static_cast<std::size_t>(rock)])));
      out.observation = (good == correct) ? kGood : kBad;
      break;
    }
  }
  return out;
}

RocksampleState Rocksample::sample_initial_state(Rng& rng) const {
  State s;
  s.agent = start();
  for (int i = 0; i < rock_count(); ++i) {
    if (rng.bernoulli(0.5)) s.valuable |= 1U << i;
  }
  return s;
}

std::optional<RocksampleState> Rocksample::reinvigorate(const State& state, int action, Observation z,
                                                        Rng& rng) const {
  std::vector<int> open;
  for (int i = 0; i < rock_count(); ++i) {
    if (!((state.sampled >> i) & 1U)) open.push_back(i);
  }
  if (open.empty()) return state;
  const int rock = open[static_cast<std::size_t>(rng.below(static_cast<int>(open.size())))];
  State s = state;
  s.valuable ^= 1U << rock;
  if (action == kFirstCheck + rock) {
    const bool good = (s.valuable >> rock) & 1U;
    const bool correct = rng.bernoulli(check_accuracy(manhattan(s.agent, rocks_[static_cast<std::size_t>(rock)])));
    if (((good == correct) ? kGood : kBad) != z) return std::nullopt;
  }
  return s;
}

RocksampleState Rocksample::observable_prior(const State& state, Rng& rng) const {
  State s = sample_initial_state(rng);
  s.agent = state.agent;
  s.sampled = state.sampled;
  s.exited = state.exited;
  return s;
}

double Rocksample::hindsight_bound(const State& state) const {
  if (state.exited) return 0.0;
  double total = powers_[static_cast<std::size_t>(size_ - state.agent.x - 1)] * 10.0;
  for (int i = 0; i < rock_count(); ++i) {
    const std::uint32_t bit = 1U << i;
    if ((state.valuable & bit) && !(state.sampled & bit))
      total += powers_[static_cast<std::size_t>(manhattan(state.agent, rocks_[static_cast<std::size_t>(i)]))] * 10.0;
  }
  return total;
}

std::string Rocksample::action_name(int action) const {
  if (action < kSample) return direction_name(action);
  if (action == kSample) return "sample";
  return "check(" + std::to_string(action - kFirstCheck) + ")";
}

logic::AtomSet featurize_rocksample(const ParticleBelief<RocksampleState>& belief,
                                    const Rocksample& model) {
  logic::AtomSet atoms;
  const RocksampleState& first = belief[0];
  const Cell agent = first.agent;
  std::vector<std::size_t> good(static_cast<std::size_t>(model.rock_count()), 0);
  for (const auto& p : belief.particles()) {
    for (int i = 0; i < model.rock_count(); ++i) good[static_cast<std::size_t>(i)] += (p.valuable >> i) & 1U;
  }
  for (int i = 0; i < model.rock_count(); ++i) {
    if ((first.sampled >> i) & 1U) continue;
    const Cell rock = model.rocks()[static_cast<std::size_t>(i)];
    const auto R = Value::integer(i);
    atoms.insert(GroundAtom("dist", {R, Value::integer(manhattan(agent, rock))}));
    atoms.insert(GroundAtom("delta_x", {R, Value::integer(rock.x - agent.x)}));
    atoms.insert(GroundAtom("delta_y", {R, Value::integer(rock.y - agent.y)}));
    const double fraction =
        static_cast<double>(good[static_cast<std::size_t>(i)]) / static_cast<double>(belief.size());
    atoms.insert(GroundAtom("guess", {R, Value::integer(percent_bucket(fraction))}));
  }
  return atoms;
}

GroundAtom rocksample_action_atom(const Rocksample& model, int action, Cell agent) {
  if (action < 0 || action >= model.action_count())
    throw InvalidAction("rocksample action " + std::to_string(action) + " out of range");
  if (action < Rocksample::kSample) return GroundAtom(direction_name(action));
  if (action == Rocksample::kSample) return GroundAtom("sample", {Value::integer(model.rock_at(agent))});
  return GroundAtom("check", {Value::integer(action - Rocksample::kFirstCheck)});
}

int rocksample_action_from_atom(const Rocksample& model, const GroundAtom& atom) {
  for (int d = 0; d < 4; ++d) {
    if (atom.predicate == direction_name(d) && atom.args.empty()) return d;
  }
  if (atom.predicate == "sample" && atom.args.size() == 1) return Rocksample::kSample;
  if (atom.predicate == "check" && atom.args.size() == 1 && atom.args[0].is_integer()) {
    const auto r = atom.args[0].number();
    if (r >= 0 && r < model.rock_count()) return Rocksample::kFirstCheck + static_cast<int>(r);
  }
  throw InvalidAtom("not a rocksample action atom: " + atom.str());
}

}  // namespace ecplan
