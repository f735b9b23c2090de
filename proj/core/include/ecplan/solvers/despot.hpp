#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ecplan/macro/macro.hpp"
#include "ecplan/pomdp/belief.hpp"
#include "ecplan/pomdp/model.hpp"
#include "ecplan/solvers/pomcp.hpp"

namespace ecplan {

enum class UpperBoundKind { kTrivial, kMdp };
enum class LowerBoundKind { kTrivial, kPref, kLocal, kTimed };

struct DespotConfig {
  int scenarios = 500;
  double epsilon = 0.01;
  double xi = 0.95;
  int max_depth = 90;
  int trials = 100;
  int mdp_depth = 1;
  UpperBoundKind upper = UpperBoundKind::kMdp;
  LowerBoundKind lower = LowerBoundKind::kTrivial;
};

template <class State>
struct Scenario {
  State state;
  std::uint64_t seed = 0;
};

/// Generator for the scenario step at `depth`.
inline Rng scenario_stream(std::uint64_t seed, int depth) {
  return Rng(mix_seed(seed, static_cast<std::uint64_t>(depth)));
}

template <class State>
std::vector<Scenario<State>> build_scenarios(const ParticleBelief<State>& belief, int k, Rng& rng) {
  if (belief.size() == 0) throw NoParticles("empty belief");
  std::vector<Scenario<State>> out;
  out.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    const State& s = belief.sample(rng);
    out.push_back({s, rng()});
  }
  return out;
}

/// Default policy used by the pref lower bound. act() must only read the
/// observable part of the state.
template <class State>
class RolloutPolicy {
 public:
  virtual ~RolloutPolicy() = default;
  virtual void reset(const State& state) = 0;
  virtual int act(const State& state) = 0;
  virtual void observe(int action, Observation z) = 0;
  [[nodiscard]] virtual std::unique_ptr<RolloutPolicy> clone() const = 0;
};

/// Inputs of the lower bound: the macro window and the pref policy.
template <class State>
struct LowerBoundInputs {
  const MacroSet* macros = nullptr;
  int t = 0;
  const RolloutPolicy<State>* policy = nullptr;
};

struct BoundValue {
  double value = 0.0;
  int action = 0;
};

/// Action certified by the lower bound at tree depth `depth`.
template <BoundedModel M>
int certified_action(const M& model, LowerBoundKind kind, const LowerBoundInputs<typename M::State>& in,
                     int depth, const typename M::State* state = nullptr) {
  switch (kind) {
    case LowerBoundKind::kTimed:
    case LowerBoundKind::kLocal: {
      if (!in.macros) return model.default_action();
      MacroSet macros = *in.macros;
      if (kind == LowerBoundKind::kLocal)
        for (auto& m : macros) m.length = std::min(m.length, 1);
      if (auto longest = longest_macro(macros, in.t + depth)) return longest->action;
      return model.default_action();
    }
    case LowerBoundKind::kPref:
      if (in.policy && state) {
        auto p = in.policy->clone();
        p->reset(*state);
        return p->act(*state);
      }
      return model.default_action();
    case LowerBoundKind::kTrivial:
      break;
  }
  return model.default_action();
}

/// Mean over scenarios of the discounted value of the lower-bound policy,
/// rolled out from `depth` to the horizon on each scenario's stream.
template <BoundedModel M>
BoundValue lower_bound(const std::vector<Scenario<typename M::State>>& scenarios, LowerBoundKind kind,
                       const LowerBoundInputs<typename M::State>& in, const M& model, int depth,
                       int max_depth) {
  using State = typename M::State;
  BoundValue out;
  out.action = certified_action(model, kind, in, depth, scenarios.empty() ? nullptr : &scenarios.front().state);
  if (scenarios.empty()) return out;
  const double gamma = model.discount();
  double total = 0.0;
  for (const auto& sc : scenarios) {
    State s = sc.state;
    std::unique_ptr<RolloutPolicy<State>> policy;
    if (kind == LowerBoundKind::kPref && in.policy) {
      policy = in.policy->clone();
      policy->reset(s);
    }
    double scale = 1.0;
    for (int d = depth; d < max_depth; ++d) {
      const int a = policy ? policy->act(s) : out.action;
      Rng rng = scenario_stream(sc.seed, d);
      auto step = model.step(s, a, rng);
      total += scale * step.reward;
      if (step.terminal) break;
      if (policy) policy->observe(a, step.observation);
      scale *= gamma;
      s = std::move(step.next_state);
    }
  }
  out.value = total / static_cast<double>(scenarios.size());
  return out;
}

/// R_max / (1 - gamma), rounded to 1e-9 so decimal discounts give decimal
/// results (0.95 is not exact in binary).
inline double trivial_upper_bound(double max_reward, double discount) {
  return std::round(max_reward / (1.0 - discount) * 1e9) / 1e9;
}

namespace detail {

template <BoundedModel M>
double mdp_value(const M& model, const typename M::State& s, std::uint64_t seed, int depth, int remaining) {
  if (remaining == 0) return model.hindsight_bound(s);
  double best = -std::numeric_limits<double>::infinity();
  for (int a = 0; a < model.action_count(); ++a) {
    Rng rng = scenario_stream(seed, depth);
    auto step = model.step(s, a, rng);
    double v = step.reward;
    if (!step.terminal) v += model.discount() * mdp_value(model, step.next_state, seed, depth + 1, remaining - 1);
    best = std::max(best, v);
  }
  return best;
}

}  // namespace detail

/// Mean upper bound per scenario: R_max / (1 - gamma), or a depth-limited
/// best-action recursion on the revealed state with the hindsight value at
/// its leaves.
template <BoundedModel M>
double upper_bound(const std::vector<Scenario<typename M::State>>& scenarios, UpperBoundKind kind, const M& model,
                   int depth = 0, int mdp_depth = 1) {
  if (kind == UpperBoundKind::kTrivial) return trivial_upper_bound(model.max_reward(), model.discount());
  if (scenarios.empty()) return 0.0;
  double total = 0.0;
  for (const auto& sc : scenarios) total += detail::mdp_value(model, sc.state, sc.seed, depth, mdp_depth);
  return total / static_cast<double>(scenarios.size());
}

struct DespotStats {
  int trials = 0;
  std::size_t nodes = 0;
  std::size_t expanded = 0;
  /// Nodes observed with l > u, or a backup that lowered l or raised u.
  std::size_t bound_violations = 0;
  double root_lower = 0.0;
  double root_upper = 0.0;
  bool used_default = false;
};

struct DespotResult {
  int action = 0;
  int certified_default = 0;
  DespotStats stats;
};

template <BoundedModel M>
class Despot {
 public:
  using State = typename M::State;

  struct Particle {
    int scenario;
    State state;
  };

  struct ActionBranch {
    double reward = 0.0;  // summed over the node's scenarios
    double lower = 0.0;
    double upper = 0.0;
    std::vector<int> children;
  };

  struct Node {
    int depth = 0;
    int parent = -1;
    std::vector<Particle> particles;
    double lower = 0.0;  // totals over the node's scenarios
    double upper = 0.0;
    int default_action = 0;
    bool expanded = false;
    std::vector<ActionBranch> actions;
  };

  Despot(const M& model, DespotConfig config, LowerBoundInputs<State> inputs = {})
      : model_(model), config_(config), inputs_(inputs) {
    if (config_.scenarios < 1) throw std::invalid_argument("scenario count must be >= 1");
    if (!(config_.epsilon > 0)) throw std::invalid_argument("epsilon must be positive");
  }

  DespotResult search(const ParticleBelief<State>& belief, Rng& rng) {
    scenarios_ = build_scenarios(belief, config_.scenarios, rng);
    nodes_.clear();
    stats_ = {};
    std::vector<Particle> all;
    for (int i = 0; i < static_cast<int>(scenarios_.size()); ++i) all.push_back({i, scenarios_[static_cast<std::size_t>(i)].state});
    const int root = make_node(std::move(all), 0, -1);
    DespotResult result;
    result.certified_default = nodes_[0].default_action;
    const double k = static_cast<double>(config_.scenarios);
    if ((nodes_[0].upper - nodes_[0].lower) / k < config_.epsilon) {
      result.action = result.certified_default;
      stats_.used_default = true;
    } else {
      for (int i = 0; i < config_.trials; ++i) {
        trial(root);
        ++stats_.trials;
        if ((nodes_[0].upper - nodes_[0].lower) / k < config_.epsilon) break;
      }
      result.action = best_root_action();
    }
    stats_.nodes = nodes_.size();
    stats_.root_lower = nodes_[0].lower / k;
    stats_.root_upper = nodes_[0].upper / k;
    result.stats = stats_;
    return result;
  }

  [[nodiscard]] const std::vector<Node>& nodes() const { return nodes_; }

 private:
  std::vector<Scenario<State>> node_scenarios(const std::vector<Particle>& particles) const {
    std::vector<Scenario<State>> out;
    out.reserve(particles.size());
    for (const auto& p : particles) out.push_back({p.state, scenarios_[static_cast<std::size_t>(p.scenario)].seed});
    return out;
  }

  int make_node(std::vector<Particle> particles, int depth, int parent) {
    Node node;
    node.depth = depth;
    node.parent = parent;
    const auto sc = node_scenarios(particles);
    const double n = static_cast<double>(particles.size());
    const BoundValue lb = lower_bound(sc, config_.lower, inputs_, model_, depth, config_.max_depth);
    node.default_action = lb.action;
    if (depth >= config_.max_depth) {
      node.lower = node.upper = 0.0;
    } else {
      node.lower = lb.value * n;
      node.upper = upper_bound(sc, config_.upper, model_, depth, config_.mdp_depth) * n;
      node.lower = std::min(node.lower, node.upper);
    }
    node.particles = std::move(particles);
    nodes_.push_back(std::move(node));
    return static_cast<int>(nodes_.size()) - 1;
  }

  void expand(int id) {
    const int depth = nodes_[static_cast<std::size_t>(id)].depth;
    std::vector<ActionBranch> branches(static_cast<std::size_t>(model_.action_count()));
    for (int a = 0; a < model_.action_count(); ++a) {
      std::map<Observation, std::vector<Particle>> groups;
      double reward = 0.0;
      for (const auto& p : nodes_[static_cast<std::size_t>(id)].particles) {
        Rng rng = scenario_stream(scenarios_[static_cast<std::size_t>(p.scenario)].seed, depth);
        auto out = model_.step(p.state, a, rng);
        reward += out.reward;
        if (!out.terminal) groups[out.observation].push_back({p.scenario, std::move(out.next_state)});
      }
      auto& branch = branches[static_cast<std::size_t>(a)];
      branch.reward = reward;
      for (auto& [z, particles] : groups) branch.children.push_back(make_node(std::move(particles), depth + 1, id));
    }
    Node& node = nodes_[static_cast<std::size_t>(id)];
    node.actions = std::move(branches);
    node.expanded = true;
    ++stats_.expanded;
    refresh_branches(id);
  }

  void refresh_branches(int id) {
    Node& node = nodes_[static_cast<std::size_t>(id)];
    for (auto& branch : node.actions) {
      double lo = 0.0, up = 0.0;
      for (int c : branch.children) {
        lo += nodes_[static_cast<std::size_t>(c)].lower;
        up += nodes_[static_cast<std::size_t>(c)].upper;
      }
      branch.lower = branch.reward + model_.discount() * lo;
      branch.upper = branch.reward + model_.discount() * up;
    }
  }

  double excess(const Node& node, double root_gap) const {
    const double k = static_cast<double>(config_.scenarios);
    return std::pow(model_.discount(), node.depth) * (node.upper - node.lower) / k -
           static_cast<double>(node.particles.size()) / k * config_.xi * root_gap;
  }

  void trial(int root) {
    const double root_gap = (nodes_[0].upper - nodes_[0].lower) / static_cast<double>(config_.scenarios);
    int id = root;
    while (true) {
      if (nodes_[static_cast<std::size_t>(id)].depth >= config_.max_depth) break;
      if (!nodes_[static_cast<std::size_t>(id)].expanded) expand(id);
      const Node& node = nodes_[static_cast<std::size_t>(id)];
      int best_a = 0;
      for (int a = 1; a < static_cast<int>(node.actions.size()); ++a)
        if (node.actions[static_cast<std::size_t>(a)].upper > node.actions[static_cast<std::size_t>(best_a)].upper) best_a = a;
      int next = -1;
      double best_e = -std::numeric_limits<double>::infinity();
      for (int c : node.actions[static_cast<std::size_t>(best_a)].children) {
        const double e = excess(nodes_[static_cast<std::size_t>(c)], root_gap);
        if (e > best_e) {
          best_e = e;
          next = c;
        }
      }
      if (next < 0 || best_e <= 0) break;
      id = next;
    }
    for (; id >= 0; id = nodes_[static_cast<std::size_t>(id)].parent) backup(id);
  }

  void backup(int id) {
    if (!nodes_[static_cast<std::size_t>(id)].expanded) return;
    refresh_branches(id);
    Node& node = nodes_[static_cast<std::size_t>(id)];
    double best_lower = -std::numeric_limits<double>::infinity();
    double best_upper = -std::numeric_limits<double>::infinity();
    for (const auto& b : node.actions) {
      best_lower = std::max(best_lower, b.lower);
      best_upper = std::max(best_upper, b.upper);
    }
    const double old_lower = node.lower, old_upper = node.upper;
    const double lower = std::min(std::max(old_lower, best_lower), old_upper);
    const double upper = std::max(std::min(old_upper, best_upper), lower);
    node.lower = lower;
    node.upper = upper;
    if (node.lower > node.upper || node.lower < old_lower || node.upper > old_upper) ++stats_.bound_violations;
  }

  int best_root_action() const {
    const Node& root = nodes_[0];
    if (!root.expanded) return root.default_action;
    int best = 0;
    for (int a = 1; a < static_cast<int>(root.actions.size()); ++a)
      if (root.actions[static_cast<std::size_t>(a)].lower > root.actions[static_cast<std::size_t>(best)].lower) best = a;
    return best;
  }

  const M& model_;
  DespotConfig config_;
  LowerBoundInputs<State> inputs_;
  std::vector<Scenario<State>> scenarios_;
  std::vector<Node> nodes_;
  DespotStats stats_;
};

}  // namespace ecplan
