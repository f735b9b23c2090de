#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ecplan/macro/macro.hpp"
#include "ecplan/pomdp/belief.hpp"
#include "ecplan/pomdp/model.hpp"

namespace ecplan {

class NoParticles : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct PomcpConfig {
  int simulations = 1024;
  double exploration = 1.0;
  double discount = 0.95;
  int max_depth = 40;
  int n_max = 10;
  bool heuristic_enabled = false;
};

/// Macro window for one search: the current macro set, the execution index t
/// since the last refresh, and the rollout coverage table.
struct PomcpHeuristic {
  const MacroSet* macros = nullptr;
  int t = 0;
  const CoverageTable* coverage = nullptr;
};

/// V + c sqrt(ln N_h / N_ha); +inf when N_ha is 0.
double uct_value(double value, int n_h, int n_ha, double c);

/// Rollout distribution over `action_count` actions.
std::vector<double> rollout_weights(int action_count, const std::vector<int>& suggested,
                                    const CoverageTable& coverage);

struct ActionStats {
  int visits = 0;
  double value = 0.0;
  bool seeded = false;  // N set to n_max, no real return backed up yet
};

/// One POMCP tree. reset() builds the root; simulate() runs one descent.
template <GenerativeModel M>
class Pomcp {
 public:
  using State = typename M::State;

  struct Node {
    int visits = 0;
    bool expanded = false;
    std::vector<ActionStats> actions;
    std::map<std::pair<int, Observation>, int> children;
  };

  Pomcp(const M& model, PomcpConfig config) : model_(model), config_(config) {
    if (config_.simulations < 1) throw std::invalid_argument("simulations must be >= 1");
    if (config_.exploration < 0) throw std::invalid_argument("exploration must be >= 0");
  }

  void reset(const ParticleBelief<State>& belief, const PomcpHeuristic* heuristic = nullptr) {
    if (belief.size() == 0) throw NoParticles("empty root belief");
    belief_ = &belief;
    heuristic_ = config_.heuristic_enabled ? heuristic : nullptr;
    nodes_.clear();
    weight_cache_.clear();
    expand(new_node(), 0);
  }

  void simulate(Rng& rng) {
    State s = belief_->sample(rng);
    descend(0, s, 0, rng);
  }

  /// Root action with the highest value among visited actions (ties to the
  /// lowest id).
  [[nodiscard]] int best_action() const {
    const auto& stats = nodes_[0].actions;
    int best = 0;
    double best_value = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < static_cast<int>(stats.size()); ++a) {
      const auto& st = stats[static_cast<std::size_t>(a)];
      if (st.seeded || st.visits == 0) continue;
      if (st.value > best_value) {
        best_value = st.value;
        best = a;
      }
    }
    return best;
  }

  int search(const ParticleBelief<State>& belief, Rng& rng, const PomcpHeuristic* heuristic = nullptr) {
    reset(belief, heuristic);
    for (int i = 0; i < config_.simulations; ++i) simulate(rng);
    return best_action();
  }

  [[nodiscard]] const Node& root() const { return nodes_[0]; }
  [[nodiscard]] std::size_t node_count() const { return nodes_.size(); }
  [[nodiscard]] const std::vector<Node>& nodes() const { return nodes_; }

 private:
  int new_node() {
    nodes_.emplace_back();
    return static_cast<int>(nodes_.size()) - 1;
  }

  void expand(int id, int depth) {
    Node& node = nodes_[static_cast<std::size_t>(id)];
    node.expanded = true;
    node.actions.assign(static_cast<std::size_t>(model_.action_count()), ActionStats{});
    if (!heuristic_ || !heuristic_->macros) return;
    for (int a : suggested_actions(*heuristic_->macros, heuristic_->t + depth)) {
      if (a < 0 || a >= model_.action_count()) continue;
      auto& st = node.actions[static_cast<std::size_t>(a)];
      st.visits = config_.n_max;
      st.seeded = true;
    }
  }

  int select(const Node& node) const {
    int best = -1;
    double best_value = -std::numeric_limits<double>::infinity();
    // Seeded actions without a real return come first, then unvisited ones.
    for (int a = 0; a < static_cast<int>(node.actions.size()); ++a)
      if (node.actions[static_cast<std::size_t>(a)].seeded) return a;
    for (int a = 0; a < static_cast<int>(node.actions.size()); ++a) {
      const auto& st = node.actions[static_cast<std::size_t>(a)];
      const double v = uct_value(st.value, std::max(node.visits, 1), st.visits, config_.exploration);
      if (v > best_value) {
        best_value = v;
        best = a;
      }
    }
    return best;
  }

  double descend(int id, State& s, int depth, Rng& rng) {
    if (depth >= config_.max_depth) return 0.0;
    if (!nodes_[static_cast<std::size_t>(id)].expanded) {
      expand(id, depth);
      ++nodes_[static_cast<std::size_t>(id)].visits;
      return rollout(s, depth, rng);
    }
    const int a = select(nodes_[static_cast<std::size_t>(id)]);
    auto out = model_.step(s, a, rng);
    double ret = out.reward;
    if (!out.terminal) {
      int child;
      auto& children = nodes_[static_cast<std::size_t>(id)].children;
      const auto key = std::make_pair(a, out.observation);
      if (auto it = children.find(key); it != children.end()) {
        child = it->second;
      } else {
        child = new_node();
        nodes_[static_cast<std::size_t>(id)].children.emplace(key, child);
      }
      ret += config_.discount * descend(child, out.next_state, depth + 1, rng);
    }
    Node& node = nodes_[static_cast<std::size_t>(id)];
    ++node.visits;
    auto& st = node.actions[static_cast<std::size_t>(a)];
    if (st.seeded) {
      st.seeded = false;
      st.value = ret;
      st.visits = config_.n_max + 1;
    } else {
      ++st.visits;
      st.value += (ret - st.value) / st.visits;
    }
    return ret;
  }

  const std::vector<double>* weights_at(int depth) {
    if (!heuristic_ || !heuristic_->coverage) return nullptr;
    auto it = weight_cache_.find(depth);
    if (it == weight_cache_.end()) {
      const auto suggested =
          heuristic_->macros ? suggested_actions(*heuristic_->macros, heuristic_->t + depth) : std::vector<int>{};
      it = weight_cache_.emplace(depth, rollout_weights(model_.action_count(), suggested, *heuristic_->coverage))
               .first;
    }
    return &it->second;
  }

  double rollout(State s, int depth, Rng& rng) {
    double total = 0.0;
    double scale = 1.0;
    for (int d = depth; d < config_.max_depth; ++d) {
      int a;
      if (const auto* w = weights_at(d)) {
        double u = rng.uniform();
        a = static_cast<int>(w->size()) - 1;
        for (std::size_t i = 0; i < w->size(); ++i) {
          u -= (*w)[i];
          if (u < 0) {
            a = static_cast<int>(i);
            break;
          }
        }
      } else {
        a = rng.below(model_.action_count());
      }
      auto out = model_.step(s, a, rng);
      total += scale * out.reward;
      if (out.terminal) break;
      scale *= config_.discount;
      s = std::move(out.next_state);
    }
    return total;
  }

  const M& model_;
  PomcpConfig config_;
  const ParticleBelief<State>* belief_ = nullptr;
  const PomcpHeuristic* heuristic_ = nullptr;
  std::vector<Node> nodes_;
  std::map<int, std::vector<double>> weight_cache_;
};

}  // namespace ecplan
