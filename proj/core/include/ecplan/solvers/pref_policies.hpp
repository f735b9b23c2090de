#pragma once

#include <memory>
#include <vector>

#include "ecplan/domains/pocman.hpp"
#include "ecplan/domains/rocksample.hpp"
#include "ecplan/solvers/despot.hpp"

namespace ecplan {

/// Handcrafted rocksample policy: check the nearest rock whose evidence is
/// still balanced, sample a rock believed good, walk to the nearest rock
/// believed good, otherwise head east.
class RocksamplePref : public RolloutPolicy<RocksampleState> {
 public:
  explicit RocksamplePref(const Rocksample& model, int max_checks = 5) : model_(&model), max_checks_(max_checks) {}

  void reset(const RocksampleState&) override;
  int act(const RocksampleState& state) override;
  void observe(int action, Observation z) override;
  [[nodiscard]] std::unique_ptr<RolloutPolicy> clone() const override {
    return std::make_unique<RocksamplePref>(*this);
  }

 private:
  const Rocksample* model_;
  int max_checks_;
  std::vector<int> good_;
  std::vector<int> bad_;
};

/// Handcrafted pocman policy: keep going while no ghost is seen and no wall
/// blocks, else take the first direction with neither.
class PocmanPref : public RolloutPolicy<PocmanState> {
 public:
  explicit PocmanPref(const Pocman& model) : model_(&model) {}

  void reset(const PocmanState&) override {
    previous_ = kNorth;
    last_ = 0;
  }
  int act(const PocmanState& state) override;
  void observe(int action, Observation z) override {
    previous_ = action;
    last_ = z;
  }
  [[nodiscard]] std::unique_ptr<RolloutPolicy> clone() const override { return std::make_unique<PocmanPref>(*this); }

 private:
  const Pocman* model_;
  int previous_ = kNorth;
  Observation last_ = 0;
};

}  // namespace ecplan
