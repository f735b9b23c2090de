#include "ecplan/solvers/pomcp.hpp"

#include <algorithm>

namespace ecplan {

double uct_value(double value, int n_h, int n_ha, double c) {
  if (n_ha == 0) return std::numeric_limits<double>::infinity();
  return value + c * std::sqrt(std::log(static_cast<double>(n_h)) / n_ha);
}

std::vector<double> rollout_weights(int action_count, const std::vector<int>& suggested,
                                    const CoverageTable& coverage) {
  const auto n = static_cast<std::size_t>(action_count);
  if (suggested.empty()) return std::vector<double>(n, 1.0 / action_count);
  double floor = std::numeric_limits<double>::infinity();
  for (int a = 0; a < action_count; ++a) floor = std::min(floor, coverage.at(a));
  std::vector<double> w(n, floor);
  for (int a : suggested)
    if (a >= 0 && a < action_count) w[static_cast<std::size_t>(a)] = coverage.at(a);
  double total = 0.0;
  for (double x : w) total += x;
  for (double& x : w) x /= total;
  return w;
}

}  // namespace ecplan
