#include "ecplan/pomdp/model.hpp"

namespace ecplan {

double discounted_return(std::span<const double> rewards, double discount) {
  double total = 0.0;
  double weight = 1.0;
  for (double r : rewards) {
    total += weight * r;
    weight *= discount;
  }
  return total;
}

}  // namespace ecplan
