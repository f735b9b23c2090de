#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace ecplan {

class InvalidAction : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class InvalidAtom : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Cell {
  int x = 0;
  int y = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

inline int manhattan(Cell a, Cell b) { return std::abs(a.x - b.x) + std::abs(a.y - b.y); }

/// Movement actions share ids in both domains.
enum Direction : int { kNorth = 0, kEast = 1, kSouth = 2, kWest = 3 };

constexpr const char* direction_name(int d) {
  constexpr const char* names[] = {"north", "east", "south", "west"};
  return names[d];
}

constexpr int opposite(int d) { return (d + 2) % 4; }

/// Rounds a probability to the nearest multiple of 10 percent.
inline int percent_bucket(double p) { return static_cast<int>(p * 10.0 + 0.5) * 10; }

}  // namespace ecplan
