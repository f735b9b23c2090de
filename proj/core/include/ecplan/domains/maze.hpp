#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ecplan/domains/common.hpp"

namespace ecplan {

/// Wall bitmap. Text format: one row per line, '#' wall, '.' free; rows
/// must have equal length. Row 0 is the top (north) row.
class Maze {
 public:
  static Maze parse(std::string_view text);
  static Maze load(const std::string& path);

  [[nodiscard]] int width() const { return width_; }
  [[nodiscard]] int height() const { return height_; }
  [[nodiscard]] bool inside(Cell c) const { return c.x >= 0 && c.y >= 0 && c.x < width_ && c.y < height_; }
  [[nodiscard]] bool free(Cell c) const { return inside(c) && !wall_[index(c)]; }
  [[nodiscard]] int index(Cell c) const { return c.y * width_ + c.x; }
  [[nodiscard]] Cell cell(int index) const { return {index % width_, index / width_}; }
  [[nodiscard]] int cell_count() const { return width_ * height_; }
  [[nodiscard]] const std::vector<Cell>& free_cells() const { return free_cells_; }

  /// Neighbour in direction d (north is row - 1).
  static Cell neighbour(Cell c, int d);

  [[nodiscard]] std::string str() const;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<bool> wall_;
  std::vector<Cell> free_cells_;
};

}  // namespace ecplan
