#include "ecplan/domains/maze.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ecplan {

Maze Maze::parse(std::string_view text) {
  Maze m;
  std::vector<std::string> rows;
  std::string line;
  std::istringstream in{std::string(text)};
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    rows.push_back(line);
  }
  if (rows.empty()) throw std::invalid_argument("maze is empty");
  m.height_ = static_cast<int>(rows.size());
  m.width_ = static_cast<int>(rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (static_cast<int>(rows[r].size()) != m.width_)
      throw std::invalid_argument("maze row " + std::to_string(r + 1) + " has length " +
                                  std::to_string(rows[r].size()) + ", expected " + std::to_string(m.width_));
    for (char ch : rows[r]) {
      if (ch != '#' && ch != '.')
        throw std::invalid_argument(std::string("maze character '") + ch + "' on row " + std::to_string(r + 1));
      m.wall_.push_back(ch == '#');
    }
  }
  for (int i = 0; i < m.cell_count(); ++i) {
    if (!m.wall_[static_cast<std::size_t>(i)]) m.free_cells_.push_back(m.cell(i));
  }
  if (m.free_cells_.empty()) throw std::invalid_argument("maze has no free cells");
  return m;
}

Maze Maze::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open maze file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

Cell Maze::neighbour(Cell c, int d) {
  switch (d) {
    case kNorth: return {c.x, c.y - 1};
    case kEast: return {c.x + 1, c.y};
    case kSouth: return {c.x, c.y + 1};
    default: return {c.x - 1, c.y};
  }
}

std::string Maze::str() const {
  std::string out;
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) out += wall_[static_cast<std::size_t>(index({x, y}))] ? '#' : '.';
    out += '\n';
  }
  return out;
}

}  // namespace ecplan
