#pragma once

#include <cstdint>
#include <deque>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rapsim {

enum class Cell : std::uint8_t { Free, Wall };

struct Position {
  int x = 0;
  int y = 0;

  friend bool operator==(const Position& a, const Position& b) {
    return a.x == b.x && a.y == b.y;
  }
  friend bool operator!=(const Position& a, const Position& b) { return !(a == b); }
};

// Occupancy map. Walls block movement but never radio (see radio.hpp).
class Grid {
 public:
  Grid(int width, int height, Cell fill = Cell::Free)
      : width_(width), height_(height) {
    if (width < 1 || height < 1)
      throw std::invalid_argument("Grid: width and height must be >= 1");
    cells_.assign(static_cast<std::size_t>(width) * height, fill);
  }

  int width() const { return width_; }
  int height() const { return height_; }

  bool in_bounds(Position p) const {
    return p.x >= 0 && p.x < width_ && p.y >= 0 && p.y < height_;
  }

  Cell at(Position p) const { return cells_[index(p)]; }
  void set(Position p, Cell c) { cells_[index(p)] = c; }

  bool is_free(Position p) const { return in_bounds(p) && at(p) == Cell::Free; }

  std::size_t index(Position p) const {
    if (!in_bounds(p))
      throw std::invalid_argument("Grid: position out of bounds");
    return static_cast<std::size_t>(p.y) * width_ + p.x;
  }

  int free_cell_count() const {
    int n = 0;
    for (Cell c : cells_)
      if (c == Cell::Free) ++n;
    return n;
  }

  // Free cells in row-major order; the scenario generator samples from this.
  std::vector<Position> free_cells() const {
    std::vector<Position> out;
    for (int y = 0; y < height_; ++y)
      for (int x = 0; x < width_; ++x)
        if (at({x, y}) == Cell::Free) out.push_back({x, y});
    return out;
  }

  // 4-connected BFS over free cells. field[index] = steps from `from`,
  // -1 where unreachable. Throws if `from` is out of bounds or a wall.
  std::vector<int> distance_field(Position from) const {
    if (!in_bounds(from) || at(from) == Cell::Wall)
      throw std::invalid_argument("distance_field: start must be a free in-bounds cell");
    std::vector<int> field(cells_.size(), -1);
    std::deque<Position> queue;
    field[index(from)] = 0;
    queue.push_back(from);
    while (!queue.empty()) {
      const Position p = queue.front();
      queue.pop_front();
      const int d = field[index(p)];
      const Position steps[4] = {
          {p.x + 1, p.y}, {p.x - 1, p.y}, {p.x, p.y + 1}, {p.x, p.y - 1}};
      for (const Position& q : steps) {
        if (!in_bounds(q) || at(q) == Cell::Wall) continue;
        if (field[index(q)] >= 0) continue;
        field[index(q)] = d + 1;
        queue.push_back(q);
      }
    }
    return field;
  }

  // Map text: '.' free, '#' wall, one row per line. An optional first line
  // "W H" pins the dimensions; without it they are inferred.
  static Grid parse(const std::string& text) {
    std::vector<std::string> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      rows.push_back(line);
    }
    while (!rows.empty() && rows.back().empty()) rows.pop_back();
    if (rows.empty()) throw std::invalid_argument("map: empty input");

    int declared_w = -1, declared_h = -1;
    if (looks_like_header(rows.front(), declared_w, declared_h))
      rows.erase(rows.begin());
    if (rows.empty()) throw std::invalid_argument("map: header but no rows");

    const int h = static_cast<int>(rows.size());
    const int w = static_cast<int>(rows.front().size());
    if (w < 1) throw std::invalid_argument("map: empty first row");
    if (declared_w >= 0 && (declared_w != w || declared_h != h))
      throw std::invalid_argument("map: header does not match row data");

    Grid g(w, h);
    for (int y = 0; y < h; ++y) {
      if (static_cast<int>(rows[y].size()) != w)
        throw std::invalid_argument("map: rows must all have equal length");
      for (int x = 0; x < w; ++x) {
        const char c = rows[y][x];
        if (c == '.')
          g.set({x, y}, Cell::Free);
        else if (c == '#')
          g.set({x, y}, Cell::Wall);
        else
          throw std::invalid_argument(std::string("map: bad cell character '") + c + "'");
      }
    }
    return g;
  }

  static Grid load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("map: cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
  }

  std::string to_text() const {
    std::string out;
    out.reserve(cells_.size() + height_);
    for (int y = 0; y < height_; ++y) {
      for (int x = 0; x < width_; ++x)
        out.push_back(at({x, y}) == Cell::Free ? '.' : '#');
      out.push_back('\n');
    }
    return out;
  }

  void save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("map: cannot write file: " + path);
    out << to_text();
  }

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.width_ == b.width_ && a.height_ == b.height_ && a.cells_ == b.cells_;
  }

 private:
  static bool looks_like_header(const std::string& line, int& w, int& h) {
    std::istringstream in(line);
    int a = 0, b = 0;
    std::string rest;
    if (!(in >> a >> b)) return false;
    if (in >> rest) return false;
    if (a < 1 || b < 1) throw std::invalid_argument("map: bad header dimensions");
    w = a;
    h = b;
    return true;
  }

  int width_;
  int height_;
  std::vector<Cell> cells_;
};

// Shortest 4-connected walk over free cells; nullopt when no path exists.
// Symmetric in its endpoints.
inline std::optional<int> movement_distance(const Grid& grid, Position a, Position b) {
  if (!grid.in_bounds(a) || !grid.in_bounds(b) || grid.at(a) == Cell::Wall ||
      grid.at(b) == Cell::Wall)
    throw std::invalid_argument("movement_distance: endpoints must be free in-bounds cells");
  const auto field = grid.distance_field(a);
  const int d = field[grid.index(b)];
  if (d < 0) return std::nullopt;
  return d;
}

// Rectangular store: vertical wall columns every `aisle_spacing` cells, each
// pierced by a single mid-height gap. Free space stays one connected region.
inline Grid make_store_map(int width, int height, int aisle_spacing) {
  if (aisle_spacing < 2)
    throw std::invalid_argument("make_store_map: aisle_spacing must be >= 2");
  Grid g(width, height);
  const int gap_y = height / 2;
  for (int x = aisle_spacing; x <= width - 2; x += aisle_spacing)
    for (int y = 0; y < height; ++y)
      if (y != gap_y) g.set({x, y}, Cell::Wall);
  return g;
}

}  // namespace rapsim
