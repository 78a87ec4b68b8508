#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "slope/error.hpp"

namespace slope {

// Grid coordinate. (0,0) is the lower-left cell; y grows upwards.
struct Cell {
  int x = 0;
  int y = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

std::ostream& operator<<(std::ostream& os, const Cell& c);

// Path cost a + b*sqrt(2) held as the integer pair (a, b) so that equality is exact.
struct ExactCost {
  std::int64_t cardinal = 0;
  std::int64_t diagonal = 0;

  double value() const;
  bool is_zero() const { return cardinal == 0 && diagonal == 0; }

  ExactCost& operator+=(const ExactCost& o) {
    cardinal += o.cardinal;
    diagonal += o.diagonal;
    return *this;
  }
  friend ExactCost operator+(ExactCost a, const ExactCost& b) { return a += b; }
  friend bool operator==(const ExactCost&, const ExactCost&) = default;
  friend std::strong_ordering operator<=>(const ExactCost& a, const ExactCost& b);
};

std::ostream& operator<<(std::ostream& os, const ExactCost& c);

// Integer-only ordering of a.cardinal + a.diagonal*sqrt2 against b.
std::strong_ordering compare_cost(const ExactCost& a, const ExactCost& b);

inline constexpr ExactCost kCardinalStep{1, 0};
inline constexpr ExactCost kDiagonalStep{0, 1};

enum class MoveCosts {
  octile,    // 1 for cardinal, sqrt(2) for diagonal moves
  all_unit,  // every move costs 1
};

// Fixed 8-neighbourhood. Corner cutting between two diagonal obstacles is allowed.
struct TransitionModel {
  MoveCosts costs = MoveCosts::octile;

  ExactCost step_cost(int dx, int dy) const {
    if (dx != 0 && dy != 0 && costs == MoveCosts::octile) return kDiagonalStep;
    return kCardinalStep;
  }
};

struct Offset {
  int dx;
  int dy;
};

// Neighbour enumeration order used by expand(); fixed so that search traces are reproducible.
inline constexpr Offset kNeighbourOffsets[8] = {
    {1, 0}, {0, 1}, {-1, 0}, {0, -1}, {1, 1}, {-1, 1}, {-1, -1}, {1, -1},
};

class GridMap {
 public:
  // Start and goal default to the lower-left and upper-right corners.
  GridMap(int width, int height, std::string id = {});
  GridMap(int width, int height, std::vector<std::uint8_t> blocked, Cell start, Cell goal,
          std::string id = {});

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t cell_count() const { return blocked_.size(); }
  const std::string& id() const { return id_; }
  void set_id(std::string id) { id_ = std::move(id); }

  Cell start() const { return start_; }
  Cell goal() const { return goal_; }
  // Both setters require the cell to be in bounds and free.
  void set_start(Cell c);
  void set_goal(Cell c);

  bool in_bounds(Cell c) const { return c.x >= 0 && c.y >= 0 && c.x < width_ && c.y < height_; }
  bool blocked(Cell c) const { return blocked_[index(c)] != 0; }
  bool free(Cell c) const { return in_bounds(c) && !blocked(c); }
  // Marking the start or goal as an obstacle is a contract violation.
  void set_blocked(Cell c, bool value);

  std::size_t index(Cell c) const {
    return static_cast<std::size_t>(c.y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(c.x);
  }
  Cell cell_at(std::size_t index) const {
    return {static_cast<int>(index % static_cast<std::size_t>(width_)),
            static_cast<int>(index / static_cast<std::size_t>(width_))};
  }

  const std::vector<std::uint8_t>& cells() const { return blocked_; }
  std::size_t obstacle_count() const;

  friend bool operator==(const GridMap&, const GridMap&) = default;

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> blocked_;
  Cell start_;
  Cell goal_;
  std::string id_;
};

struct Successor {
  Cell cell;
  ExactCost step_cost;

  friend bool operator==(const Successor&, const Successor&) = default;
};

// Free in-bounds 8-neighbours of n with their step costs.
std::vector<Successor> expand(const GridMap& map, Cell n, const TransitionModel& model = {});

double euclidean_value(Cell a, Cell b);

// 8-connected flood fill over free cells.
bool reachable(const GridMap& map, Cell from, Cell to);

// Reads/writes the MovingAI-style octile map text format with optional start/goal lines.
GridMap parse_map(std::istream& in, std::string id = {});
GridMap load_map(const std::string& path);
void write_map(std::ostream& out, const GridMap& map);
void save_map(const std::string& path, const GridMap& map);

}  // namespace slope
