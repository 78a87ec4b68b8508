#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "slope/grid.hpp"

namespace slope {

enum class FieldRole { cost_to_go, cost_to_come };

// Exact shortest-path costs over one map. Unreachable cells hold no value.
class CostField {
 public:
  CostField(int width, int height, FieldRole role, Cell source);

  int width() const { return width_; }
  int height() const { return height_; }
  FieldRole role() const { return role_; }
  // Goal for cost-to-go, start for cost-to-come.
  Cell source() const { return source_; }

  const std::optional<ExactCost>& at(Cell c) const { return values_[index(c)]; }
  void set(Cell c, ExactCost v) { values_[index(c)] = v; }
  bool reachable(Cell c) const { return values_[index(c)].has_value(); }

  // Numeric values with +inf for unreachable cells, row-major.
  std::vector<double> numeric() const;

 private:
  std::size_t index(Cell c) const { return static_cast<std::size_t>(c.y) * width_ + c.x; }

  int width_;
  int height_;
  FieldRole role_;
  Cell source_;
  std::vector<std::optional<ExactCost>> values_;
};

// Dijkstra from the goal, run to exhaustion of the reachable component.
CostField cost_to_go_field(const GridMap& map, const TransitionModel& model = {});
// Dijkstra from the start.
CostField cost_to_come_field(const GridMap& map, const TransitionModel& model = {});
// Exhaustive Dijkstra from an arbitrary source.
CostField dijkstra_field(const GridMap& map, Cell source, FieldRole role,
                         const TransitionModel& model = {});

// Cells with g*(n) + h*(n) == C* exactly. Row-major membership flags.
std::vector<std::uint8_t> optimal_region(const GridMap& map, const CostField& g, const CostField& h);
std::vector<Cell> region_cells(const GridMap& map, const std::vector<std::uint8_t>& region);

enum class RatingSource { ground_truth, learned };

const char* to_string(RatingSource s);

// Per-cell optimality ratings. `steps` is empty for grids loaded from file.
struct RatingGrid {
  static constexpr int kFar = -1;

  int width = 0;
  int height = 0;
  int m = 10;
  RatingSource source = RatingSource::ground_truth;
  std::vector<int> steps;       // BFS steps to the region, kFar at >= m or unreachable
  std::vector<double> ratings;  // in [0, 1]

  std::size_t index(Cell c) const { return static_cast<std::size_t>(c.y) * width + c.x; }
  double rating(Cell c) const { return ratings[index(c)]; }
  int step(Cell c) const { return steps[index(c)]; }
};

// Multi-source BFS from the region (each 8-connected move is one step); d = (m - min(k, m)) / m.
RatingGrid region_distances(const GridMap& map, const std::vector<std::uint8_t>& region, int m);

// Convenience: h*, g*, region, ratings for one map.
struct OracleResult {
  CostField cost_to_go;
  CostField cost_to_come;
  std::vector<std::uint8_t> region;
  RatingGrid ratings;
  ExactCost optimal_cost;
  std::size_t optimal_path_cells;  // node count of any minimum-cost path
};

OracleResult run_oracle(const GridMap& map, int m = 10, const TransitionModel& model = {});

struct DatasetSample {
  std::string map_id;
  Cell cell;
  double rating = 0.0;
};

// One sample per reachable free cell. With `balance`, the largest rating class of each map is
// subsampled (seeded) down to the size of the second largest.
std::vector<DatasetSample> export_dataset(const std::vector<GridMap>& maps,
                                          const std::vector<RatingGrid>& grids, bool balance,
                                          std::uint64_t seed = 0);

// "height H / width W / m M / source S" then H rows, top row first, 4 decimals.
void write_rating_grid(std::ostream& out, const RatingGrid& grid);
RatingGrid parse_rating_grid(std::istream& in);
void save_rating_grid(const std::string& path, const RatingGrid& grid);
RatingGrid load_rating_grid(const std::string& path);

// map_id,x,y,rating
void write_dataset_csv(std::ostream& out, const std::vector<DatasetSample>& samples);

}  // namespace slope
