#pragma once

#include <memory>
#include <string>
#include <vector>

#include "slope/grid.hpp"
#include "slope/oracle.hpp"

namespace slope {

// Cost-to-go estimate used to order OPEN.
class Heuristic {
 public:
  enum class Kind { euclidean, grid_lookup };

  static Heuristic euclidean();
  // Row-major per-cell values, e.g. exact h* or a learned cost-to-go grid.
  static Heuristic grid_lookup(int width, int height, std::vector<double> values);
  static Heuristic from_cost_field(const CostField& field);

  Kind kind() const { return kind_; }
  int width() const { return width_; }
  int height() const { return height_; }

  // grid_lookup ignores `goal`; out-of-field cells throw LookupError.
  double value(Cell n, Cell goal) const;

 private:
  Heuristic(Kind kind, int width, int height, std::shared_ptr<const std::vector<double>> values)
      : kind_(kind), width_(width), height_(height), values_(std::move(values)) {}

  Kind kind_;
  int width_ = 0;
  int height_ = 0;
  std::shared_ptr<const std::vector<double>> values_;
};

double h_value(const Heuristic& h, Cell n, Cell goal);

// Optimality rating d(n) in [0, 1] used for pruning.
class Rater {
 public:
  enum class Kind { ground_truth, learned, always_pass };

  static Rater always_pass();
  static Rater from_grid(RatingGrid grid);

  // Throws ConfigError when a grid kind has no backing grid (default-constructed rater).
  Rater() = default;

  Kind kind() const { return kind_; }
  bool has_grid() const { return grid_ != nullptr; }
  const RatingGrid& grid() const;

  double rate(Cell n) const;

 private:
  Rater(Kind kind, std::shared_ptr<const RatingGrid> grid) : kind_(kind), grid_(std::move(grid)) {}

  Kind kind_ = Kind::ground_truth;
  std::shared_ptr<const RatingGrid> grid_;
};

double rate(const Rater& d, Cell n);

// h-grid files share the rating grid layout with "source hvalue".
void save_h_grid(const std::string& path, const CostField& field);
void write_h_grid(std::ostream& out, int width, int height, const std::vector<double>& values);
Heuristic parse_h_grid(std::istream& in);
Heuristic load_h_grid(const std::string& path);

}  // namespace slope
