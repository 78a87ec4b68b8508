#include "slope/heuristics.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "slope/grid_file.hpp"

namespace slope {

Heuristic Heuristic::euclidean() { return Heuristic(Kind::euclidean, 0, 0, nullptr); }

Heuristic Heuristic::grid_lookup(int width, int height, std::vector<double> values) {
  if (width < 1 || height < 1 ||
      values.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw ContractViolation("grid_lookup heuristic: value count does not match dimensions");
  }
  return Heuristic(Kind::grid_lookup, width, height,
                   std::make_shared<const std::vector<double>>(std::move(values)));
}

Heuristic Heuristic::from_cost_field(const CostField& field) {
  return grid_lookup(field.width(), field.height(), field.numeric());
}

double Heuristic::value(Cell n, Cell goal) const {
  if (kind_ == Kind::euclidean) return euclidean_value(n, goal);
  if (n.x < 0 || n.y < 0 || n.x >= width_ || n.y >= height_) {
    std::ostringstream os;
    os << "heuristic lookup: cell " << n << " outside " << width_ << "x" << height_ << " field";
    throw LookupError(os.str());
  }
  return (*values_)[static_cast<std::size_t>(n.y) * width_ + n.x];
}

double h_value(const Heuristic& h, Cell n, Cell goal) { return h.value(n, goal); }

Rater Rater::always_pass() { return Rater(Kind::always_pass, nullptr); }

Rater Rater::from_grid(RatingGrid grid) {
  const Kind kind = grid.source == RatingSource::learned ? Kind::learned : Kind::ground_truth;
  return Rater(kind, std::make_shared<const RatingGrid>(std::move(grid)));
}

const RatingGrid& Rater::grid() const {
  if (!grid_) throw ConfigError("rater: no rating grid configured");
  return *grid_;
}

double Rater::rate(Cell n) const {
  if (kind_ == Kind::always_pass) return 1.0;
  const RatingGrid& g = grid();
  if (n.x < 0 || n.y < 0 || n.x >= g.width || n.y >= g.height) {
    std::ostringstream os;
    os << "rater: cell " << n << " outside " << g.width << "x" << g.height << " rating grid";
    throw LookupError(os.str());
  }
  return g.rating(n);
}

double rate(const Rater& d, Cell n) { return d.rate(n); }

void write_h_grid(std::ostream& out, int width, int height, const std::vector<double>& values) {
  GridFile file;
  file.width = width;
  file.height = height;
  file.m = 0;
  file.source = "hvalue";
  file.values = values;
  write_grid_file(out, file);
}

void save_h_grid(const std::string& path, const CostField& field) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write h-grid '" + path + "'");
  write_h_grid(out, field.width(), field.height(), field.numeric());
}

Heuristic parse_h_grid(std::istream& in) {
  GridFile file = parse_grid_file(in);
  if (file.source != "hvalue") throw FormatError("h-grid: expected 'source hvalue', got '" + file.source + "'");
  for (double v : file.values) {
    if (v < 0.0) throw FormatError("h-grid: negative value");
  }
  return Heuristic::grid_lookup(file.width, file.height, std::move(file.values));
}

Heuristic load_h_grid(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open h-grid '" + path + "'");
  try {
    return parse_h_grid(in);
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

}  // namespace slope
