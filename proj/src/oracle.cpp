#include "slope/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <queue>
#include <random>
#include <sstream>

#include "slope/grid_file.hpp"

namespace slope {

CostField::CostField(int width, int height, FieldRole role, Cell source)
    : width_(width),
      height_(height),
      role_(role),
      source_(source),
      values_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {}

std::vector<double> CostField::numeric() const {
  std::vector<double> out(values_.size(), std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i]) out[i] = values_[i]->value();
  }
  return out;
}

CostField dijkstra_field(const GridMap& map, Cell source, FieldRole role,
                         const TransitionModel& model) {
  if (!map.free(source)) throw OracleError("oracle: source cell is out of bounds or blocked");
  CostField field(map.width(), map.height(), role, source);

  struct Item {
    ExactCost cost;
    std::size_t index;
  };
  auto later = [](const Item& a, const Item& b) {
    const auto ord = compare_cost(a.cost, b.cost);
    if (ord != 0) return ord > 0;
    return a.index > b.index;
  };
  std::priority_queue<Item, std::vector<Item>, decltype(later)> frontier(later);
  std::vector<std::uint8_t> settled(map.cell_count(), 0);

  field.set(source, {});
  frontier.push({{}, map.index(source)});
  while (!frontier.empty()) {
    const Item top = frontier.top();
    frontier.pop();
    if (settled[top.index]) continue;
    settled[top.index] = 1;
    const Cell c = map.cell_at(top.index);
    // Undirected grid: reversed edges carry the same costs.
    for (const auto& succ : expand(map, c, model)) {
      const std::size_t ni = map.index(succ.cell);
      if (settled[ni]) continue;
      const ExactCost candidate = top.cost + succ.step_cost;
      const auto& current = field.at(succ.cell);
      if (!current || compare_cost(candidate, *current) < 0) {
        field.set(succ.cell, candidate);
        frontier.push({candidate, ni});
      }
    }
  }
  return field;
}

CostField cost_to_go_field(const GridMap& map, const TransitionModel& model) {
  CostField h = dijkstra_field(map, map.goal(), FieldRole::cost_to_go, model);
  if (map.start() != map.goal() && expand(map, map.goal(), model).empty()) {
    throw OracleError("oracle: goal cell is isolated");
  }
  return h;
}

CostField cost_to_come_field(const GridMap& map, const TransitionModel& model) {
  CostField g = dijkstra_field(map, map.start(), FieldRole::cost_to_come, model);
  if (map.start() != map.goal() && expand(map, map.start(), model).empty()) {
    throw OracleError("oracle: start cell is isolated");
  }
  return g;
}

std::vector<std::uint8_t> optimal_region(const GridMap& map, const CostField& g, const CostField& h) {
  if (g.width() != map.width() || g.height() != map.height() || h.width() != map.width() ||
      h.height() != map.height()) {
    throw ContractViolation("optimal_region: field dimensions do not match the map");
  }
  std::vector<std::uint8_t> region(map.cell_count(), 0);
  const auto& c_star = g.at(map.goal());
  if (!c_star) return region;
  for (std::size_t i = 0; i < map.cell_count(); ++i) {
    const Cell c = map.cell_at(i);
    const auto& gv = g.at(c);
    const auto& hv = h.at(c);
    if (gv && hv && *gv + *hv == *c_star) region[i] = 1;
  }
  return region;
}

std::vector<Cell> region_cells(const GridMap& map, const std::vector<std::uint8_t>& region) {
  std::vector<Cell> out;
  for (std::size_t i = 0; i < region.size(); ++i) {
    if (region[i]) out.push_back(map.cell_at(i));
  }
  return out;
}

const char* to_string(RatingSource s) {
  return s == RatingSource::ground_truth ? "ground_truth" : "learned";
}

RatingGrid region_distances(const GridMap& map, const std::vector<std::uint8_t>& region, int m) {
  if (m < 1) throw ContractViolation("region_distances: m must be >= 1");
  if (region.size() != map.cell_count()) throw ContractViolation("region_distances: region size mismatch");

  RatingGrid grid;
  grid.width = map.width();
  grid.height = map.height();
  grid.m = m;
  grid.source = RatingSource::ground_truth;
  grid.steps.assign(map.cell_count(), RatingGrid::kFar);
  grid.ratings.assign(map.cell_count(), 0.0);

  std::vector<int> dist(map.cell_count(), -1);
  std::deque<std::size_t> queue;
  for (std::size_t i = 0; i < region.size(); ++i) {
    if (region[i] && map.free(map.cell_at(i))) {
      dist[i] = 0;
      queue.push_back(i);
    }
  }
  if (queue.empty()) throw ContractViolation("region_distances: region is empty");

  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    if (dist[i] + 1 >= m) continue;  // everything further is far anyway
    const Cell c = map.cell_at(i);
    for (const auto& off : kNeighbourOffsets) {
      const Cell nb{c.x + off.dx, c.y + off.dy};
      if (!map.free(nb)) continue;
      const std::size_t ni = map.index(nb);
      if (dist[ni] >= 0) continue;
      dist[ni] = dist[i] + 1;
      queue.push_back(ni);
    }
  }

  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (dist[i] >= 0 && dist[i] < m) {
      grid.steps[i] = dist[i];
      grid.ratings[i] = static_cast<double>(m - dist[i]) / static_cast<double>(m);
    }
  }
  return grid;
}

OracleResult run_oracle(const GridMap& map, int m, const TransitionModel& model) {
  CostField h = cost_to_go_field(map, model);
  CostField g = cost_to_come_field(map, model);
  const auto& c_star = g.at(map.goal());
  if (!c_star) throw OracleError("oracle: goal is unreachable from start on map '" + map.id() + "'");
  auto region = optimal_region(map, g, h);
  auto ratings = region_distances(map, region, m);
  const ExactCost optimal = *c_star;
  const auto cells = static_cast<std::size_t>(optimal.cardinal + optimal.diagonal + 1);
  return {std::move(h), std::move(g), std::move(region), std::move(ratings), optimal, cells};
}

std::vector<DatasetSample> export_dataset(const std::vector<GridMap>& maps,
                                          const std::vector<RatingGrid>& grids, bool balance,
                                          std::uint64_t seed) {
  if (maps.size() != grids.size()) throw ContractViolation("export_dataset: maps and grids differ in count");
  std::vector<DatasetSample> out;
  for (std::size_t mi = 0; mi < maps.size(); ++mi) {
    const GridMap& map = maps[mi];
    const RatingGrid& grid = grids[mi];
    if (grid.width != map.width() || grid.height != map.height()) {
      throw ContractViolation("export_dataset: grid dimensions do not match map '" + map.id() + "'");
    }
    // Reachable = connected to the start through free cells.
    const CostField g = dijkstra_field(map, map.start(), FieldRole::cost_to_come);
    std::vector<DatasetSample> samples;
    for (int y = 0; y < map.height(); ++y) {
      for (int x = 0; x < map.width(); ++x) {
        const Cell c{x, y};
        if (g.reachable(c)) samples.push_back({map.id(), c, grid.rating(c)});
      }
    }

    if (balance) {
      std::map<double, std::vector<std::size_t>> classes;
      for (std::size_t i = 0; i < samples.size(); ++i) classes[samples[i].rating].push_back(i);
      if (classes.size() >= 2) {
        std::vector<std::pair<std::size_t, double>> sizes;
        for (const auto& [rating, members] : classes) sizes.emplace_back(members.size(), rating);
        // Largest first; equal sizes resolve to the lower rating for determinism.
        std::sort(sizes.begin(), sizes.end(), [](const auto& a, const auto& b) {
          return a.first != b.first ? a.first > b.first : a.second < b.second;
        });
        const std::size_t target = sizes[1].first;
        auto& largest = classes[sizes[0].second];
        if (largest.size() > target) {
          std::mt19937_64 engine(seed ^ (0x9e3779b97f4a7c15ULL * (mi + 1)));
          // Partial Fisher-Yates: the first `target` positions become the kept sample.
          for (std::size_t i = 0; i < target; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(engine() % (largest.size() - i));
            std::swap(largest[i], largest[j]);
          }
          std::vector<std::uint8_t> drop(samples.size(), 0);
          for (std::size_t i = target; i < largest.size(); ++i) drop[largest[i]] = 1;
          std::vector<DatasetSample> kept;
          for (std::size_t i = 0; i < samples.size(); ++i) {
            if (!drop[i]) kept.push_back(std::move(samples[i]));
          }
          samples = std::move(kept);
        }
      }
    }
    out.insert(out.end(), std::make_move_iterator(samples.begin()), std::make_move_iterator(samples.end()));
  }
  return out;
}

void write_rating_grid(std::ostream& out, const RatingGrid& grid) {
  GridFile file;
  file.width = grid.width;
  file.height = grid.height;
  file.m = grid.m;
  file.source = to_string(grid.source);
  file.values = grid.ratings;
  write_grid_file(out, file);
}

RatingGrid parse_rating_grid(std::istream& in) {
  GridFile file = parse_grid_file(in);
  RatingGrid grid;
  if (file.source == "ground_truth") {
    grid.source = RatingSource::ground_truth;
  } else if (file.source == "learned") {
    grid.source = RatingSource::learned;
  } else {
    throw FormatError("rating grid: unexpected source '" + file.source + "'");
  }
  if (file.m < 1) throw FormatError("rating grid: m must be >= 1");
  for (double v : file.values) {
    if (!(v >= 0.0 && v <= 1.0)) throw FormatError("rating grid: rating outside [0,1]");
  }
  grid.width = file.width;
  grid.height = file.height;
  grid.m = file.m;
  grid.ratings = std::move(file.values);
  return grid;
}

void save_rating_grid(const std::string& path, const RatingGrid& grid) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write rating grid '" + path + "'");
  write_rating_grid(out, grid);
}

RatingGrid load_rating_grid(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open rating grid '" + path + "'");
  try {
    return parse_rating_grid(in);
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

void write_dataset_csv(std::ostream& out, const std::vector<DatasetSample>& samples) {
  char buf[32];
  for (const auto& s : samples) {
    std::snprintf(buf, sizeof buf, "%.4f", s.rating);
    out << s.map_id << ',' << s.cell.x << ',' << s.cell.y << ',' << buf << '\n';
  }
}

}  // namespace slope
