#include <map>
#include <random>
#include <sstream>

#include "doctest.h"
#include "slope/oracle.hpp"
#include "slope/worldgen.hpp"
#include "support/brute_force.hpp"

using namespace slope;
using slope::testing::map_from_rows;
using slope::testing::PathEnumerator;

namespace {

std::vector<std::uint8_t> mask_of(const GridMap& map, std::initializer_list<Cell> cells) {
  std::vector<std::uint8_t> m(map.cell_count(), 0);
  for (const Cell& c : cells) m[map.index(c)] = 1;
  return m;
}

// Bellman condition in both directions plus the zero at the source.
void check_bellman(const GridMap& map, const CostField& f) {
  CHECK(f.at(f.source()) == ExactCost{});
  for (std::size_t i = 0; i < map.cell_count(); ++i) {
    const Cell c = map.cell_at(i);
    if (!map.free(c) || !f.reachable(c) || c == f.source()) continue;
    std::optional<ExactCost> best;
    for (const auto& s : expand(map, c)) {
      const auto& nv = f.at(s.cell);
      REQUIRE(nv.has_value());
      const ExactCost via = *nv + s.step_cost;
      if (!best || via < *best) best = via;
    }
    REQUIRE(best.has_value());
    CHECK(*f.at(c) == *best);
  }
}

}  // namespace

TEST_CASE("cost_to_go_field: empty 3x3") {
  const GridMap map(3, 3);
  const CostField h = cost_to_go_field(map);
  CHECK(h.at({2, 2}) == ExactCost{0, 0});
  CHECK(h.at({0, 0}) == ExactCost{0, 2});  // frozen from exhaustive path enumeration
  PathEnumerator brute(map);
  for (int y = 0; y < 3; ++y)
    for (int x = 0; x < 3; ++x) CHECK(h.at({x, y}) == brute.min_cost({x, y}, map.goal()));
}

TEST_CASE("cost_to_go_field: wall column with a single opening at the top") {
  GridMap map(3, 3);
  map.set_blocked({1, 0}, true);
  map.set_blocked({1, 1}, true);
  const CostField h = cost_to_go_field(map);
  // Brute force: (0,0)->(0,1)->(1,2)->(2,2) costs 2 + sqrt2.
  CHECK(h.at({0, 0}) == ExactCost{2, 1});
  CHECK(h.at({0, 0}) == PathEnumerator(map).min_cost({0, 0}, {2, 2}));
  CHECK_FALSE(h.reachable({1, 0}));
}

TEST_CASE("cost_to_come_field") {
  const GridMap map(3, 3);
  const CostField g = cost_to_come_field(map);
  CHECK(g.at({0, 0}) == ExactCost{});
  CHECK(g.at({2, 1}) == ExactCost{1, 1});

  // Symmetry: g* from the start equals the h* field of a map whose goal is the start.
  const GridMap forest = generate(WorldSpec{WorldType::forest, 12, 12, 5, 0, {}});
  GridMap mirrored = forest;
  mirrored.set_goal(forest.start());
  const CostField g2 = cost_to_come_field(forest);
  const CostField h2 = cost_to_go_field(mirrored);
  for (std::size_t i = 0; i < forest.cell_count(); ++i) {
    const Cell c = forest.cell_at(i);
    CHECK(g2.at(c) == h2.at(c));
  }
}

TEST_CASE("oracle errors on isolated endpoints") {
  GridMap map(3, 3);
  map.set_blocked({1, 2}, true);
  map.set_blocked({2, 1}, true);
  map.set_blocked({1, 1}, true);
  CHECK_THROWS_AS(cost_to_go_field(map), OracleError);
  CHECK_THROWS_AS(run_oracle(map), OracleError);
  GridMap map2(3, 3);
  map2.set_blocked({1, 0}, true);
  map2.set_blocked({0, 1}, true);
  map2.set_blocked({1, 1}, true);
  CHECK_THROWS_AS(cost_to_come_field(map2), OracleError);
}

TEST_CASE("optimal_region: empty 3x3 is the diagonal") {
  const GridMap map(3, 3);
  const auto region = optimal_region(map, cost_to_come_field(map), cost_to_go_field(map));
  CHECK(region == mask_of(map, {{0, 0}, {1, 1}, {2, 2}}));
}

TEST_CASE("optimal_region: single-cell corridor is the whole corridor") {
  const GridMap map = map_from_rows({
      "@@@@.",
      "@@@.@",
      "@@.@@",
      "..@@@",
  });
  const auto region = optimal_region(map, cost_to_come_field(map), cost_to_go_field(map));
  for (std::size_t i = 0; i < map.cell_count(); ++i) CHECK(region[i] == (map.blocked(map.cell_at(i)) ? 0 : 1));
}

TEST_CASE("optimal_region: empty 4x3 equals the union of all optimal paths") {
  const GridMap map(4, 3);
  const auto region = optimal_region(map, cost_to_come_field(map), cost_to_go_field(map));
  // Frozen from exhaustive enumeration: one cardinal and two diagonal moves in any order.
  CHECK(region == mask_of(map, {{0, 0}, {1, 0}, {1, 1}, {2, 1}, {2, 2}, {3, 2}}));
  PathEnumerator brute(map);
  CHECK(region == brute.cells_on_paths_of_cost(map.start(), map.goal(), ExactCost{1, 2}));
}

TEST_CASE("region_distances: 3x3 diagonal region") {
  const GridMap map(3, 3);
  const auto region = mask_of(map, {{0, 0}, {1, 1}, {2, 2}});
  const RatingGrid grid = region_distances(map, region, 10);
  for (int y = 0; y < 3; ++y) {
    for (int x = 0; x < 3; ++x) {
      if (x == y) {
        CHECK(grid.step({x, y}) == 0);
        CHECK(grid.rating({x, y}) == 1.0);
      } else {
        CHECK(grid.step({x, y}) == 1);
        CHECK(grid.rating({x, y}) == doctest::Approx(0.9));
      }
    }
  }
}

TEST_CASE("region_distances: cells m steps away rate zero") {
  const GridMap map(12, 2, "strip");
  const auto region = mask_of(map, {{0, 0}, {0, 1}});
  const RatingGrid grid = region_distances(map, region, 10);
  CHECK(grid.rating({9, 0}) == doctest::Approx(0.1));
  CHECK(grid.step({9, 0}) == 9);
  CHECK(grid.step({10, 0}) == RatingGrid::kFar);
  CHECK(grid.rating({10, 0}) == 0.0);
  CHECK(grid.rating({11, 1}) == 0.0);
  CHECK_THROWS_AS(region_distances(map, region, 0), ContractViolation);
  CHECK_THROWS_AS(region_distances(map, std::vector<std::uint8_t>(map.cell_count(), 0), 10), ContractViolation);
}

TEST_CASE("ground-truth ratings on generated maps: Bellman, region, ring and level invariants") {
  for (auto w : kAllWorlds) {
    CAPTURE(to_string(w));
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      WorldSpec spec;
      spec.world_type = w;
      spec.seed = seed;
      const GridMap map = generate(spec);
      const OracleResult o = run_oracle(map, 10);
      check_bellman(map, o.cost_to_go);
      check_bellman(map, o.cost_to_come);
      const ExactCost c_star = *o.cost_to_come.at(map.goal());
      CHECK(o.cost_to_go.at(map.start()) == c_star);
      for (std::size_t i = 0; i < map.cell_count(); ++i) {
        const Cell c = map.cell_at(i);
        if (!o.cost_to_come.reachable(c)) continue;
        const ExactCost total = *o.cost_to_come.at(c) + *o.cost_to_go.at(c);
        CHECK(total >= c_star);
        CHECK((total == c_star) == (o.region[i] == 1));
      }
      const RatingGrid& r = o.ratings;
      CHECK(r.rating(map.start()) == 1.0);
      CHECK(r.rating(map.goal()) == 1.0);
      for (std::size_t i = 0; i < map.cell_count(); ++i) {
        const Cell c = map.cell_at(i);
        const int k = r.steps[i];
        const double d = r.ratings[i];
        CHECK(d >= 0.0);
        CHECK(d <= 1.0);
        const double scaled = d * r.m;
        CHECK(scaled == doctest::Approx(std::round(scaled)));
        CHECK((d == 1.0) == (k == 0));
        CHECK((k == 0) == (o.region[i] == 1));
        CHECK((d == 0.0) == (k == RatingGrid::kFar));
        if (k >= 1) {
          int min_nb = 1 << 20;
          for (const auto& s : expand(map, c)) {
            const int kn = r.step(s.cell);
            if (kn != RatingGrid::kFar) min_nb = std::min(min_nb, kn);
          }
          CHECK(min_nb == k - 1);
        }
      }
    }
  }
}

TEST_CASE("export_dataset: one sample per reachable cell") {
  GridMap map(5, 5, "m0");
  map.set_blocked({2, 2}, true);
  // (4,0) is cut off from everything else.
  map.set_blocked({3, 0}, true);
  map.set_blocked({3, 1}, true);
  map.set_blocked({4, 1}, true);
  const OracleResult o = run_oracle(map);
  const auto samples = export_dataset({map}, {o.ratings}, false);
  CHECK(samples.size() == 25 - 4 - 1);
  for (const auto& s : samples) {
    CHECK(s.map_id == "m0");
    CHECK(map.free(s.cell));
    CHECK(s.rating == o.ratings.rating(s.cell));
  }
}

TEST_CASE("export_dataset: balancing trims the largest class to the second largest") {
  // 640 cells: 500 rated 0.0, 80 rated 0.9, 60 rated 1.0 (synthetic labels).
  GridMap map(32, 20, "synthetic");
  RatingGrid grid;
  grid.width = 32;
  grid.height = 20;
  grid.ratings.assign(640, 0.0);
  for (std::size_t i = 0; i < 80; ++i) grid.ratings[i] = 0.9;
  for (std::size_t i = 80; i < 140; ++i) grid.ratings[i] = 1.0;

  const auto balanced = export_dataset({map}, {grid}, true, 42);
  std::map<double, int> counts;
  for (const auto& s : balanced) ++counts[s.rating];
  CHECK(counts[0.0] == 80);
  CHECK(counts[0.9] == 80);
  CHECK(counts[1.0] == 60);

  CHECK(export_dataset({map}, {grid}, false).size() == 640);

  const auto again = export_dataset({map}, {grid}, true, 42);
  REQUIRE(again.size() == balanced.size());
  for (std::size_t i = 0; i < again.size(); ++i) CHECK(again[i].cell == balanced[i].cell);
}

TEST_CASE("rating grid text format") {
  const GridMap map(4, 3);
  const OracleResult o = run_oracle(map);
  std::ostringstream out;
  write_rating_grid(out, o.ratings);
  const std::string text = out.str();
  CHECK(text.rfind("height 3\nwidth 4\nm 10\nsource ground_truth\n", 0) == 0);
  std::istringstream in(text);
  const RatingGrid back = parse_rating_grid(in);
  CHECK(back.width == 4);
  CHECK(back.height == 3);
  CHECK(back.source == RatingSource::ground_truth);
  CHECK(back.ratings == o.ratings.ratings);  // multiples of 0.1 survive 4 decimals exactly

  std::istringstream bad("height 1\nwidth 2\nm 10\nsource learned\n0.5 1.5\n");
  CHECK_THROWS_AS(parse_rating_grid(bad), FormatError);
  std::istringstream short_row("height 1\nwidth 2\nm 10\nsource learned\n0.5\n");
  CHECK_THROWS_AS(parse_rating_grid(short_row), FormatError);
}

TEST_CASE("dataset csv layout") {
  std::ostringstream out;
  write_dataset_csv(out, {{"forest_train_0", {3, 4}, 0.9}, {"forest_train_0", {0, 0}, 1.0}});
  CHECK(out.str() == "forest_train_0,3,4,0.9000\nforest_train_0,0,0,1.0000\n");
}
