#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "slope/grid.hpp"
#include "support/brute_force.hpp"

using namespace slope;

namespace {

std::set<std::pair<int, int>> cells_of(const std::vector<Successor>& succ) {
  std::set<std::pair<int, int>> out;
  for (const auto& s : succ) out.insert({s.cell.x, s.cell.y});
  return out;
}

}  // namespace

TEST_CASE("expand: full neighbourhood of an interior cell") {
  GridMap map(3, 3);
  const auto succ = expand(map, {1, 1});
  REQUIRE(succ.size() == 8);
  int cardinal = 0, diagonal = 0;
  for (const auto& s : succ) {
    if (s.step_cost == ExactCost{1, 0}) ++cardinal;
    if (s.step_cost == ExactCost{0, 1}) ++diagonal;
  }
  CHECK(cardinal == 4);
  CHECK(diagonal == 4);
}

TEST_CASE("expand: corner cell") {
  GridMap map(3, 3);
  const auto succ = expand(map, {0, 0});
  REQUIRE(succ.size() == 3);
  for (const auto& s : succ) {
    if (s.cell == Cell{1, 1}) CHECK(s.step_cost == ExactCost{0, 1});
    else CHECK(s.step_cost == ExactCost{1, 0});
  }
  CHECK(cells_of(succ) == std::set<std::pair<int, int>>{{1, 0}, {0, 1}, {1, 1}});
}

TEST_CASE("expand: blocked neighbour is omitted") {
  GridMap map(3, 3);
  map.set_blocked({1, 0}, true);
  CHECK(cells_of(expand(map, {0, 0})) == std::set<std::pair<int, int>>{{0, 1}, {1, 1}});
}

TEST_CASE("expand: contract violations") {
  GridMap map(3, 3);
  map.set_blocked({1, 1}, true);
  CHECK_THROWS_AS(expand(map, {1, 1}), ContractViolation);
  CHECK_THROWS_AS(expand(map, {3, 0}), ContractViolation);
  CHECK_THROWS_AS(expand(map, {-1, 2}), ContractViolation);
}

TEST_CASE("expand: all-unit transition model") {
  GridMap map(3, 3);
  TransitionModel unit{MoveCosts::all_unit};
  for (const auto& s : expand(map, {1, 1}, unit)) CHECK(s.step_cost == ExactCost{1, 0});
}

TEST_CASE("expand: random maps never return self, obstacles or duplicates") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    GridMap map(6, 5);
    for (int y = 0; y < 5; ++y)
      for (int x = 0; x < 6; ++x)
        if ((rng() % 4) == 0 && Cell{x, y} != map.start() && Cell{x, y} != map.goal()) map.set_blocked({x, y}, true);
    for (int y = 0; y < 5; ++y) {
      for (int x = 0; x < 6; ++x) {
        const Cell c{x, y};
        if (!map.free(c)) continue;
        const auto succ = expand(map, c);
        CHECK(cells_of(succ).size() == succ.size());
        for (const auto& s : succ) {
          CHECK(s.cell != c);
          CHECK(map.free(s.cell));
          CHECK(std::abs(s.cell.x - c.x) <= 1);
          CHECK(std::abs(s.cell.y - c.y) <= 1);
        }
      }
    }
  }
}

TEST_CASE("compare_cost: hand examples") {
  CHECK(compare_cost({2, 1}, {3, 0}) == std::strong_ordering::greater);
  CHECK(compare_cost({0, 0}, {0, 0}) == std::strong_ordering::equal);
  CHECK(compare_cost({7, 0}, {0, 5}) == std::strong_ordering::less);
  CHECK(compare_cost({0, 5}, {7, 0}) == std::strong_ordering::greater);
  CHECK(ExactCost{3, 2} == ExactCost{3, 2});
  CHECK(ExactCost{3, 2} != ExactCost{2, 3});
}

TEST_CASE("compare_cost agrees with floating point away from ties") {
  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<std::int64_t> dist(0, 20000);
  int checked = 0;
  for (int i = 0; i < 1'000'000; ++i) {
    const ExactCost a{dist(rng), dist(rng)};
    const ExactCost b{dist(rng), dist(rng)};
    const double gap = a.value() - b.value();
    const auto ord = compare_cost(a, b);
    if (a == b) {
      REQUIRE(ord == std::strong_ordering::equal);
      continue;
    }
    REQUIRE(ord != std::strong_ordering::equal);
    if (std::abs(gap) > 1e-6) {
      ++checked;
      REQUIRE((ord < 0) == (gap < 0));
    }
  }
  CHECK(checked > 999'000);
}

TEST_CASE("cost addition is associative and commutative") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::int64_t> dist(0, 1000);
  for (int i = 0; i < 10000; ++i) {
    const ExactCost a{dist(rng), dist(rng)}, b{dist(rng), dist(rng)}, c{dist(rng), dist(rng)};
    REQUIRE((a + b) + c == a + (b + c));
    REQUIRE(a + b == b + a);
  }
}

TEST_CASE("euclidean_value") {
  CHECK(euclidean_value({0, 0}, {3, 4}) == doctest::Approx(5.0));
  CHECK(euclidean_value({2, 2}, {2, 2}) == 0.0);
  CHECK(euclidean_value({0, 0}, {31, 31}) == doctest::Approx(31.0 * std::sqrt(2.0)));
  CHECK(euclidean_value({0, 0}, {31, 31}) == doctest::Approx(43.8406).epsilon(1e-5));
}

TEST_CASE("GridMap invariants") {
  CHECK_THROWS_AS(GridMap(1, 5), ContractViolation);
  GridMap map(4, 4);
  CHECK(map.start() == Cell{0, 0});
  CHECK(map.goal() == Cell{3, 3});
  CHECK_THROWS_AS(map.set_blocked(map.start(), true), ContractViolation);
  map.set_blocked({2, 2}, true);
  CHECK_THROWS_AS(map.set_goal({2, 2}), ContractViolation);
  CHECK_THROWS_AS(map.set_start({4, 0}), ContractViolation);
}

TEST_CASE("map text format: rows are top-first and start/goal lines override") {
  const std::string text =
      "type octile\nheight 3\nwidth 4\nmap\n"
      "...@\n"
      ".@..\n"
      "....\n"
      "start 0 1\ngoal 3 0\n";
  std::istringstream in(text);
  const GridMap map = parse_map(in, "demo");
  CHECK(map.width() == 4);
  CHECK(map.height() == 3);
  CHECK(map.blocked({3, 2}));
  CHECK(map.blocked({1, 1}));
  CHECK_FALSE(map.blocked({0, 0}));
  CHECK(map.start() == Cell{0, 1});
  CHECK(map.goal() == Cell{3, 0});

  std::ostringstream out;
  write_map(out, map);
  std::istringstream again(out.str());
  CHECK(parse_map(again, "demo") == map);
}

TEST_CASE("map text format: errors") {
  auto parse = [](const std::string& s) {
    std::istringstream in(s);
    return parse_map(in);
  };
  CHECK_THROWS_AS(parse("type octile\nheight 2\nwidth 3\nmap\n...\n..\n"), FormatError);
  CHECK_THROWS_AS(parse("type octile\nheight 2\nwidth 2\nmap\n.x\n..\n"), FormatError);
  CHECK_THROWS_AS(parse("type octile\nheight 2\nwidth 2\nmap\n.@\n..\n"), FormatError);  // goal blocked
  CHECK_THROWS_AS(parse("type octile\nheight 2\n"), FormatError);
  CHECK_THROWS_AS(load_map("/nonexistent/file.map"), IoError);
}

TEST_CASE("reachable flood fill") {
  const GridMap open = testing::map_from_rows({"...", "...", "..."});
  CHECK(reachable(open, open.start(), open.goal()));
  const GridMap walled = testing::map_from_rows({"..@", "@@@", "..."}, Cell{0, 0}, Cell{0, 2});
  CHECK_FALSE(reachable(walled, walled.start(), walled.goal()));
  // Diagonal squeeze between two obstacles is allowed.
  const GridMap squeeze = testing::map_from_rows({".@", "@."}, Cell{1, 0}, Cell{0, 1});
  CHECK(reachable(squeeze, squeeze.start(), squeeze.goal()));
}
