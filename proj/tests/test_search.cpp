#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "slope/oracle.hpp"
#include "slope/search.hpp"
#include "slope/worldgen.hpp"
#include "support/brute_force.hpp"

using namespace slope;

namespace {

Rater constant_rater(int w, int h, double value) {
  RatingGrid g;
  g.width = w;
  g.height = h;
  g.source = RatingSource::learned;
  g.ratings.assign(static_cast<std::size_t>(w) * h, value);
  return Rater::from_grid(std::move(g));
}

std::vector<Cell> diagonal_path() { return {{0, 0}, {1, 1}, {2, 2}}; }

GridMap random_map(std::mt19937& rng, int w, int h, double density) {
  GridMap map(w, h);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      if (u(rng) < density && Cell{x, y} != map.start() && Cell{x, y} != map.goal()) map.set_blocked({x, y}, true);
  return map;
}

}  // namespace

TEST_CASE("OpenList ordering: h, then exact g, then insertion order") {
  OpenList open(10);
  open.insert({2.0, {0, 0}, 0, 0});
  open.insert({1.0, {3, 0}, 1, 1});
  open.insert({1.0, {0, 2}, 2, 2});  // 2*sqrt2 < 3
  open.insert({1.0, {0, 2}, 3, 3});
  open.insert({0.5, {9, 9}, 4, 4});
  CHECK(open.size() == 5);
  CHECK_THROWS_AS(open.insert({0.0, {}, 5, 4}), ContractViolation);
  CHECK(open.pop_min().cell == 4);
  CHECK(open.pop_min().cell == 2);
  CHECK(open.pop_min().cell == 3);
  open.decrease_g(0, {0, 0});
  CHECK(open.pop_min().cell == 1);
  CHECK(open.contains(0));
  open.decrease_g(0, {});
  CHECK(open.pop_min().cell == 0);
  CHECK(open.empty());
  CHECK_THROWS_AS(open.pop_min(), ContractViolation);
}

TEST_CASE("greedy_search: empty 3x3") {
  const GridMap map(3, 3);
  const SearchResult r = greedy_search(map, Heuristic::euclidean());
  CHECK(r.status == SearchStatus::success);
  CHECK(r.path == diagonal_path());
  CHECK(r.path_cost == ExactCost{0, 2});
  CHECK(r.expanded.size() == 3);
  CHECK(r.expanded == diagonal_path());
  CHECK(r.open_remaining == 6);
  CHECK(path_is_valid(map, r));
}

TEST_CASE("greedy_search: start equals goal") {
  GridMap map(4, 4);
  map.set_goal(map.start());
  const SearchResult r = greedy_search(map, Heuristic::euclidean());
  CHECK(r.ok());
  CHECK(r.path == std::vector<Cell>{map.start()});
  CHECK(r.path_cost == ExactCost{});
  CHECK(r.expanded.size() == 1);
}

TEST_CASE("greedy_search: walled-off goal exhausts") {
  const GridMap map = testing::map_from_rows({
      "...@.",
      "...@@",
      ".....",
  });
  const SearchResult r = greedy_search(map, Heuristic::euclidean());
  CHECK(r.status == SearchStatus::exhausted);
  CHECK(r.path.empty());
  CHECK(r.expanded.size() == 11);
  CHECK(r.open_remaining == 0);
}

TEST_CASE("greedy_search: node limit") {
  const GridMap map(10, 10);
  SearchConfig cfg;
  cfg.node_limit = 3;
  const SearchResult r = greedy_search(map, Heuristic::euclidean(), cfg);
  CHECK(r.status == SearchStatus::node_limit);
  CHECK(r.expanded.size() == 4);  // runs while |CLOSED| <= N_max
}

TEST_CASE("greedy_search: reparenting keeps the cheaper parent") {
  // The heuristic pulls the search along the top row first; the bottom-row cell (2,0) is first
  // reached diagonally from (1,1) and later reparented through (1,0) for a cheaper g.
  const GridMap map = testing::map_from_rows({
      "....",
      "....",
  }, Cell{0, 0}, Cell{3, 0});
  std::vector<double> values = {
      // y = 0 row, then y = 1 row
      5.0, 3.0, 2.5, 0.0,
      4.0, 1.0, 6.0, 6.0,
  };
  const Heuristic h = Heuristic::grid_lookup(4, 2, values);
  const SearchResult r = greedy_search(map, h);
  REQUIRE(r.ok());
  CHECK(path_is_valid(map, r));
  // (0,0) -> (1,1) -> [(2,0) via diagonal] -> (3,0): two diagonals + one cardinal.
  CHECK(r.path == std::vector<Cell>{{0, 0}, {1, 1}, {2, 0}, {3, 0}});
  CHECK(r.path_cost == ExactCost{1, 2});
}

TEST_CASE("slope_search: no-pruning sentinel reproduces greedy") {
  const GridMap map = generate(WorldSpec{WorldType::single_bugtrap, 32, 32, 0, 0, {}});
  const OracleResult o = run_oracle(map);
  SearchConfig cfg;
  cfg.tau = SearchConfig::kNoPruning;
  const SearchResult g = greedy_search(map, Heuristic::euclidean());
  const SearchResult s = slope_search(map, Heuristic::euclidean(), Rater::from_grid(o.ratings), cfg);
  CHECK(s.expanded == g.expanded);
  CHECK(s.path == g.path);
  CHECK(s.open_remaining == g.open_remaining);
  CHECK(s.failsafe_count == 0);
}

TEST_CASE("slope_search: ground truth on empty 3x3") {
  const GridMap map(3, 3);
  const Rater gt = Rater::from_grid(run_oracle(map).ratings);
  SearchConfig cfg;
  cfg.tau = 0.9;
  const SearchResult r = slope_search(map, Heuristic::euclidean(), gt, cfg);
  CHECK(r.ok());
  CHECK(r.path == diagonal_path());
  CHECK(r.failsafe_count == 0);
  // Only the six off-diagonal 0.9 cells wait in the backup list.
  CHECK(r.open_remaining == 6);
}

TEST_CASE("slope_search: an all-zero rater falls back through halving") {
  const GridMap map(3, 3);
  SearchConfig cfg;
  cfg.tau = 0.9;
  const SearchResult r = slope_search(map, Heuristic::euclidean(), constant_rater(3, 3, 0.0), cfg);
  CHECK(r.ok());
  CHECK(r.failsafe_count >= 1);
  REQUIRE(r.tau_history.size() == static_cast<std::size_t>(r.failsafe_count) + 1);
  CHECK(r.tau_history[0] == 0.9);
  CHECK(r.tau_history[1] == 0.45);
  CHECK(path_is_valid(map, r));
}

TEST_CASE("slope_search: threshold floor switches pruning off") {
  // A corridor forces one failsafe per step when every rating is zero.
  GridMap map(12, 2);
  for (int x = 0; x < 12; ++x) map.set_blocked({x, 1}, x != 11);
  map.set_goal({11, 1});
  SearchConfig cfg;
  cfg.tau = 0.9;
  const SearchResult r = slope_search(map, Heuristic::euclidean(), constant_rater(12, 2, 0.0), cfg);
  REQUIRE(r.ok());
  // 0.9, 0.45, 0.225, 0.1125, 0.05625, then below 0.05 -> no pruning
  REQUIRE(r.tau_history.size() == 6);
  for (std::size_t j = 1; j < 5; ++j) CHECK(r.tau_history[j] == doctest::Approx(0.9 / std::pow(2.0, j)));
  CHECK(r.tau_history[5] == SearchConfig::kNoPruning);
  CHECK(r.final_tau == SearchConfig::kNoPruning);
  CHECK(r.failsafe_count == 5);
}

TEST_CASE("slope_search rejects thresholds outside [0,1]") {
  const GridMap map(3, 3);
  SearchConfig cfg;
  cfg.tau = 1.5;
  CHECK_THROWS_AS(slope_search(map, Heuristic::euclidean(), Rater::always_pass(), cfg), ContractViolation);
}

TEST_CASE("sloper_search: ground truth succeeds first time") {
  const GridMap map(3, 3);
  const Rater gt = Rater::from_grid(run_oracle(map).ratings);
  const SearchResult r = sloper_search(map, Heuristic::euclidean(), gt);
  const SearchResult s = slope_search(map, Heuristic::euclidean(), gt);
  CHECK(r.ok());
  CHECK(r.path == s.path);
  CHECK(r.failsafe_count == 0);
  CHECK(r.tau_history == std::vector<double>{0.9});
  CHECK(r.open_remaining == 0);  // pruned children are dropped
}

TEST_CASE("sloper_search: constant 0.55 rater first passes at tau 0.5") {
  const GridMap map(3, 3);
  const SearchResult r = sloper_search(map, Heuristic::euclidean(), constant_rater(3, 3, 0.55));
  CHECK(r.ok());
  CHECK(r.failsafe_count == 4);
  CHECK(r.tau_history == std::vector<double>{0.9, 0.8, 0.7, 0.6, 0.5});
  CHECK(r.final_tau == 0.5);
  CHECK(r.expanded.size() == 3);
  CHECK(r.cumulative_expanded == 4 + 3);  // each failed attempt expands only the start
}

TEST_CASE("sloper_search: unsolvable map ends in a plain greedy pass") {
  const GridMap map = testing::map_from_rows({
      "...@.",
      "...@@",
      ".....",
  });
  const SearchResult r = sloper_search(map, Heuristic::euclidean(), constant_rater(5, 3, 0.3));
  CHECK(r.status == SearchStatus::exhausted);
  CHECK(r.path.empty());
  CHECK(r.failsafe_count == 10);
  REQUIRE(r.tau_history.size() == 11);
  CHECK(r.tau_history.back() == SearchConfig::kNoPruning);
  for (std::size_t k = 0; k + 1 < r.tau_history.size(); ++k) {
    CHECK(r.tau_history[k] == doctest::Approx(0.9 - 0.1 * static_cast<double>(k)));
  }
  CHECK(r.expanded.size() == 11);
}

TEST_CASE("planner properties on random maps") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 150; ++trial) {
    const GridMap map = random_map(rng, 12 + trial % 7, 10 + trial % 5, 0.3);
    const bool solvable = reachable(map, map.start(), map.goal());
    const Heuristic euclid = Heuristic::euclidean();
    const SearchResult g = greedy_search(map, euclid);
    CHECK(g.ok() == solvable);

    SearchConfig off;
    off.tau = SearchConfig::kNoPruning;
    off.sloper_tau = SearchConfig::kNoPruning;
    CHECK(slope_search(map, euclid, Rater::always_pass(), {}).expanded == g.expanded);
    CHECK(slope_search(map, euclid, Rater::always_pass(), off).expanded == g.expanded);
    CHECK(sloper_search(map, euclid, Rater::always_pass(), off).expanded == g.expanded);

    if (!solvable) continue;
    const OracleResult o = run_oracle(map);
    const Rater gt = Rater::from_grid(o.ratings);
    std::vector<double> noisy_values(map.cell_count());
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (auto& v : noisy_values) v = u(rng);
    RatingGrid noisy = o.ratings;
    noisy.source = RatingSource::learned;
    noisy.ratings = noisy_values;

    for (const Rater* d : {&gt, static_cast<const Rater*>(nullptr)}) {
      const Rater rater = d ? *d : Rater::from_grid(noisy);
      int insert_violations = 0;
      SearchConfig cfg;
      cfg.tau = 0.9;
      cfg.on_insert = [&](const OpenInsertion& ev) {
        if (ev.list != OpenKind::active || ev.cell == map.start()) return;
        if (ev.failsafe_count == 0 && !(rater.rate(ev.cell) > 0.9)) ++insert_violations;
        if (ev.tau != SearchConfig::kNoPruning && !(rater.rate(ev.cell) > ev.tau)) ++insert_violations;
      };
      const SearchResult s = slope_search(map, euclid, rater, cfg);
      const SearchResult r = sloper_search(map, euclid, rater, cfg);
      CHECK(insert_violations == 0);
      for (const SearchResult* res : {&s, &r}) {
        REQUIRE(res->ok());
        CHECK(path_is_valid(map, *res));
        std::set<Cell> unique(res->expanded.begin(), res->expanded.end());
        CHECK(unique.size() == res->expanded.size());
      }
      for (std::size_t j = 1; j < s.tau_history.size(); ++j) {
        if (s.tau_history[j] != SearchConfig::kNoPruning) {
          CHECK(s.tau_history[j] == doctest::Approx(0.9 / std::pow(2.0, static_cast<double>(j))));
        }
      }
      for (std::size_t k = 1; k < r.tau_history.size(); ++k) {
        if (r.tau_history[k] != SearchConfig::kNoPruning) {
          CHECK(r.tau_history[k - 1] - r.tau_history[k] == doctest::Approx(0.1));
        }
      }
      CHECK(r.failsafe_count + 1 == static_cast<int>(r.tau_history.size()));
    }
    // With ground truth at 0.9 only the optimal region is admitted and it always links start to goal.
    CHECK(slope_search(map, euclid, gt).failsafe_count == 0);
    CHECK(sloper_search(map, euclid, gt).failsafe_count == 0);
  }
}
