#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <set>
#include <string_view>
#include <vector>

#include "slope/grid.hpp"
#include "slope/heuristics.hpp"

namespace slope {

// Priority list keyed by (h, g, insertion sequence) with at most one entry per cell.
class OpenList {
 public:
  struct Entry {
    double h = 0.0;
    ExactCost g;
    std::uint64_t seq = 0;
    std::size_t cell = 0;
  };

  explicit OpenList(std::size_t cell_count) : slots_(cell_count) {}

  bool empty() const { return order_.empty(); }
  std::size_t size() const { return order_.size(); }
  bool contains(std::size_t cell) const { return slots_[cell].has_value(); }
  const Entry& entry(std::size_t cell) const { return *slots_[cell]; }

  // Inserting a cell already present is a contract violation.
  void insert(const Entry& e);
  // Lowers g of a present entry; keeps its h and sequence number.
  void decrease_g(std::size_t cell, ExactCost g);
  Entry pop_min();
  void clear();

  friend void swap(OpenList& a, OpenList& b) noexcept {
    a.order_.swap(b.order_);
    a.slots_.swap(b.slots_);
  }

 private:
  struct Less {
    bool operator()(const Entry& a, const Entry& b) const;
  };

  std::set<Entry, Less> order_;
  std::vector<std::optional<Entry>> slots_;
};

enum class SearchStatus { success, exhausted, node_limit };

std::string_view to_string(SearchStatus s);

enum class OpenKind { active, backup };

// Reported for every insertion into either open list, including the initial start node.
struct OpenInsertion {
  Cell cell;
  OpenKind list = OpenKind::active;
  double tau = 0.0;
  int failsafe_count = 0;
  int attempt = 0;
};

struct SearchConfig {
  static constexpr double kNoPruning = -std::numeric_limits<double>::infinity();

  std::size_t node_limit = 0;  // 0 means width * height
  double tau = 0.9;            // fixed threshold for slope_search
  double tau_floor = 0.05;     // below this slope_search stops pruning
  double sloper_tau = 0.9;     // first threshold of sloper_search
  double sloper_step = 0.1;    // decrement per sloper_search restart
  TransitionModel model;
  std::function<void(const OpenInsertion&)> on_insert;
};

struct SearchResult {
  SearchStatus status = SearchStatus::exhausted;
  std::vector<Cell> path;
  ExactCost path_cost;
  std::vector<Cell> expanded;        // final attempt for sloper_search
  std::size_t open_remaining = 0;    // active plus backup entries at termination
  std::size_t open_active = 0;       // active entries only
  int failsafe_count = 0;            // threshold halvings or restarts
  double final_tau = SearchConfig::kNoPruning;
  std::vector<double> tau_history;   // threshold of each phase (slope) or attempt (sloper)
  std::size_t cumulative_expanded = 0;

  bool ok() const { return status == SearchStatus::success; }
};

// Greedy best-first search ordered by h alone.
SearchResult greedy_search(const GridMap& map, const Heuristic& h, const SearchConfig& cfg = {});

// Children with d > tau go to OPEN, the rest to a backup list that replaces OPEN (with tau halved)
// whenever OPEN runs dry before the goal is selected.
SearchResult slope_search(const GridMap& map, const Heuristic& h, const Rater& d,
                          const SearchConfig& cfg = {});

// Children with d <= tau are discarded; a dry OPEN restarts the whole search with tau - step.
SearchResult sloper_search(const GridMap& map, const Heuristic& h, const Rater& d,
                           const SearchConfig& cfg = {});

// Collision-free, 8-connected, endpoints match, cost equals the recomputed step sum.
bool path_is_valid(const GridMap& map, const SearchResult& result, const TransitionModel& model = {});

}  // namespace slope
