#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "slope/grid.hpp"
#include "slope/search.hpp"

namespace slope {

// 100 * (|expanded| - n_min) / n_min, where n_min is the node count of a minimum-cost path.
// Undefined (nullopt) for unsuccessful searches.
std::optional<double> expanded_rel_err(const SearchResult& result, std::size_t n_min);

// 100 * (cost(path) - C*) / C*; exactly 0 when the path cost equals C* or start == goal.
std::optional<double> path_rel_err(const SearchResult& result, const ExactCost& c_star);

// Unused stored nodes over the total cell count.
double open_norm(const SearchResult& result, const GridMap& map);

struct BenchRecord {
  std::string map_id;
  std::string method;
  std::optional<double> expanded_rel_err;
  std::optional<double> path_rel_err;
  double open_norm = 0.0;
  int failsafe_count = 0;
  SearchStatus status = SearchStatus::exhausted;
  // Active OPEN only, backup list excluded; informational.
  double open_active_norm = 0.0;
  // Same as expanded_rel_err but counting every restart attempt; informational.
  std::optional<double> cumulative_expanded_rel_err;
};

BenchRecord make_record(const GridMap& map, std::string method, const SearchResult& result,
                        std::size_t n_min, const ExactCost& c_star);

// map_id,method,expanded_rel_err,path_rel_err,open_norm,failsafe_count,status
inline constexpr const char* kBenchCsvHeader =
    "map_id,method,expanded_rel_err,path_rel_err,open_norm,failsafe_count,status";
void write_record_csv(std::ostream& out, const BenchRecord& r);

}  // namespace slope
