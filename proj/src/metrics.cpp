#include "slope/metrics.hpp"

#include <cstdio>
#include <ostream>

namespace slope {

std::optional<double> expanded_rel_err(const SearchResult& result, std::size_t n_min) {
  if (!result.ok()) return std::nullopt;
  if (n_min < 1) throw ContractViolation("expanded_rel_err: n_min must be >= 1");
  const double n = static_cast<double>(result.expanded.size());
  const double lo = static_cast<double>(n_min);
  return 100.0 * (n - lo) / lo;
}

std::optional<double> path_rel_err(const SearchResult& result, const ExactCost& c_star) {
  if (!result.ok()) return std::nullopt;
  if (result.path_cost == c_star) return 0.0;
  if (c_star.is_zero()) {
    throw ContractViolation("path_rel_err: zero optimal cost with a non-trivial path");
  }
  return 100.0 * (result.path_cost.value() - c_star.value()) / c_star.value();
}

double open_norm(const SearchResult& result, const GridMap& map) {
  return static_cast<double>(result.open_remaining) / static_cast<double>(map.cell_count());
}

BenchRecord make_record(const GridMap& map, std::string method, const SearchResult& result,
                        std::size_t n_min, const ExactCost& c_star) {
  BenchRecord r;
  r.map_id = map.id();
  r.method = std::move(method);
  r.expanded_rel_err = expanded_rel_err(result, n_min);
  r.path_rel_err = path_rel_err(result, c_star);
  r.open_norm = open_norm(result, map);
  r.open_active_norm = static_cast<double>(result.open_active) / static_cast<double>(map.cell_count());
  r.failsafe_count = result.failsafe_count;
  r.status = result.status;
  if (result.ok()) {
    const double lo = static_cast<double>(n_min);
    r.cumulative_expanded_rel_err = 100.0 * (static_cast<double>(result.cumulative_expanded) - lo) / lo;
  }
  return r;
}

void write_record_csv(std::ostream& out, const BenchRecord& r) {
  auto num = [](const std::optional<double>& v) {
    if (!v) return std::string();
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6f", *v);
    return std::string(buf);
  };
  out << r.map_id << ',' << r.method << ',' << num(r.expanded_rel_err) << ',' << num(r.path_rel_err)
      << ',' << num(r.open_norm) << ',' << r.failsafe_count << ',' << to_string(r.status) << '\n';
}

}  // namespace slope
