#include "slope/search.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace slope {

bool OpenList::Less::operator()(const Entry& a, const Entry& b) const {
  if (a.h != b.h) return a.h < b.h;
  const auto ord = compare_cost(a.g, b.g);
  if (ord != 0) return ord < 0;
  return a.seq < b.seq;
}

void OpenList::insert(const Entry& e) {
  if (slots_[e.cell]) throw ContractViolation("OpenList: cell inserted twice");
  slots_[e.cell] = e;
  order_.insert(e);
}

void OpenList::decrease_g(std::size_t cell, ExactCost g) {
  auto& slot = slots_[cell];
  if (!slot) throw ContractViolation("OpenList: decrease_g on absent cell");
  order_.erase(*slot);
  slot->g = g;
  order_.insert(*slot);
}

OpenList::Entry OpenList::pop_min() {
  if (order_.empty()) throw ContractViolation("OpenList: pop from empty list");
  Entry e = *order_.begin();
  order_.erase(order_.begin());
  slots_[e.cell].reset();
  return e;
}

void OpenList::clear() {
  order_.clear();
  for (auto& s : slots_) s.reset();
}

std::string_view to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::success: return "success";
    case SearchStatus::exhausted: return "exhausted";
    case SearchStatus::node_limit: return "node_limit";
  }
  return "unknown";
}

namespace {

enum class PruneMode {
  none,     // plain greedy
  backup,   // slope: divert to backup list
  discard,  // sloper: drop
};

double halve_threshold(double tau, double floor) {
  if (tau == SearchConfig::kNoPruning) return tau;
  const double next = tau / 2.0;
  return next < floor ? SearchConfig::kNoPruning : next;
}

// Threshold of the k-th sloper attempt, snapped to 1e-9 so repeated decrements do not drift.
double sloper_threshold(double tau0, double step, int attempt) {
  if (tau0 == SearchConfig::kNoPruning) return tau0;
  const double raw = tau0 - step * attempt;
  const double snapped = std::round(raw * 1e9) / 1e9;
  return snapped < 0.0 ? SearchConfig::kNoPruning : snapped;
}

struct Attempt {
  SearchStatus status = SearchStatus::exhausted;
  std::vector<Cell> expanded;
  std::vector<std::size_t> parent;
  std::size_t goal_index = 0;
  std::size_t open_remaining = 0;
  std::size_t open_active = 0;
  int failsafes = 0;
  double final_tau = 0.0;
  std::vector<double> taus;
};

constexpr std::size_t kNoParent = static_cast<std::size_t>(-1);

Attempt run_attempt(const GridMap& map, const Heuristic& h, const Rater* d, double tau, PruneMode mode,
                    const SearchConfig& cfg, int attempt_index) {
  const std::size_t n_cells = map.cell_count();
  const std::size_t node_limit = cfg.node_limit ? cfg.node_limit : n_cells;
  const Cell goal = map.goal();

  Attempt out;
  out.parent.assign(n_cells, kNoParent);
  out.goal_index = map.index(goal);
  out.taus.push_back(tau);

  std::vector<std::uint8_t> closed(n_cells, 0);
  OpenList active(n_cells);
  OpenList backup(n_cells);
  std::uint64_t seq = 0;
  std::size_t closed_count = 0;

  // For restarts the attempt number is the failsafe count so far.
  auto notify = [&](Cell c, OpenKind list) {
    if (cfg.on_insert) cfg.on_insert({c, list, tau, out.failsafes + attempt_index, attempt_index});
  };

  const Cell start = map.start();
  active.insert({h.value(start, goal), {}, seq++, map.index(start)});
  notify(start, OpenKind::active);

  while (true) {
    if (active.empty()) {
      if (mode == PruneMode::backup && !backup.empty()) {
        swap(active, backup);
        backup.clear();
        tau = halve_threshold(tau, cfg.tau_floor);
        ++out.failsafes;
        out.taus.push_back(tau);
        continue;
      }
      out.status = SearchStatus::exhausted;
      break;
    }
    if (closed_count > node_limit) {
      out.status = SearchStatus::node_limit;
      break;
    }

    const OpenList::Entry current = active.pop_min();
    const Cell n = map.cell_at(current.cell);
    closed[current.cell] = 1;
    ++closed_count;
    out.expanded.push_back(n);
    if (n == goal) {
      out.status = SearchStatus::success;
      break;
    }

    for (const auto& succ : expand(map, n, cfg.model)) {
      const std::size_t ci = map.index(succ.cell);
      if (closed[ci]) continue;
      const ExactCost g = current.g + succ.step_cost;
      OpenList* holder = active.contains(ci) ? &active : (backup.contains(ci) ? &backup : nullptr);
      if (holder) {
        if (compare_cost(g, holder->entry(ci).g) < 0) {
          holder->decrease_g(ci, g);
          out.parent[ci] = current.cell;
        }
        continue;
      }
      const bool pass = mode == PruneMode::none || tau == SearchConfig::kNoPruning ||
                        d->rate(succ.cell) > tau;
      if (pass) {
        active.insert({h.value(succ.cell, goal), g, seq++, ci});
        out.parent[ci] = current.cell;
        notify(succ.cell, OpenKind::active);
      } else if (mode == PruneMode::backup) {
        backup.insert({h.value(succ.cell, goal), g, seq++, ci});
        out.parent[ci] = current.cell;
        notify(succ.cell, OpenKind::backup);
      }
    }
  }

  out.open_remaining = active.size() + backup.size();
  out.open_active = active.size();
  out.final_tau = tau;
  return out;
}

void fill_path(const GridMap& map, const Attempt& a, const TransitionModel& model, SearchResult& r) {
  if (a.status != SearchStatus::success) return;
  std::vector<Cell> path;
  for (std::size_t i = a.goal_index; i != kNoParent; i = a.parent[i]) {
    path.push_back(map.cell_at(i));
    if (map.cell_at(i) == map.start()) break;
  }
  std::reverse(path.begin(), path.end());
  ExactCost cost;
  for (std::size_t i = 1; i < path.size(); ++i) {
    cost += model.step_cost(path[i].x - path[i - 1].x, path[i].y - path[i - 1].y);
  }
  r.path = std::move(path);
  r.path_cost = cost;
}

SearchResult to_result(const GridMap& map, Attempt a, const SearchConfig& cfg) {
  SearchResult r;
  r.status = a.status;
  fill_path(map, a, cfg.model, r);
  r.cumulative_expanded = a.expanded.size();
  r.expanded = std::move(a.expanded);
  r.open_remaining = a.open_remaining;
  r.open_active = a.open_active;
  r.failsafe_count = a.failsafes;
  r.final_tau = a.final_tau;
  r.tau_history = std::move(a.taus);
  return r;
}

}  // namespace

SearchResult greedy_search(const GridMap& map, const Heuristic& h, const SearchConfig& cfg) {
  return to_result(map, run_attempt(map, h, nullptr, SearchConfig::kNoPruning, PruneMode::none, cfg, 0), cfg);
}

SearchResult slope_search(const GridMap& map, const Heuristic& h, const Rater& d, const SearchConfig& cfg) {
  if (cfg.tau != SearchConfig::kNoPruning && !(cfg.tau >= 0.0 && cfg.tau <= 1.0)) {
    throw ContractViolation("slope_search: tau must lie in [0, 1] or be the no-pruning sentinel");
  }
  return to_result(map, run_attempt(map, h, &d, cfg.tau, PruneMode::backup, cfg, 0), cfg);
}

SearchResult sloper_search(const GridMap& map, const Heuristic& h, const Rater& d, const SearchConfig& cfg) {
  if (cfg.sloper_tau != SearchConfig::kNoPruning && !(cfg.sloper_tau >= 0.0 && cfg.sloper_tau <= 1.0)) {
    throw ContractViolation("sloper_search: initial tau must lie in [0, 1] or be the no-pruning sentinel");
  }
  if (!(cfg.sloper_step > 0.0)) throw ContractViolation("sloper_search: step must be positive");

  std::size_t cumulative = 0;
  std::vector<double> taus;
  for (int k = 0;; ++k) {
    const double tau = sloper_threshold(cfg.sloper_tau, cfg.sloper_step, k);
    Attempt a = run_attempt(map, h, &d, tau, PruneMode::discard, cfg, k);
    cumulative += a.expanded.size();
    taus.push_back(tau);
    if (a.status != SearchStatus::exhausted || tau == SearchConfig::kNoPruning) {
      a.failsafes = k;
      SearchResult r = to_result(map, std::move(a), cfg);
      r.cumulative_expanded = cumulative;
      r.tau_history = std::move(taus);
      return r;
    }
  }
}

bool path_is_valid(const GridMap& map, const SearchResult& result, const TransitionModel& model) {
  const auto& p = result.path;
  if (p.empty() || p.front() != map.start() || p.back() != map.goal()) return false;
  ExactCost cost;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!map.free(p[i])) return false;
    if (i == 0) continue;
    const int dx = p[i].x - p[i - 1].x;
    const int dy = p[i].y - p[i - 1].y;
    if (std::abs(dx) > 1 || std::abs(dy) > 1 || (dx == 0 && dy == 0)) return false;
    cost += model.step_cost(dx, dy);
  }
  return cost == result.path_cost;
}

}  // namespace slope
