// Command-line front end: gen-maps, gen-oracle, plan, bench, render.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "slope/bench.hpp"
#include "slope/heuristics.hpp"
#include "slope/metrics.hpp"
#include "slope/oracle.hpp"
#include "slope/search.hpp"
#include "slope/worldgen.hpp"

namespace {

int exit_code(slope::ErrorCategory c) {
  switch (c) {
    case slope::ErrorCategory::config: return 2;
    case slope::ErrorCategory::io: return 3;
    case slope::ErrorCategory::format: return 4;
    case slope::ErrorCategory::generation: return 5;
    case slope::ErrorCategory::oracle: return 6;
    case slope::ErrorCategory::lookup: return 7;
    case slope::ErrorCategory::contract: return 8;
  }
  return 1;
}

struct PlanOptions {
  std::string map_path;
  std::string method = "greedy";
  std::string heuristic = "euclidean";
  std::string rater = "none";
  double tau = 0.9;
  double sloper_tau = 0.9;
  double sloper_step = 0.1;
  double tau_floor = 0.05;
};

void add_plan_options(CLI::App* cmd, PlanOptions& o, bool map_required) {
  auto* map = cmd->add_option("--map", o.map_path, "Map file");
  if (map_required) map->required();
  cmd->add_option("--method", o.method, "greedy | slope | sloper")
      ->check(CLI::IsMember({"greedy", "slope", "sloper"}));
  cmd->add_option("--heuristic", o.heuristic, "euclidean | grid:<h-grid file>");
  cmd->add_option("--rater", o.rater, "gt:<file> | learned:<file> | none");
  cmd->add_option("--tau", o.tau, "Pruning threshold (slope), or first threshold (sloper)");
  cmd->add_option("--sloper-step", o.sloper_step, "Threshold decrement per sloper restart");
  cmd->add_option("--tau-floor", o.tau_floor, "Below this slope stops pruning");
}

slope::Heuristic make_heuristic(const std::string& spec) {
  if (spec == "euclidean") return slope::Heuristic::euclidean();
  if (spec.rfind("grid:", 0) == 0) return slope::load_h_grid(spec.substr(5));
  throw slope::ConfigError("unknown heuristic '" + spec + "' (expected euclidean or grid:<file>)");
}

slope::Rater make_rater(const std::string& spec) {
  if (spec == "none") return slope::Rater::always_pass();
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw slope::ConfigError("unknown rater '" + spec + "'");
  const std::string kind = spec.substr(0, colon);
  if (kind != "gt" && kind != "learned") throw slope::ConfigError("unknown rater kind '" + kind + "'");
  return slope::Rater::from_grid(slope::load_rating_grid(spec.substr(colon + 1)));
}

slope::SearchResult run_plan(const slope::GridMap& map, const PlanOptions& o) {
  const slope::Heuristic h = make_heuristic(o.heuristic);
  slope::SearchConfig cfg;
  cfg.tau = o.tau;
  cfg.sloper_tau = o.tau;
  cfg.sloper_step = o.sloper_step;
  cfg.tau_floor = o.tau_floor;
  if (o.method == "greedy") return slope::greedy_search(map, h, cfg);
  const slope::Rater d = make_rater(o.rater);
  if (o.method == "slope") return slope::slope_search(map, h, d, cfg);
  return slope::sloper_search(map, h, d, cfg);
}

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

int cmd_plan(const PlanOptions& o, bool print_path) {
  const slope::GridMap map = slope::load_map(o.map_path);
  const slope::SearchResult r = run_plan(map, o);
  std::cout << "status=" << slope::to_string(r.status) << " path_cells=" << r.path.size()
            << " path_cost=" << r.path_cost << " path_cost_value=" << fmt(r.path_cost.value())
            << " expanded=" << r.expanded.size() << " cumulative_expanded=" << r.cumulative_expanded
            << " open_remaining=" << r.open_remaining << " failsafe_count=" << r.failsafe_count
            << " final_tau=" << (r.final_tau == slope::SearchConfig::kNoPruning ? std::string("-inf") : fmt(r.final_tau));
  if (r.ok()) {
    const slope::OracleResult oracle = slope::run_oracle(map);
    const auto rec = slope::make_record(map, o.method, r, oracle.optimal_path_cells, oracle.optimal_cost);
    std::cout << " optimal_cost=" << oracle.optimal_cost << " expanded_rel_err=" << fmt(*rec.expanded_rel_err)
              << " path_rel_err=" << fmt(*rec.path_rel_err) << " open_norm=" << fmt(rec.open_norm);
  }
  std::cout << '\n';
  if (print_path) {
    for (const auto& c : r.path) std::cout << c.x << ' ' << c.y << '\n';
  }
  return r.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grid planning with learned optimal-region pruning"};
  app.require_subcommand(1);

  // gen-maps
  std::string world = "forest";
  slope::SplitCounts counts;
  int size = 32;
  std::string maps_out;
  std::uint64_t master_seed = 0;
  std::vector<std::string> world_params;
  auto* gen_maps = app.add_subcommand("gen-maps", "Generate train/val/test maps for one or all worlds");
  gen_maps->add_option("--world", world, "World type, or 'all'")->required();
  gen_maps->add_option("--count-train", counts.train);
  gen_maps->add_option("--count-val", counts.val);
  gen_maps->add_option("--count-test", counts.test);
  gen_maps->add_option("--size", size, "Map side length");
  gen_maps->add_option("--master-seed", master_seed, "Mixed into every map seed");
  gen_maps->add_option("--param", world_params, "Generator parameter key=value (repeatable)");
  gen_maps->add_option("--out", maps_out, "Output directory")->required();

  // gen-oracle
  std::string oracle_maps, oracle_out;
  slope::OracleBuildOptions oracle_opts;
  auto* gen_oracle = app.add_subcommand("gen-oracle", "Compute rating grids, h-grids and dataset CSVs");
  gen_oracle->add_option("--maps", oracle_maps, "Map directory with manifest.json")->required();
  gen_oracle->add_option("--m", oracle_opts.m, "Number of neighbouring regions");
  gen_oracle->add_option("--out", oracle_out, "Output directory")->required();
  gen_oracle->add_flag("--balance", oracle_opts.balance, "Downsample the dominant rating class per map");
  gen_oracle->add_option("--seed", oracle_opts.seed, "Seed for class balancing");

  // plan
  PlanOptions plan_opts;
  bool print_path = false;
  auto* plan = app.add_subcommand("plan", "Run one planner on one map");
  add_plan_options(plan, plan_opts, true);
  plan->add_flag("--print-path", print_path, "Print path coordinates after the record");

  // bench
  std::string config_path;
  auto* bench = app.add_subcommand("bench", "Run a method-comparison sweep");
  bench->add_option("--config", config_path, "Sweep configuration file")->required();

  // render
  PlanOptions render_opts;
  std::string render_out, render_rating;
  int scale = 8;
  bool show_search = false;
  auto* render = app.add_subcommand("render", "Render a map with optional rating/search overlays as PPM");
  add_plan_options(render, render_opts, true);
  render->add_option("--rating", render_rating, "Rating grid to draw as the green layer");
  render->add_flag("--search", show_search, "Run the planner and overlay expanded cells and path");
  render->add_option("--scale", scale, "Pixels per cell")->check(CLI::PositiveNumber);
  render->add_option("--out", render_out, "Output .ppm path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen_maps->parsed()) {
      slope::WorldSpec family;
      family.width = size;
      family.height = size;
      family.master_seed = master_seed;
      for (const auto& kv : world_params) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw slope::ConfigError("--param expects key=value, got '" + kv + "'");
        family.params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
      }
      std::vector<slope::WorldType> worlds;
      if (world == "all") {
        worlds.assign(slope::kAllWorlds.begin(), slope::kAllWorlds.end());
      } else if (auto w = slope::parse_world_type(world)) {
        worlds.push_back(*w);
      } else {
        throw slope::ConfigError("unknown world type '" + world + "'");
      }
      for (auto w : worlds) {
        family.world_type = w;
        const auto entries = slope::write_world_maps(family, counts, maps_out);
        std::cout << slope::to_string(w) << ": wrote " << entries.size() << " maps to " << maps_out << '\n';
      }
    } else if (gen_oracle->parsed()) {
      const auto n = slope::build_oracle_dir(oracle_maps, oracle_out, oracle_opts);
      std::cout << "oracle: processed " << n << " maps into " << oracle_out << '\n';
    } else if (plan->parsed()) {
      return cmd_plan(plan_opts, print_path);
    } else if (bench->parsed()) {
      const slope::SweepSpec spec = slope::load_sweep_config(config_path);
      const slope::SweepTable table = slope::run_sweep(spec);
      slope::write_markdown_table(std::cout, table);
      std::size_t failures = 0;
      for (const auto& s : table.summaries) failures += s.failures;
      if (failures) std::cerr << "bench: " << failures << " planner runs did not reach the goal\n";
    } else if (render->parsed()) {
      const slope::GridMap map = slope::load_map(render_opts.map_path);
      std::optional<slope::RatingGrid> ratings;
      if (!render_rating.empty()) ratings = slope::load_rating_grid(render_rating);
      std::optional<slope::SearchResult> result;
      if (show_search) result = run_plan(map, render_opts);
      slope::RenderLayers layers;
      layers.ratings = ratings ? &*ratings : nullptr;
      layers.expanded = result ? &result->expanded : nullptr;
      layers.path = result ? &result->path : nullptr;
      layers.scale = scale;
      slope::render(map, layers, render_out);
    }
  } catch (const slope::Error& e) {
    std::cerr << "error [" << slope::to_string(e.category()) << "]: " << e.what() << '\n';
    return exit_code(e.category());
  } catch (const std::exception& e) {
    std::cerr << "error [internal]: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
