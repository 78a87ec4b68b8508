#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "slope/grid.hpp"
#include "slope/metrics.hpp"
#include "slope/oracle.hpp"
#include "slope/worldgen.hpp"

namespace slope {

// ---------------------------------------------------------------------------
// Dataset layout on disk
//
//   <maps_dir>/<world>_<split>_<seed>.map   map files
//   <maps_dir>/manifest.json                index of specs and file names
//   <oracle_dir>/<id>.rating                ground-truth rating grid
//   <oracle_dir>/<id>.h                     exact cost-to-go grid (source hvalue)
//   <oracle_dir>/dataset_<split>.csv        map_id,x,y,rating
//   <learned_dir>/<id>.rating, <id>.h       learned grids, same formats
// ---------------------------------------------------------------------------

struct ManifestEntry {
  std::string id;
  std::string world;
  std::string split;
  std::uint64_t seed = 0;
  std::uint64_t master_seed = 0;
  int width = 0;
  int height = 0;
  std::string file;  // relative to the maps directory
  std::map<std::string, double> params;
};

std::vector<ManifestEntry> load_manifest(const std::string& maps_dir);
void save_manifest(const std::string& maps_dir, const std::vector<ManifestEntry>& entries);

// Generates the split for one world into maps_dir and merges it into the manifest.
std::vector<ManifestEntry> write_world_maps(const WorldSpec& family, const SplitCounts& counts,
                                            const std::string& maps_dir);

struct OracleBuildOptions {
  int m = 10;
  bool balance = false;
  std::uint64_t seed = 0;
};

// Writes rating grids, h-grids and per-split dataset CSVs for every map in the manifest.
// Returns the number of maps processed.
std::size_t build_oracle_dir(const std::string& maps_dir, const std::string& out_dir,
                             const OracleBuildOptions& options);

// ---------------------------------------------------------------------------
// Method combinations
// ---------------------------------------------------------------------------

enum class Method { h_euc, h_ml, slope, slope_hml, sloper, sloper_hml, slope_gt, slope_gt_hml };

inline constexpr Method kAllMethods[] = {Method::h_euc,      Method::h_ml,   Method::slope,
                                         Method::slope_hml,  Method::sloper, Method::sloper_hml,
                                         Method::slope_gt,   Method::slope_gt_hml};

std::string_view method_label(Method m);
std::optional<Method> parse_method(std::string_view label);

enum class Planner { greedy, slope, sloper };
enum class RaterChoice { none, learned, ground_truth };

struct MethodTriple {
  Planner planner;
  bool ml_heuristic;
  RaterChoice rater;
};

MethodTriple resolve(Method m);

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

struct SweepSpec {
  std::string maps_dir;
  std::string oracle_dir;
  std::string learned_dir;          // required by learned-rater combos
  std::string h_ml = "oracle";      // which directory serves h_ML grids: oracle | learned
  std::string out_dir;              // empty: no files written
  std::string split = "test";
  std::vector<std::string> datasets;
  std::vector<Method> methods;
  double default_tau = 0.9;
  std::map<std::string, double> tau_table{{"bugtrap_forest", 0.57}};
  double tau_floor = 0.05;
  double sloper_tau = 0.9;
  double sloper_step = 0.1;
  int m = 10;
  std::uint64_t seed = 0;
  int workers = 1;

  double tau_for(const std::string& dataset) const;
};

// Flat "key = value" text; '#' starts a comment. Relative paths resolve against `base_dir`.
SweepSpec parse_sweep_config(std::istream& in, const std::string& base_dir = {});
// Also applies the SLOPE_OUT_DIR and SLOPE_WORKERS environment overrides.
SweepSpec load_sweep_config(const std::string& path);

struct MethodSummary {
  std::string dataset;
  Method method = Method::h_euc;
  std::size_t runs = 0;
  std::size_t failures = 0;
  std::optional<double> mean_expanded_rel_err;
  std::optional<double> mean_path_rel_err;
  double mean_open_norm = 0.0;
  double mean_open_active_norm = 0.0;
  double mean_failsafe = 0.0;
  std::optional<double> mean_cumulative_expanded_rel_err;
};

struct SweepTable {
  std::vector<std::string> datasets;
  std::vector<Method> methods;
  std::vector<BenchRecord> records;      // sorted by dataset, method order, map id
  std::vector<std::string> record_datasets;  // dataset of each record
  std::vector<MethodSummary> summaries;  // dataset-major, methods in sweep order

  const MethodSummary& summary(const std::string& dataset, Method method) const;
};

// Runs every (dataset, method, test map) triple. Writes runs.csv, summary.csv, summary.md and
// timing.txt into out_dir when set.
SweepTable run_sweep(const SweepSpec& spec);

void write_runs_csv(std::ostream& out, const SweepTable& table);
void write_summary_csv(std::ostream& out, const SweepTable& table);
// Three metric rows per dataset, one column per method.
void write_markdown_table(std::ostream& out, const SweepTable& table);

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

struct RenderLayers {
  const RatingGrid* ratings = nullptr;
  const std::vector<Cell>* expanded = nullptr;
  const std::vector<Cell>* path = nullptr;
  int scale = 1;
};

// Binary PPM (P6). Top image row is y = height - 1.
std::string render_ppm(const GridMap& map, const RenderLayers& layers);
void render(const GridMap& map, const RenderLayers& layers, const std::string& out_path);

}  // namespace slope
