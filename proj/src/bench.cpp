#include "slope/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "slope/heuristics.hpp"
#include "slope/search.hpp"

namespace fs = std::filesystem;

namespace slope {

namespace {

std::string join(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory '" + dir + "': " + ec.message());
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
  if (!out) throw IoError("write failed for '" + path + "'");
}

void require_file(const std::string& path, const std::string& what) {
  if (!fs::is_regular_file(path)) throw ConfigError("missing " + what + ": '" + path + "'");
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string format_fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string format_opt(const std::optional<double>& v, int decimals) {
  return v ? format_fixed(*v, decimals) : std::string();
}

}  // namespace

// ---------------------------------------------------------------------------
// Manifest and pipeline steps
// ---------------------------------------------------------------------------

std::vector<ManifestEntry> load_manifest(const std::string& maps_dir) {
  const std::string path = join(maps_dir, "manifest.json");
  std::ifstream in(path);
  if (!in) throw ConfigError("missing manifest: '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("manifest '" + path + "': " + e.what());
  }
  std::vector<ManifestEntry> entries;
  try {
    for (const auto& j : doc.at("maps")) {
      ManifestEntry e;
      e.id = j.at("id").get<std::string>();
      e.world = j.at("world").get<std::string>();
      e.split = j.at("split").get<std::string>();
      e.seed = j.at("seed").get<std::uint64_t>();
      e.master_seed = j.value("master_seed", std::uint64_t{0});
      e.width = j.at("width").get<int>();
      e.height = j.at("height").get<int>();
      e.file = j.at("file").get<std::string>();
      if (j.contains("params")) e.params = j.at("params").get<std::map<std::string, double>>();
      entries.push_back(std::move(e));
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("manifest '" + path + "': " + e.what());
  }
  return entries;
}

void save_manifest(const std::string& maps_dir, const std::vector<ManifestEntry>& entries) {
  nlohmann::json maps = nlohmann::json::array();
  for (const auto& e : entries) {
    maps.push_back({{"id", e.id},
                    {"world", e.world},
                    {"split", e.split},
                    {"seed", e.seed},
                    {"master_seed", e.master_seed},
                    {"width", e.width},
                    {"height", e.height},
                    {"file", e.file},
                    {"params", e.params}});
  }
  nlohmann::json doc = {{"maps", maps}};
  write_text(join(maps_dir, "manifest.json"), doc.dump(2) + "\n");
}

std::vector<ManifestEntry> write_world_maps(const WorldSpec& family, const SplitCounts& counts,
                                            const std::string& maps_dir) {
  ensure_dir(maps_dir);
  const DatasetSplit split = generate_split(family, counts);
  std::vector<ManifestEntry> fresh;
  auto emit = [&](const std::vector<WorldSpec>& specs, const std::vector<GridMap>& maps, const char* name) {
    for (std::size_t i = 0; i < maps.size(); ++i) {
      ManifestEntry e;
      e.id = maps[i].id();
      e.world = std::string(to_string(specs[i].world_type));
      e.split = name;
      e.seed = specs[i].seed;
      e.master_seed = specs[i].master_seed;
      e.width = specs[i].width;
      e.height = specs[i].height;
      e.file = e.id + ".map";
      e.params = specs[i].params;
      save_map(join(maps_dir, e.file), maps[i]);
      fresh.push_back(std::move(e));
    }
  };
  emit(split.train_specs, split.train, "train");
  emit(split.val_specs, split.val, "val");
  emit(split.test_specs, split.test, "test");

  std::vector<ManifestEntry> merged;
  if (fs::exists(join(maps_dir, "manifest.json"))) {
    for (auto& e : load_manifest(maps_dir)) {
      if (e.world != to_string(family.world_type)) merged.push_back(std::move(e));
    }
  }
  merged.insert(merged.end(), fresh.begin(), fresh.end());
  std::stable_sort(merged.begin(), merged.end(), [](const ManifestEntry& a, const ManifestEntry& b) {
    if (a.world != b.world) return a.world < b.world;
    return a.seed < b.seed;
  });
  save_manifest(maps_dir, merged);
  return fresh;
}

std::size_t build_oracle_dir(const std::string& maps_dir, const std::string& out_dir,
                             const OracleBuildOptions& options) {
  const auto entries = load_manifest(maps_dir);
  ensure_dir(out_dir);
  std::map<std::string, std::pair<std::vector<GridMap>, std::vector<RatingGrid>>> by_split;
  std::vector<std::string> split_order;
  for (const auto& e : entries) {
    const std::string map_path = join(maps_dir, e.file);
    require_file(map_path, "map file");
    GridMap map = load_map(map_path);
    map.set_id(e.id);
    OracleResult oracle = run_oracle(map, options.m);
    save_rating_grid(join(out_dir, e.id + ".rating"), oracle.ratings);
    save_h_grid(join(out_dir, e.id + ".h"), oracle.cost_to_go);
    if (!by_split.count(e.split)) split_order.push_back(e.split);
    auto& bucket = by_split[e.split];
    bucket.first.push_back(std::move(map));
    bucket.second.push_back(std::move(oracle.ratings));
  }
  for (const auto& split : split_order) {
    const auto& [maps, grids] = by_split[split];
    const auto samples = export_dataset(maps, grids, options.balance, options.seed);
    const std::string path = join(out_dir, "dataset_" + split + ".csv");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    write_dataset_csv(out, samples);
  }
  return entries.size();
}

// ---------------------------------------------------------------------------
// Methods
// ---------------------------------------------------------------------------

namespace {

constexpr std::string_view kMethodLabels[] = {
    "h_EUC", "h_ML", "SLOPE", "SLOPE+h_ML", "SLOPEr", "SLOPEr+h_ML", "SLOPE_GT", "SLOPE_GT+h_ML",
};

}  // namespace

std::string_view method_label(Method m) { return kMethodLabels[static_cast<std::size_t>(m)]; }

std::optional<Method> parse_method(std::string_view label) {
  for (std::size_t i = 0; i < std::size(kMethodLabels); ++i) {
    if (kMethodLabels[i] == label) return static_cast<Method>(i);
  }
  return std::nullopt;
}

MethodTriple resolve(Method m) {
  switch (m) {
    case Method::h_euc: return {Planner::greedy, false, RaterChoice::none};
    case Method::h_ml: return {Planner::greedy, true, RaterChoice::none};
    case Method::slope: return {Planner::slope, false, RaterChoice::learned};
    case Method::slope_hml: return {Planner::slope, true, RaterChoice::learned};
    case Method::sloper: return {Planner::sloper, false, RaterChoice::learned};
    case Method::sloper_hml: return {Planner::sloper, true, RaterChoice::learned};
    case Method::slope_gt: return {Planner::slope, false, RaterChoice::ground_truth};
    case Method::slope_gt_hml: return {Planner::slope, true, RaterChoice::ground_truth};
  }
  throw ContractViolation("unknown method");
}

// ---------------------------------------------------------------------------
// Sweep configuration
// ---------------------------------------------------------------------------

double SweepSpec::tau_for(const std::string& dataset) const {
  auto it = tau_table.find(dataset);
  return it == tau_table.end() ? default_tau : it->second;
}

SweepSpec parse_sweep_config(std::istream& in, const std::string& base_dir) {
  SweepSpec spec;
  auto path_value = [&](const std::string& v) {
    if (v.empty() || base_dir.empty() || fs::path(v).is_absolute()) return v;
    return (fs::path(base_dir) / v).string();
  };
  auto number = [](const std::string& key, const std::string& v) {
    char* end = nullptr;
    const double d = std::strtod(v.c_str(), &end);
    if (v.empty() || *end != '\0' || std::isnan(d)) throw ConfigError("config: '" + key + "' expects a number, got '" + v + "'");
    return d;
  };
  auto integer = [&](const std::string& key, const std::string& v) {
    const double d = number(key, v);
    if (d != std::floor(d) || d < 0) throw ConfigError("config: '" + key + "' expects a non-negative integer");
    return static_cast<long long>(d);
  };

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));

    if (key == "maps_dir") spec.maps_dir = path_value(value);
    else if (key == "oracle_dir") spec.oracle_dir = path_value(value);
    else if (key == "learned_dir") spec.learned_dir = path_value(value);
    else if (key == "out_dir") spec.out_dir = path_value(value);
    else if (key == "split") spec.split = value;
    else if (key == "h_ml") {
      if (value != "oracle" && value != "learned") throw ConfigError("config: h_ml must be 'oracle' or 'learned'");
      spec.h_ml = value;
    } else if (key == "datasets") {
      spec.datasets.clear();
      for (const auto& name : split_list(value)) {
        if (name == "all") {
          for (auto w : kAllWorlds) spec.datasets.emplace_back(to_string(w));
        } else if (!parse_world_type(name)) {
          throw ConfigError("config: unknown dataset '" + name + "'");
        } else {
          spec.datasets.push_back(name);
        }
      }
    } else if (key == "methods") {
      spec.methods.clear();
      for (const auto& label : split_list(value)) {
        if (label == "all") {
          spec.methods.assign(std::begin(kAllMethods), std::end(kAllMethods));
          continue;
        }
        auto m = parse_method(label);
        if (!m) throw ConfigError("config: unknown method '" + label + "'");
        spec.methods.push_back(*m);
      }
    } else if (key == "tau") {
      spec.default_tau = number(key, value);
    } else if (key.rfind("tau.", 0) == 0) {
      const std::string dataset = key.substr(4);
      if (!parse_world_type(dataset)) throw ConfigError("config: unknown dataset in '" + key + "'");
      spec.tau_table[dataset] = number(key, value);
    } else if (key == "tau_floor") spec.tau_floor = number(key, value);
    else if (key == "sloper_tau") spec.sloper_tau = number(key, value);
    else if (key == "sloper_step") spec.sloper_step = number(key, value);
    else if (key == "m") spec.m = static_cast<int>(integer(key, value));
    else if (key == "seed") spec.seed = static_cast<std::uint64_t>(integer(key, value));
    else if (key == "workers") spec.workers = static_cast<int>(integer(key, value));
    else throw ConfigError("config: unknown key '" + key + "'");
  }
  if (spec.m < 1) throw ConfigError("config: m must be >= 1");
  if (spec.workers < 1) spec.workers = 1;
  return spec;
}

SweepSpec load_sweep_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  SweepSpec spec = parse_sweep_config(in, fs::path(path).parent_path().string());
  if (const char* out = std::getenv("SLOPE_OUT_DIR"); out && *out) spec.out_dir = out;
  if (const char* w = std::getenv("SLOPE_WORKERS"); w && *w) {
    const int n = std::atoi(w);
    if (n < 1) throw ConfigError("SLOPE_WORKERS must be a positive integer");
    spec.workers = n;
  }
  return spec;
}

// ---------------------------------------------------------------------------
// Sweep execution
// ---------------------------------------------------------------------------

const MethodSummary& SweepTable::summary(const std::string& dataset, Method method) const {
  for (const auto& s : summaries) {
    if (s.dataset == dataset && s.method == method) return s;
  }
  throw LookupError("sweep table has no entry for " + dataset + "/" + std::string(method_label(method)));
}

namespace {

struct MapTask {
  std::string dataset;
  ManifestEntry entry;
  std::string map_path;
  std::string gt_path;
  std::string learned_path;
  std::string hml_path;
};

std::vector<BenchRecord> evaluate_map(const SweepSpec& spec, const MapTask& task) {
  GridMap map = load_map(task.map_path);
  map.set_id(task.entry.id);
  const OracleResult oracle = run_oracle(map, spec.m);

  std::optional<Rater> gt;
  std::optional<Rater> learned;
  std::optional<Heuristic> hml;
  auto check_dims = [&](int w, int h, const std::string& path) {
    if (w != map.width() || h != map.height()) throw ConfigError("grid '" + path + "' does not match map dimensions");
  };
  if (!task.gt_path.empty()) {
    RatingGrid g = load_rating_grid(task.gt_path);
    check_dims(g.width, g.height, task.gt_path);
    gt = Rater::from_grid(std::move(g));
  }
  if (!task.learned_path.empty()) {
    RatingGrid g = load_rating_grid(task.learned_path);
    check_dims(g.width, g.height, task.learned_path);
    learned = Rater::from_grid(std::move(g));
  }
  if (!task.hml_path.empty()) {
    Heuristic h = load_h_grid(task.hml_path);
    check_dims(h.width(), h.height(), task.hml_path);
    hml = std::move(h);
  }
  const Heuristic euclid = Heuristic::euclidean();

  SearchConfig cfg;
  cfg.tau = spec.tau_for(task.dataset);
  cfg.tau_floor = spec.tau_floor;
  cfg.sloper_tau = spec.sloper_tau;
  cfg.sloper_step = spec.sloper_step;

  std::vector<BenchRecord> out;
  for (Method method : spec.methods) {
    const MethodTriple triple = resolve(method);
    const Heuristic& h = triple.ml_heuristic ? *hml : euclid;
    const Rater* d = triple.rater == RaterChoice::learned ? &*learned
                     : triple.rater == RaterChoice::ground_truth ? &*gt
                                                                  : nullptr;
    SearchResult result;
    switch (triple.planner) {
      case Planner::greedy: result = greedy_search(map, h, cfg); break;
      case Planner::slope: result = slope_search(map, h, *d, cfg); break;
      case Planner::sloper: result = sloper_search(map, h, *d, cfg); break;
    }
    out.push_back(make_record(map, std::string(method_label(method)), result,
                              oracle.optimal_path_cells, oracle.optimal_cost));
  }
  return out;
}

template <typename F>
void parallel_for(std::size_t n, int workers, F&& body) {
  const std::size_t threads = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, workers)), n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

std::optional<double> mean_of(const std::vector<double>& v) {
  if (v.empty()) return std::nullopt;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

SweepTable run_sweep(const SweepSpec& spec) {
  const auto started = std::chrono::steady_clock::now();
  SweepTable table;
  table.datasets = spec.datasets;
  table.methods = spec.methods;
  if (spec.datasets.empty() || spec.methods.empty()) return table;

  bool need_gt = false, need_learned = false, need_hml = false;
  for (Method m : spec.methods) {
    const auto t = resolve(m);
    need_gt |= t.rater == RaterChoice::ground_truth;
    need_learned |= t.rater == RaterChoice::learned;
    need_hml |= t.ml_heuristic;
  }
  if (need_learned && spec.learned_dir.empty()) throw ConfigError("learned-rater methods need 'learned_dir'");
  if (need_gt && spec.oracle_dir.empty()) throw ConfigError("ground-truth methods need 'oracle_dir'");
  const std::string& hml_dir = spec.h_ml == "learned" ? spec.learned_dir : spec.oracle_dir;
  if (need_hml && hml_dir.empty()) throw ConfigError("h_ML methods need '" + spec.h_ml + "_dir'");

  const auto manifest = load_manifest(spec.maps_dir);
  std::vector<MapTask> tasks;
  for (const auto& dataset : spec.datasets) {
    std::vector<ManifestEntry> selected;
    for (const auto& e : manifest) {
      if (e.world == dataset && e.split == spec.split) selected.push_back(e);
    }
    if (selected.empty()) {
      throw ConfigError("no '" + spec.split + "' maps for dataset '" + dataset + "' in " + spec.maps_dir);
    }
    std::sort(selected.begin(), selected.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    for (auto& e : selected) {
      MapTask t;
      t.dataset = dataset;
      t.map_path = join(spec.maps_dir, e.file);
      require_file(t.map_path, "map file");
      if (need_gt) require_file(t.gt_path = join(spec.oracle_dir, e.id + ".rating"), "ground-truth rating grid");
      if (need_learned) require_file(t.learned_path = join(spec.learned_dir, e.id + ".rating"), "learned rating grid");
      if (need_hml) require_file(t.hml_path = join(hml_dir, e.id + ".h"), "h-grid");
      t.entry = std::move(e);
      tasks.push_back(std::move(t));
    }
  }

  std::vector<std::vector<BenchRecord>> per_task(tasks.size());
  parallel_for(tasks.size(), spec.workers, [&](std::size_t i) { per_task[i] = evaluate_map(spec, tasks[i]); });

  // Canonical order: dataset (sweep order), method (sweep order), map id.
  for (const auto& dataset : spec.datasets) {
    for (std::size_t mi = 0; mi < spec.methods.size(); ++mi) {
      MethodSummary s;
      s.dataset = dataset;
      s.method = spec.methods[mi];
      std::vector<double> exp, path, cum;
      double open_sum = 0.0, active_sum = 0.0, failsafe_sum = 0.0;
      for (std::size_t ti = 0; ti < tasks.size(); ++ti) {
        if (tasks[ti].dataset != dataset) continue;
        const BenchRecord& r = per_task[ti][mi];
        table.records.push_back(r);
        table.record_datasets.push_back(dataset);
        ++s.runs;
        open_sum += r.open_norm;
        active_sum += r.open_active_norm;
        failsafe_sum += r.failsafe_count;
        if (r.status != SearchStatus::success) {
          ++s.failures;
          continue;
        }
        exp.push_back(*r.expanded_rel_err);
        path.push_back(*r.path_rel_err);
        cum.push_back(*r.cumulative_expanded_rel_err);
      }
      s.mean_expanded_rel_err = mean_of(exp);
      s.mean_path_rel_err = mean_of(path);
      s.mean_cumulative_expanded_rel_err = mean_of(cum);
      s.mean_open_norm = s.runs ? open_sum / static_cast<double>(s.runs) : 0.0;
      s.mean_open_active_norm = s.runs ? active_sum / static_cast<double>(s.runs) : 0.0;
      s.mean_failsafe = s.runs ? failsafe_sum / static_cast<double>(s.runs) : 0.0;
      table.summaries.push_back(s);
    }
  }

  if (!spec.out_dir.empty()) {
    ensure_dir(spec.out_dir);
    std::ostringstream runs, summary, md;
    write_runs_csv(runs, table);
    write_summary_csv(summary, table);
    write_markdown_table(md, table);
    write_text(join(spec.out_dir, "runs.csv"), runs.str());
    write_text(join(spec.out_dir, "summary.csv"), summary.str());
    write_text(join(spec.out_dir, "summary.md"), md.str());
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    write_text(join(spec.out_dir, "timing.txt"),
               "wall_seconds " + format_fixed(seconds, 3) + "\nworkers " + std::to_string(spec.workers) + "\n");
  }
  return table;
}

void write_runs_csv(std::ostream& out, const SweepTable& table) {
  out << "dataset," << kBenchCsvHeader << '\n';
  for (std::size_t i = 0; i < table.records.size(); ++i) {
    out << table.record_datasets[i] << ',';
    write_record_csv(out, table.records[i]);
  }
}

void write_summary_csv(std::ostream& out, const SweepTable& table) {
  out << "dataset,method,runs,failures,mean_expanded_rel_err,mean_path_rel_err,mean_open_norm,"
         "mean_open_active_norm,mean_failsafe_count,mean_cumulative_expanded_rel_err\n";
  for (const auto& s : table.summaries) {
    out << s.dataset << ',' << method_label(s.method) << ',' << s.runs << ',' << s.failures << ','
        << format_opt(s.mean_expanded_rel_err, 6) << ',' << format_opt(s.mean_path_rel_err, 6) << ','
        << format_fixed(s.mean_open_norm, 6) << ',' << format_fixed(s.mean_open_active_norm, 6) << ','
        << format_fixed(s.mean_failsafe, 6) << ','
        << format_opt(s.mean_cumulative_expanded_rel_err, 6) << '\n';
  }
}

void write_markdown_table(std::ostream& out, const SweepTable& table) {
  if (table.datasets.empty() || table.methods.empty()) return;
  out << "| Dataset | Metric |";
  for (Method m : table.methods) out << ' ' << method_label(m) << " |";
  out << "\n|---|---|";
  for (std::size_t i = 0; i < table.methods.size(); ++i) out << "---|";
  out << '\n';
  const char* metric_names[3] = {"expanded rel. err (%)", "path rel. err (%)", "open list (norm.)"};
  for (const auto& dataset : table.datasets) {
    for (int row = 0; row < 3; ++row) {
      out << "| " << (row == 0 ? dataset : std::string()) << " | " << metric_names[row] << " |";
      for (Method m : table.methods) {
        const auto& s = table.summary(dataset, m);
        std::string cell;
        if (row == 0) cell = s.mean_expanded_rel_err ? format_fixed(*s.mean_expanded_rel_err, 2) : "n/a";
        if (row == 1) cell = s.mean_path_rel_err ? format_fixed(*s.mean_path_rel_err, 2) : "n/a";
        if (row == 2) cell = format_fixed(s.mean_open_norm, 3);
        out << ' ' << cell << " |";
      }
      out << '\n';
    }
  }
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

std::string render_ppm(const GridMap& map, const RenderLayers& layers) {
  if (layers.scale < 1) throw ContractViolation("render: scale must be >= 1");
  if (layers.ratings && (layers.ratings->width != map.width() || layers.ratings->height != map.height())) {
    throw ContractViolation("render: rating grid dimensions do not match the map");
  }
  struct Rgb {
    unsigned char r, g, b;
  };
  std::vector<Rgb> colour(map.cell_count(), Rgb{255, 255, 255});
  for (std::size_t i = 0; i < map.cell_count(); ++i) {
    const Cell c = map.cell_at(i);
    if (map.blocked(c)) {
      colour[i] = {0, 0, 0};
    } else if (layers.ratings) {
      const double d = std::clamp(layers.ratings->rating(c), 0.0, 1.0);
      const auto fade = static_cast<unsigned char>(std::lround(255.0 * (1.0 - d)));
      colour[i] = {fade, 255, fade};
    }
  }
  auto paint = [&](const std::vector<Cell>* cells, Rgb rgb) {
    if (!cells) return;
    for (const Cell& c : *cells) {
      if (!map.in_bounds(c)) throw ContractViolation("render: overlay cell outside the map");
      colour[map.index(c)] = rgb;
    }
  };
  paint(layers.expanded, {64, 128, 255});
  paint(layers.path, {220, 20, 60});

  const int s = layers.scale;
  const int w = map.width() * s;
  const int h = map.height() * s;
  std::string out = "P6\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
  out.reserve(out.size() + static_cast<std::size_t>(w) * h * 3);
  for (int py = 0; py < h; ++py) {
    const int y = map.height() - 1 - py / s;
    for (int px = 0; px < w; ++px) {
      const Rgb& c = colour[map.index({px / s, y})];
      out.push_back(static_cast<char>(c.r));
      out.push_back(static_cast<char>(c.g));
      out.push_back(static_cast<char>(c.b));
    }
  }
  return out;
}

void render(const GridMap& map, const RenderLayers& layers, const std::string& out_path) {
  write_text(out_path, render_ppm(map, layers));
}

}  // namespace slope
