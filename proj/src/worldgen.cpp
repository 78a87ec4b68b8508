#include "slope/worldgen.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace slope {

namespace {

constexpr std::array<std::string_view, 8> kWorldNames = {
    "alternating_gaps", "shifting_gaps", "single_bugtrap", "forest",
    "bugtrap_forest",   "gaps_forest",   "maze",           "multiple_bugtraps",
};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Portable draws: std distributions are implementation-defined, the engine is not.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return uniform01() < p; }
  // Inclusive range.
  int uniform_int(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(engine_() % span);
  }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t rng_seed(const WorldSpec& spec) {
  std::uint64_t h = splitmix64(spec.master_seed);
  h = splitmix64(h ^ static_cast<std::uint64_t>(spec.world_type));
  h = splitmix64(h ^ spec.seed);
  h = splitmix64(h ^ (static_cast<std::uint64_t>(spec.width) << 32 | static_cast<std::uint32_t>(spec.height)));
  return h;
}

void block(GridMap& map, Cell c) {
  if (map.in_bounds(c) && c != map.start() && c != map.goal()) map.set_blocked(c, true);
}

void place_forest(GridMap& map, Rng& rng, double density, const std::vector<std::uint8_t>* keep_free = nullptr) {
  for (int y = 0; y < map.height(); ++y) {
    for (int x = 0; x < map.width(); ++x) {
      const bool tree = rng.bernoulli(density);
      const Cell c{x, y};
      if (tree && !(keep_free && (*keep_free)[map.index(c)])) block(map, c);
    }
  }
}

// Full-height walls with one gap each. Returns a mask of gap cells.
std::vector<std::uint8_t> place_gap_walls(GridMap& map, Rng& rng, int walls, int gap, bool shifting) {
  const int w = map.width();
  const int h = map.height();
  if (walls < 1 || walls > (w - 2) / 2) {
    throw ContractViolation("gap worlds: wall count " + std::to_string(walls) + " does not fit width " + std::to_string(w));
  }
  if (gap < 1 || gap > h - 2) throw ContractViolation("gap worlds: gap height out of range");
  std::vector<std::uint8_t> gap_mask(map.cell_count(), 0);
  for (int i = 0; i < walls; ++i) {
    const int x = (i + 1) * w / (walls + 1);
    int gap_lo = 0;
    if (shifting) {
      gap_lo = rng.uniform_int(1, h - 1 - gap);
    } else {
      gap_lo = (i % 2 == 0) ? h - 1 - gap : 1;  // near top first, start sits bottom-left
    }
    for (int y = 0; y < h; ++y) {
      const Cell c{x, y};
      if (y >= gap_lo && y < gap_lo + gap) {
        gap_mask[map.index(c)] = 1;
        map.set_blocked(c, false);
      } else {
        block(map, c);
      }
    }
  }
  return gap_mask;
}

// A square cup of side `size` whose mouth faces the corner (mouth_x, mouth_y) in {-1,+1}^2.
// The two sides opposite the mouth are solid; the mouth-side walls are half-length lips.
void place_bugtrap(GridMap& map, int x0, int y0, int size, int mouth_x, int mouth_y) {
  const int x1 = x0 + size - 1;
  const int y1 = y0 + size - 1;
  const int back_x = mouth_x < 0 ? x1 : x0;
  const int lip_x = mouth_x < 0 ? x0 : x1;
  const int back_y = mouth_y < 0 ? y1 : y0;
  const int lip_y = mouth_y < 0 ? y0 : y1;
  const int half = size / 2;
  for (int t = 0; t < size; ++t) {
    block(map, {x0 + t, back_y});
    block(map, {back_x, y0 + t});
  }
  // Lips grow out of the back walls and stop half-way, leaving the mouth open.
  for (int t = 0; t < size - half; ++t) {
    const int lx = mouth_x < 0 ? x1 - t : x0 + t;
    const int ly = mouth_y < 0 ? y1 - t : y0 + t;
    block(map, {lx, lip_y});
    block(map, {lip_x, ly});
  }
}

void place_single_bugtrap(GridMap& map, const WorldSpec& spec) {
  const int shorter = std::min(map.width(), map.height());
  const int size = std::max(5, static_cast<int>(spec.param("trap_size", 0.4 * shorter)));
  if (size > shorter - 2) throw ContractViolation("single_bugtrap: trap size too large for map");
  const int x0 = (map.width() - size) / 2;
  const int y0 = (map.height() - size) / 2;
  // Mouth toward the start so goal-directed search walks into the cup.
  const int mouth_x = map.start().x <= map.goal().x ? -1 : 1;
  const int mouth_y = map.start().y <= map.goal().y ? -1 : 1;
  place_bugtrap(map, x0, y0, size, mouth_x, mouth_y);
}

void place_multiple_bugtraps(GridMap& map, Rng& rng, const WorldSpec& spec) {
  const int lo = static_cast<int>(spec.param("traps_min", 3));
  const int hi = static_cast<int>(spec.param("traps_max", 5));
  const int count = rng.uniform_int(lo, std::max(lo, hi));
  const int shorter = std::min(map.width(), map.height());
  const int max_size = std::max(5, shorter / 4);
  for (int i = 0; i < count; ++i) {
    const int size = rng.uniform_int(5, max_size);
    const int x0 = rng.uniform_int(1, std::max(1, map.width() - size - 1));
    const int y0 = rng.uniform_int(1, std::max(1, map.height() - size - 1));
    const int mouth_x = rng.bernoulli(0.5) ? -1 : 1;
    const int mouth_y = rng.bernoulli(0.5) ? -1 : 1;
    place_bugtrap(map, x0, y0, size, mouth_x, mouth_y);
  }
}

// Recursive division on a lattice where wall lines sit at coordinates = 2 (mod 3), so every
// corridor is two cells wide and later walls can never close an earlier gap.
void place_maze(GridMap& map, Rng& rng) {
  struct Chamber {
    int x0, x1, y0, y1;
  };
  auto wall_candidates = [](int lo, int hi) {
    std::vector<int> out;
    for (int p = lo + 1; p < hi; ++p) {
      if (p % 3 == 2) out.push_back(p);
    }
    return out;
  };
  auto gap_candidates = [](int lo, int hi) {
    std::vector<int> out;
    for (int q = lo; q <= hi; ++q) {
      if (q % 3 == 0) out.push_back(q);
    }
    if (out.empty()) out.push_back(lo);
    return out;
  };

  std::vector<Chamber> stack{{0, map.width() - 1, 0, map.height() - 1}};
  while (!stack.empty()) {
    const Chamber ch = stack.back();
    stack.pop_back();
    const auto vx = wall_candidates(ch.x0, ch.x1);
    const auto hy = wall_candidates(ch.y0, ch.y1);
    if (vx.empty() && hy.empty()) continue;
    const int cw = ch.x1 - ch.x0 + 1;
    const int chh = ch.y1 - ch.y0 + 1;
    bool vertical = cw > chh ? true : (chh > cw ? false : rng.bernoulli(0.5));
    if (vertical && vx.empty()) vertical = false;
    if (!vertical && hy.empty()) vertical = true;

    if (vertical) {
      const int p = vx[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(vx.size()) - 1))];
      const auto gaps = gap_candidates(ch.y0, ch.y1);
      const int q = gaps[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(gaps.size()) - 1))];
      for (int y = ch.y0; y <= ch.y1; ++y) {
        if (y == q || (y == q + 1 && (q + 1) % 3 != 2)) continue;
        block(map, {p, y});
      }
      stack.push_back({ch.x0, p - 1, ch.y0, ch.y1});
      stack.push_back({p + 1, ch.x1, ch.y0, ch.y1});
    } else {
      const int p = hy[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(hy.size()) - 1))];
      const auto gaps = gap_candidates(ch.x0, ch.x1);
      const int q = gaps[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(gaps.size()) - 1))];
      for (int x = ch.x0; x <= ch.x1; ++x) {
        if (x == q || (x == q + 1 && (q + 1) % 3 != 2)) continue;
        block(map, {x, p});
      }
      stack.push_back({ch.x0, ch.x1, ch.y0, p - 1});
      stack.push_back({ch.x0, ch.x1, p + 1, ch.y1});
    }
  }
}

void generate_once(GridMap& map, Rng& rng, const WorldSpec& spec) {
  const int walls = static_cast<int>(spec.param("walls", 3));
  const int gap = static_cast<int>(spec.param("gap", 3));
  switch (spec.world_type) {
    case WorldType::forest:
      place_forest(map, rng, spec.param("density", 0.2));
      break;
    case WorldType::alternating_gaps:
      place_gap_walls(map, rng, walls, gap, false);
      break;
    case WorldType::shifting_gaps:
      place_gap_walls(map, rng, walls, gap, true);
      break;
    case WorldType::single_bugtrap:
      place_single_bugtrap(map, spec);
      break;
    case WorldType::multiple_bugtraps:
      place_multiple_bugtraps(map, rng, spec);
      break;
    case WorldType::maze:
      place_maze(map, rng);
      break;
    case WorldType::bugtrap_forest:
      place_forest(map, rng, spec.param("density", 0.1));
      place_single_bugtrap(map, spec);
      break;
    case WorldType::gaps_forest: {
      GridMap walls_only(map.width(), map.height());
      const auto gap_mask = place_gap_walls(walls_only, rng, walls, gap, false);
      place_forest(map, rng, spec.param("density", 0.1), &gap_mask);
      for (std::size_t i = 0; i < map.cell_count(); ++i) {
        if (walls_only.cells()[i]) block(map, map.cell_at(i));
      }
      break;
    }
  }
}

}  // namespace

std::string_view to_string(WorldType type) {
  return kWorldNames[static_cast<std::size_t>(type)];
}

std::optional<WorldType> parse_world_type(std::string_view name) {
  for (std::size_t i = 0; i < kWorldNames.size(); ++i) {
    if (kWorldNames[i] == name) return static_cast<WorldType>(i);
  }
  return std::nullopt;
}

double WorldSpec::param(const std::string& key, double fallback) const {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

GridMap generate(const WorldSpec& spec) {
  if (spec.width < 8 || spec.height < 8) {
    throw ContractViolation("generate: map dimensions must be at least 8x8");
  }
  const int retries = static_cast<int>(spec.param("retries", 50));
  Rng rng(rng_seed(spec));
  for (int attempt = 0; attempt < retries; ++attempt) {
    GridMap map(spec.width, spec.height);
    generate_once(map, rng, spec);
    if (reachable(map, map.start(), map.goal())) return map;
  }
  std::ostringstream os;
  os << "generate: " << to_string(spec.world_type) << " seed " << spec.seed << " ("
     << spec.width << "x" << spec.height << ") unsolvable after " << retries << " attempts";
  throw GenerationError(spec, os.str());
}

std::string map_id(WorldType type, std::string_view split, std::uint64_t seed) {
  std::string id(to_string(type));
  id += '_';
  id += split;
  id += '_';
  id += std::to_string(seed);
  return id;
}

DatasetSplit generate_split(const WorldSpec& family, const SplitCounts& counts) {
  if (counts.train <= 0 || counts.val <= 0 || counts.test <= 0) {
    throw ContractViolation("generate_split: split counts must be positive");
  }
  DatasetSplit out;
  std::uint64_t seed = 0;
  auto fill = [&](int count, std::string_view split, std::vector<WorldSpec>& specs,
                  std::vector<GridMap>& maps) {
    for (int i = 0; i < count; ++i, ++seed) {
      WorldSpec spec = family;
      spec.seed = seed;
      GridMap map = generate(spec);
      map.set_id(map_id(spec.world_type, split, seed));
      specs.push_back(std::move(spec));
      maps.push_back(std::move(map));
    }
  };
  fill(counts.train, "train", out.train_specs, out.train);
  fill(counts.val, "val", out.val_specs, out.val);
  fill(counts.test, "test", out.test_specs, out.test);
  return out;
}

}  // namespace slope
