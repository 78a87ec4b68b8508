#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "slope/grid.hpp"

namespace slope {

enum class WorldType {
  alternating_gaps,
  shifting_gaps,
  single_bugtrap,
  forest,
  bugtrap_forest,
  gaps_forest,
  maze,
  multiple_bugtraps,
};

inline constexpr std::array<WorldType, 8> kAllWorlds = {
    WorldType::alternating_gaps, WorldType::shifting_gaps, WorldType::single_bugtrap,
    WorldType::forest,           WorldType::bugtrap_forest, WorldType::gaps_forest,
    WorldType::maze,             WorldType::multiple_bugtraps,
};

std::string_view to_string(WorldType type);
std::optional<WorldType> parse_world_type(std::string_view name);

// Tunable generator parameters. Unset keys fall back to per-world defaults:
//   density     forest obstacle probability (0.2; 0.1 under the *_forest overlays)
//   walls       wall count for the gap worlds (3)
//   gap         gap height in cells for the gap worlds (3)
//   trap_size   outer side of the single bugtrap (40% of the shorter side)
//   traps_min / traps_max   bugtrap count range for multiple_bugtraps (3 / 5)
//   retries     regeneration attempts before giving up (50)
struct WorldSpec {
  WorldType world_type = WorldType::forest;
  int width = 32;
  int height = 32;
  std::uint64_t seed = 0;
  std::uint64_t master_seed = 0;
  std::map<std::string, double> params;

  double param(const std::string& key, double fallback) const;
};

class GenerationError : public Error {
 public:
  GenerationError(WorldSpec spec, const std::string& what)
      : Error(ErrorCategory::generation, what), spec_(std::move(spec)) {}

  const WorldSpec& spec() const { return spec_; }

 private:
  WorldSpec spec_;
};

// Deterministic in the full spec. The returned map is verified solvable.
GridMap generate(const WorldSpec& spec);

struct SplitCounts {
  int train = 320;
  int val = 80;
  int test = 100;
};

struct DatasetSplit {
  std::vector<WorldSpec> train_specs, val_specs, test_specs;
  std::vector<GridMap> train, val, test;
};

// Seeds are laid out consecutively: train [0, train), val [train, train+val), test after.
DatasetSplit generate_split(const WorldSpec& family, const SplitCounts& counts = {});

// "<world>_<split>_<seed>"
std::string map_id(WorldType type, std::string_view split, std::uint64_t seed);

}  // namespace slope
