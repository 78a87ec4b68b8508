#include "slope/grid.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace slope {

const char* to_string(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::contract: return "contract";
    case ErrorCategory::io: return "io";
    case ErrorCategory::format: return "format";
    case ErrorCategory::config: return "config";
    case ErrorCategory::generation: return "generation";
    case ErrorCategory::oracle: return "oracle";
    case ErrorCategory::lookup: return "lookup";
  }
  return "unknown";
}

std::ostream& operator<<(std::ostream& os, const Cell& c) {
  return os << '(' << c.x << ',' << c.y << ')';
}

double ExactCost::value() const {
  return static_cast<double>(cardinal) + static_cast<double>(diagonal) * std::sqrt(2.0);
}

std::ostream& operator<<(std::ostream& os, const ExactCost& c) {
  return os << '(' << c.cardinal << ',' << c.diagonal << ')';
}

std::strong_ordering compare_cost(const ExactCost& a, const ExactCost& b) {
  const std::int64_t dc = a.cardinal - b.cardinal;
  const std::int64_t dd = a.diagonal - b.diagonal;
  if (dc >= 0 && dd >= 0) {
    return (dc == 0 && dd == 0) ? std::strong_ordering::equal : std::strong_ordering::greater;
  }
  if (dc <= 0 && dd <= 0) return std::strong_ordering::less;
  // Mixed signs: |dc| vs |dd|*sqrt2, compared squared. Never equal since sqrt2 is irrational.
  const std::int64_t lhs = dc * dc;
  const std::int64_t rhs = 2 * dd * dd;
  if (dc > 0) return lhs > rhs ? std::strong_ordering::greater : std::strong_ordering::less;
  return rhs > lhs ? std::strong_ordering::greater : std::strong_ordering::less;
}

std::strong_ordering operator<=>(const ExactCost& a, const ExactCost& b) {
  return compare_cost(a, b);
}

GridMap::GridMap(int width, int height, std::string id)
    : GridMap(width, height,
              std::vector<std::uint8_t>(static_cast<std::size_t>(std::max(width, 0)) *
                                        static_cast<std::size_t>(std::max(height, 0))),
              Cell{0, 0}, Cell{width - 1, height - 1}, std::move(id)) {}

GridMap::GridMap(int width, int height, std::vector<std::uint8_t> blocked, Cell start,
                 Cell goal, std::string id)
    : width_(width),
      height_(height),
      blocked_(std::move(blocked)),
      start_(start),
      goal_(goal),
      id_(std::move(id)) {
  if (width < 2 || height < 2) {
    throw ContractViolation("map must be at least 2x2, got " + std::to_string(width) + "x" +
                            std::to_string(height));
  }
  if (blocked_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw ContractViolation("occupancy vector does not match map dimensions");
  }
  for (auto& v : blocked_) v = v ? 1 : 0;
  set_start(start);
  set_goal(goal);
}

void GridMap::set_start(Cell c) {
  if (!free(c)) {
    std::ostringstream os;
    os << "start " << c << " is out of bounds or blocked";
    throw ContractViolation(os.str());
  }
  start_ = c;
}

void GridMap::set_goal(Cell c) {
  if (!free(c)) {
    std::ostringstream os;
    os << "goal " << c << " is out of bounds or blocked";
    throw ContractViolation(os.str());
  }
  goal_ = c;
}

void GridMap::set_blocked(Cell c, bool value) {
  if (!in_bounds(c)) {
    std::ostringstream os;
    os << "cell " << c << " is out of bounds";
    throw ContractViolation(os.str());
  }
  if (value && (c == start_ || c == goal_)) {
    std::ostringstream os;
    os << "cannot place an obstacle on start/goal cell " << c;
    throw ContractViolation(os.str());
  }
  blocked_[index(c)] = value ? 1 : 0;
}

std::size_t GridMap::obstacle_count() const {
  std::size_t n = 0;
  for (auto v : blocked_) n += v;
  return n;
}

std::vector<Successor> expand(const GridMap& map, Cell n, const TransitionModel& model) {
  if (!map.free(n)) {
    std::ostringstream os;
    os << "expand: cell " << n << " is out of bounds or an obstacle";
    throw ContractViolation(os.str());
  }
  std::vector<Successor> out;
  out.reserve(8);
  for (const auto& off : kNeighbourOffsets) {
    const Cell c{n.x + off.dx, n.y + off.dy};
    if (map.free(c)) out.push_back({c, model.step_cost(off.dx, off.dy)});
  }
  return out;
}

double euclidean_value(Cell a, Cell b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

bool reachable(const GridMap& map, Cell from, Cell to) {
  if (!map.free(from) || !map.free(to)) return false;
  std::vector<std::uint8_t> seen(map.cell_count(), 0);
  std::vector<Cell> stack{from};
  seen[map.index(from)] = 1;
  while (!stack.empty()) {
    const Cell c = stack.back();
    stack.pop_back();
    if (c == to) return true;
    for (const auto& off : kNeighbourOffsets) {
      const Cell nb{c.x + off.dx, c.y + off.dy};
      if (map.free(nb) && !seen[map.index(nb)]) {
        seen[map.index(nb)] = 1;
        stack.push_back(nb);
      }
    }
  }
  return false;
}

namespace {

int parse_header_int(const std::string& line, const std::string& key) {
  std::istringstream is(line);
  std::string k;
  long long v = 0;
  if (!(is >> k >> v) || k != key) throw FormatError("map: expected '" + key + " <n>', got '" + line + "'");
  if (v < 2 || v > 10000) throw FormatError("map: " + key + " out of range: " + std::to_string(v));
  return static_cast<int>(v);
}

std::string strip(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
  return s;
}

}  // namespace

GridMap parse_map(std::istream& in, std::string id) {
  std::string line;
  auto next = [&](const char* what) {
    if (!std::getline(in, line)) throw FormatError(std::string("map: unexpected end of input, expected ") + what);
    line = strip(line);
  };
  next("type line");
  if (line.rfind("type", 0) != 0) throw FormatError("map: expected 'type octile', got '" + line + "'");
  next("height");
  const int height = parse_header_int(line, "height");
  next("width");
  const int width = parse_header_int(line, "width");
  next("map");
  if (line != "map") throw FormatError("map: expected 'map', got '" + line + "'");

  std::vector<std::uint8_t> blocked(static_cast<std::size_t>(width) * height);
  for (int row = 0; row < height; ++row) {
    next("grid row");
    if (static_cast<int>(line.size()) != width) {
      throw FormatError("map: row " + std::to_string(row) + " has " + std::to_string(line.size()) +
                        " characters, expected " + std::to_string(width));
    }
    const int y = height - 1 - row;
    for (int x = 0; x < width; ++x) {
      const char ch = line[static_cast<std::size_t>(x)];
      bool obstacle = false;
      switch (ch) {
        case '.': case 'G': case 'S': obstacle = false; break;
        case '@': case 'O': case 'T': case 'W': obstacle = true; break;
        default: throw FormatError(std::string("map: unexpected character '") + ch + "'");
      }
      blocked[static_cast<std::size_t>(y) * width + x] = obstacle ? 1 : 0;
    }
  }

  Cell start{0, 0};
  Cell goal{width - 1, height - 1};
  while (std::getline(in, line)) {
    line = strip(line);
    if (line.empty()) continue;
    std::istringstream is(line);
    std::string key;
    Cell c;
    if (!(is >> key >> c.x >> c.y)) throw FormatError("map: malformed trailing line '" + line + "'");
    if (key == "start") start = c;
    else if (key == "goal") goal = c;
    else throw FormatError("map: unknown trailing key '" + key + "'");
  }
  try {
    return GridMap(width, height, std::move(blocked), start, goal, std::move(id));
  } catch (const ContractViolation& e) {
    throw FormatError(std::string("map: ") + e.what());
  }
}

GridMap load_map(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open map file '" + path + "'");
  std::string id = path;
  if (auto slash = id.find_last_of('/'); slash != std::string::npos) id = id.substr(slash + 1);
  if (auto dot = id.rfind(".map"); dot != std::string::npos && dot + 4 == id.size()) id.resize(dot);
  return parse_map(in, id);
}

void write_map(std::ostream& out, const GridMap& map) {
  out << "type octile\n"
      << "height " << map.height() << "\n"
      << "width " << map.width() << "\n"
      << "map\n";
  for (int y = map.height() - 1; y >= 0; --y) {
    std::string row(static_cast<std::size_t>(map.width()), '.');
    for (int x = 0; x < map.width(); ++x) {
      if (map.blocked({x, y})) row[static_cast<std::size_t>(x)] = '@';
    }
    out << row << '\n';
  }
  const Cell def_start{0, 0};
  const Cell def_goal{map.width() - 1, map.height() - 1};
  if (map.start() != def_start) out << "start " << map.start().x << ' ' << map.start().y << '\n';
  if (map.goal() != def_goal) out << "goal " << map.goal().x << ' ' << map.goal().y << '\n';
}

void save_map(const std::string& path, const GridMap& map) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write map file '" + path + "'");
  write_map(out, map);
  if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace slope
