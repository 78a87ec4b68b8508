#include "slope/grid_file.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include "slope/error.hpp"

namespace slope {

namespace {

std::string read_line(std::istream& in, const char* what) {
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (!line.empty()) return line;
  }
  throw FormatError(std::string("grid file: unexpected end of input, expected ") + what);
}

long long header_value(const std::string& line, const std::string& key) {
  std::istringstream is(line);
  std::string k;
  long long v = 0;
  if (!(is >> k >> v) || k != key) throw FormatError("grid file: expected '" + key + " <n>', got '" + line + "'");
  return v;
}

}  // namespace

void write_grid_file(std::ostream& out, const GridFile& file) {
  out << "height " << file.height << '\n'
      << "width " << file.width << '\n'
      << "m " << file.m << '\n'
      << "source " << file.source << '\n';
  char buf[48];
  for (int y = file.height - 1; y >= 0; --y) {
    for (int x = 0; x < file.width; ++x) {
      const double v = file.values[static_cast<std::size_t>(y) * file.width + x];
      if (std::isinf(v)) {
        std::snprintf(buf, sizeof buf, "%s", v > 0 ? "inf" : "-inf");
      } else {
        std::snprintf(buf, sizeof buf, "%.4f", v);
      }
      if (x) out << ' ';
      out << buf;
    }
    out << '\n';
  }
}

GridFile parse_grid_file(std::istream& in) {
  GridFile file;
  const long long h = header_value(read_line(in, "height"), "height");
  const long long w = header_value(read_line(in, "width"), "width");
  if (h < 1 || w < 1 || h > 10000 || w > 10000) throw FormatError("grid file: dimensions out of range");
  file.height = static_cast<int>(h);
  file.width = static_cast<int>(w);
  file.m = static_cast<int>(header_value(read_line(in, "m"), "m"));
  {
    const std::string line = read_line(in, "source");
    std::istringstream is(line);
    std::string key;
    if (!(is >> key >> file.source) || key != "source") {
      throw FormatError("grid file: expected 'source <tag>', got '" + line + "'");
    }
  }
  file.values.assign(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), 0.0);
  for (int row = 0; row < file.height; ++row) {
    const std::string line = read_line(in, "grid row");
    std::istringstream is(line);
    const int y = file.height - 1 - row;
    std::string token;
    int x = 0;
    while (is >> token) {
      if (x >= file.width) throw FormatError("grid file: row " + std::to_string(row) + " has too many values");
      char* end = nullptr;
      const double v = std::strtod(token.c_str(), &end);
      if (end == token.c_str() || *end != '\0' || std::isnan(v)) {
        throw FormatError("grid file: bad value '" + token + "'");
      }
      file.values[static_cast<std::size_t>(y) * file.width + x] = v;
      ++x;
    }
    if (x != file.width) {
      throw FormatError("grid file: row " + std::to_string(row) + " has " + std::to_string(x) +
                        " values, expected " + std::to_string(file.width));
    }
  }
  return file;
}

}  // namespace slope
