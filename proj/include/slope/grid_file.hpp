#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace slope {

// Shared text layout of rating grids and h-grids:
//   height H
//   width W
//   m M
//   source <tag>
//   H rows, top row (y = H-1) first, W space-separated values with 4 decimals
// Values are stored row-major from y = 0. Infinite values are written as "inf".
struct GridFile {
  int width = 0;
  int height = 0;
  int m = 0;
  std::string source;
  std::vector<double> values;
};

void write_grid_file(std::ostream& out, const GridFile& file);
GridFile parse_grid_file(std::istream& in);

}  // namespace slope
