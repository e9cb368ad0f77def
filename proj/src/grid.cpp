#include "scopekit/grid.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "binary_io.hpp"
#include "grid_io.hpp"
#include "scopekit/errors.hpp"

namespace scopekit {

namespace {
constexpr char kOgmMagic[4] = {'S', 'K', 'G', '1'};
}

GridSpec GridSpec::make(double x_min, double x_max, double y_min, double y_max,
                        double resolution) {
  GridSpec spec;
  spec.x_min = x_min;
  spec.x_max = x_max;
  spec.y_min = y_min;
  spec.y_max = y_max;
  spec.resolution = resolution;
  spec.width = static_cast<int>(std::lround((x_max - x_min) / resolution));
  spec.height = static_cast<int>(std::lround((y_max - y_min) / resolution));
  spec.validate();
  return spec;
}

void GridSpec::validate() const {
  if (width <= 0 || height <= 0 || resolution <= 0.0)
    throw std::invalid_argument("grid spec must have positive size and resolution");
  if (std::abs((x_max - x_min) / resolution - width) > 1e-9 ||
      std::abs((y_max - y_min) / resolution - height) > 1e-9)
    throw std::invalid_argument("grid extents are not an integer number of cells");
}

std::optional<CellCoord> cell_index(const GridSpec& spec, double x, double y) {
  // Half-open extent: points on the upper boundary are dropped.
  if (x < spec.x_min || x >= spec.x_max || y < spec.y_min || y >= spec.y_max)
    return std::nullopt;
  CellCoord c;
  c.col = static_cast<int>(std::floor((x - spec.x_min) / spec.resolution));
  c.row = static_cast<int>(std::floor((y - spec.y_min) / spec.resolution));
  if (c.col < 0 || c.col >= spec.width || c.row < 0 || c.row >= spec.height)
    return std::nullopt;  // floating point edge against the extent check
  return c;
}

void OccupancyGrid::validate() const {
  spec.validate();
  if (cells.size() != spec.cell_count())
    throw std::invalid_argument("cell count does not match the grid spec");
  for (float v : cells)
    if (!(v >= 0.0f && v <= 1.0f))
      throw std::invalid_argument("occupancy probability outside [0,1]");
}

std::size_t BinaryGrid::count_occupied() const {
  std::size_t n = 0;
  for (auto c : cells) n += c != 0;
  return n;
}

OccupancyGrid BinaryGrid::to_probabilities() const {
  OccupancyGrid out(spec);
  for (std::size_t i = 0; i < cells.size(); ++i)
    out.cells[i] = cells[i] ? 1.0f : 0.0f;
  return out;
}

BinaryGrid scan_to_ogm(const LidarScan& scan, const GridSpec& spec) {
  BinaryGrid grid(spec);
  for (std::size_t i = 0; i < scan.size(); ++i) {
    if (!scan.hit(i)) continue;
    const double b = scan.bearing(i);
    const double x = scan.ranges[i] * std::cos(b);
    const double y = scan.ranges[i] * std::sin(b);
    if (auto c = cell_index(spec, x, y)) grid.at(c->col, c->row) = 1;
  }
  return grid;
}

BinaryGrid binarize(const OccupancyGrid& grid, double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0))
    throw std::invalid_argument("binarize threshold must lie in (0,1)");
  BinaryGrid out(grid.spec);
  for (std::size_t i = 0; i < grid.cells.size(); ++i)
    out.cells[i] = grid.cells[i] > threshold ? 1 : 0;
  return out;
}

void write_ogm(const OccupancyGrid& grid, const std::filesystem::path& path) {
  grid.validate();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot open " + path.string() + " for writing");
  out.write(kOgmMagic, sizeof(kOgmMagic));
  detail::write_le<std::uint32_t>(out, static_cast<std::uint32_t>(grid.spec.width));
  detail::write_le<std::uint32_t>(out, static_cast<std::uint32_t>(grid.spec.height));
  detail::write_le<double>(out, grid.spec.resolution);
  detail::write_le<double>(out, grid.spec.x_min);
  detail::write_le<double>(out, grid.spec.x_max);
  detail::write_le<double>(out, grid.spec.y_min);
  detail::write_le<double>(out, grid.spec.y_max);
  for (float v : grid.cells) detail::write_le<float>(out, v);
  if (!out) throw FormatError("short write to " + path.string());
}

namespace detail {

GridSpec read_spec_fields(std::istream& in) {
  GridSpec spec;
  spec.width = static_cast<int>(read_le<std::uint32_t>(in, "grid width"));
  spec.height = static_cast<int>(read_le<std::uint32_t>(in, "grid height"));
  spec.resolution = read_le<double>(in, "grid resolution");
  spec.x_min = read_le<double>(in, "grid x_min");
  spec.x_max = read_le<double>(in, "grid x_max");
  spec.y_min = read_le<double>(in, "grid y_min");
  spec.y_max = read_le<double>(in, "grid y_max");
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("bad grid spec in file: ") + e.what());
  }
  return spec;
}

void write_spec_fields(std::ostream& out, const GridSpec& spec) {
  write_le<std::uint32_t>(out, static_cast<std::uint32_t>(spec.width));
  write_le<std::uint32_t>(out, static_cast<std::uint32_t>(spec.height));
  write_le<double>(out, spec.resolution);
  write_le<double>(out, spec.x_min);
  write_le<double>(out, spec.x_max);
  write_le<double>(out, spec.y_min);
  write_le<double>(out, spec.y_max);
}

std::vector<float> read_cells(std::istream& in, std::size_t count) {
  std::vector<float> cells(count);
  for (std::size_t i = 0; i < count; ++i) {
    cells[i] = read_le<float>(in, "grid cells");
    if (!(cells[i] >= 0.0f && cells[i] <= 1.0f))
      throw FormatError("cell probability outside [0,1]");
  }
  return cells;
}

}  // namespace detail

OccupancyGrid read_ogm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kOgmMagic, 4) != 0)
    throw FormatError("not an OGM file: " + path.string());
  OccupancyGrid grid(detail::read_spec_fields(in));
  grid.cells = detail::read_cells(in, grid.spec.cell_count());
  if (in.get() != std::char_traits<char>::eof())
    throw FormatError("trailing bytes after grid cells in " + path.string());
  return grid;
}

void export_pgm(const OccupancyGrid& grid, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot open " + path.string() + " for writing");
  char header[64];
  const int n = std::snprintf(header, sizeof(header), "P5\n%d %d\n255\n",
                              grid.spec.width, grid.spec.height);
  out.write(header, n);
  for (float v : grid.cells) {
    // round half up; occupied (1.0) renders white
    const int gray = static_cast<int>(std::floor(static_cast<double>(v) * 255.0 + 0.5));
    out.put(static_cast<char>(gray < 0 ? 0 : (gray > 255 ? 255 : gray)));
  }
  if (!out) throw FormatError("short write to " + path.string());
}

double iou(const BinaryGrid& a, const BinaryGrid& b) {
  if (!(a.spec == b.spec)) throw std::invalid_argument("iou: grid specs differ");
  std::size_t inter = 0, uni = 0;
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    const bool pa = a.cells[i] != 0, pb = b.cells[i] != 0;
    inter += pa && pb;
    uni += pa || pb;
  }
  return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace scopekit
