#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

namespace scopekit {

// Geometry of a local occupancy grid.  The default grid covers 6.4 m forward
// (x) and +/-3.2 m to the side (y) at 0.1 m/cell, i.e. 64x64 cells in the
// robot's local frame (x forward, y left).
struct GridSpec {
  int width = 64;   // cells along x
  int height = 64;  // cells along y
  double resolution = 0.1;
  double x_min = 0.0;
  double x_max = 6.4;
  double y_min = -3.2;
  double y_max = 3.2;

  static GridSpec standard() { return GridSpec{}; }
  static GridSpec make(double x_min, double x_max, double y_min, double y_max,
                       double resolution);

  std::size_t cell_count() const {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }
  bool operator==(const GridSpec&) const = default;

  // width/height must tile the extents exactly.
  void validate() const;
};

struct CellCoord {
  int col = 0;  // along x
  int row = 0;  // along y
  bool operator==(const CellCoord&) const = default;
};

// Cell containing a local-frame point, or nullopt outside the half-open
// extent [x_min, x_max) x [y_min, y_max).
std::optional<CellCoord> cell_index(const GridSpec& spec, double x, double y);

// Per-cell occupancy probabilities in [0,1], row-major (index = row*width+col).
// Cells are stored as 32-bit floats to match the on-disk format bit for bit.
struct OccupancyGrid {
  GridSpec spec;
  std::vector<float> cells;

  OccupancyGrid() : cells(spec.cell_count(), 0.0f) {}
  explicit OccupancyGrid(const GridSpec& s, float fill = 0.0f)
      : spec(s), cells(s.cell_count(), fill) {}

  float& at(int col, int row) { return cells[static_cast<std::size_t>(row) * spec.width + col]; }
  float at(int col, int row) const { return cells[static_cast<std::size_t>(row) * spec.width + col]; }

  void validate() const;  // cell count and [0,1] range
};

struct BinaryGrid {
  GridSpec spec;
  std::vector<std::uint8_t> cells;

  BinaryGrid() : cells(spec.cell_count(), 0) {}
  explicit BinaryGrid(const GridSpec& s) : spec(s), cells(s.cell_count(), 0) {}

  std::uint8_t& at(int col, int row) { return cells[static_cast<std::size_t>(row) * spec.width + col]; }
  std::uint8_t at(int col, int row) const { return cells[static_cast<std::size_t>(row) * spec.width + col]; }

  std::size_t count_occupied() const;
  OccupancyGrid to_probabilities() const;  // 0/1 as floats
};

// A 2D lidar scan.  Fresh sensor scans are regular (bearing i = angle_min +
// i*angle_increment, origin at the local frame origin).  Ego-motion
// compensation produces irregular scans: per-beam bearings, an explicit hit
// mask, and the sensor position in the target frame.
struct LidarScan {
  std::vector<double> ranges;
  double angle_min = 0.0;
  double angle_increment = 0.0;
  double range_min = 0.1;
  double range_max = 30.0;

  // Set only on compensated scans.
  std::vector<double> bearings;     // overrides the regular angle grid
  std::vector<std::uint8_t> hits;   // overrides the range-based hit rule
  double origin_x = 0.0;            // sensor position in the scan's frame
  double origin_y = 0.0;

  std::size_t size() const { return ranges.size(); }
  double bearing(std::size_t i) const {
    return bearings.empty() ? angle_min + static_cast<double>(i) * angle_increment
                            : bearings[i];
  }
  // Out-of-range returns are encoded as a sentinel >= range_max.
  bool hit(std::size_t i) const {
    if (!hits.empty()) return hits[i] != 0;
    return ranges[i] >= range_min && ranges[i] < range_max;
  }
};

// The conversion e(.): marks the cell under every in-range beam endpoint.
BinaryGrid scan_to_ogm(const LidarScan& scan, const GridSpec& spec);

inline constexpr double kFreeThreshold = 0.3;

// Cell -> 1 iff probability strictly exceeds the threshold.
BinaryGrid binarize(const OccupancyGrid& grid, double threshold = kFreeThreshold);

// Binary OGM file format: "SKG1" magic, u32 width/height, f64 resolution and
// extents, then width*height f32 cells, all little-endian.
void write_ogm(const OccupancyGrid& grid, const std::filesystem::path& path);
OccupancyGrid read_ogm(const std::filesystem::path& path);

// PGM (P5, maxval 255) export; occupied = white, gray = round(p*255).
void export_pgm(const OccupancyGrid& grid, const std::filesystem::path& path);

// Intersection-over-union of occupied cells; 1.0 when both grids are empty.
double iou(const BinaryGrid& a, const BinaryGrid& b);

}  // namespace scopekit
