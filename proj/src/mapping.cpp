#include "scopekit/mapping.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace scopekit {

namespace {

// Integer Bresenham visit of every cell from a to b inclusive.
template <typename Fn>
void walk_line(CellCoord a, CellCoord b, Fn&& visit) {
  int x = a.col, y = a.row;
  const int dx = std::abs(b.col - a.col), dy = -std::abs(b.row - a.row);
  const int sx = a.col < b.col ? 1 : -1, sy = a.row < b.row ? 1 : -1;
  int err = dx + dy;
  for (;;) {
    visit(x, y);
    if (x == b.col && y == b.row) break;
    const int e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      x += sx;
    }
    if (e2 <= dx) {
      err += dx;
      y += sy;
    }
  }
}

// Cell coordinates without the extent check; out-of-grid cells are skipped
// at update time so rays may start or end outside the grid.
CellCoord unclipped_cell(const GridSpec& spec, double x, double y) {
  CellCoord c;
  c.col = static_cast<int>(std::floor((x - spec.x_min) / spec.resolution));
  c.row = static_cast<int>(std::floor((y - spec.y_min) / spec.resolution));
  return c;
}

}  // namespace

void integrate_scan(LogOddsGrid& grid, const LidarScan& scan) {
  const GridSpec& spec = grid.spec;
  // Per-cell event counts keep the per-scan update a single addition, which
  // makes integration order-independent below the clamp.
  std::vector<int> occ_events(spec.cell_count(), 0);
  std::vector<int> free_events(spec.cell_count(), 0);
  const CellCoord origin = unclipped_cell(spec, scan.origin_x, scan.origin_y);

  for (std::size_t i = 0; i < scan.size(); ++i) {
    const bool hit = scan.hit(i);
    // Endpoints are polar about the scan frame's origin.  Compensated scans
    // (explicit hit mask) already store transformed virtual endpoints for
    // sentinel beams; raw sentinel beams saturate at range_max.
    const double r =
        (hit || !scan.hits.empty()) ? scan.ranges[i] : scan.range_max;
    const double b = scan.bearing(i);
    const CellCoord end = unclipped_cell(spec, r * std::cos(b), r * std::sin(b));
    walk_line(origin, end, [&](int col, int row) {
      if (col < 0 || col >= spec.width || row < 0 || row >= spec.height) return;
      const std::size_t idx = static_cast<std::size_t>(row) * spec.width + col;
      if (hit && col == end.col && row == end.row)
        ++occ_events[idx];
      else
        ++free_events[idx];
    });
  }

  for (std::size_t i = 0; i < grid.cells.size(); ++i) {
    if (occ_events[i] == 0 && free_events[i] == 0) continue;
    const double delta = occ_events[i] * kLogOddsOcc + free_events[i] * kLogOddsFree;
    grid.cells[i] = std::clamp(grid.cells[i] + delta, -kLogOddsClamp, kLogOddsClamp);
  }
}

OccupancyGrid to_probabilities(const LogOddsGrid& grid) {
  OccupancyGrid out(grid.spec);
  for (std::size_t i = 0; i < grid.cells.size(); ++i)
    out.cells[i] = static_cast<float>(1.0 / (1.0 + std::exp(-grid.cells[i])));
  return out;
}

OccupancyGrid build_local_map(std::span<const LidarScan> history, const GridSpec& spec) {
  if (history.empty())
    throw std::invalid_argument("build_local_map: empty history");
  LogOddsGrid grid(spec);
  for (const LidarScan& scan : history) integrate_scan(grid, scan);
  return to_probabilities(grid);
}

}  // namespace scopekit
