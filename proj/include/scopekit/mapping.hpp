#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "scopekit/grid.hpp"

namespace scopekit {

// Inverse sensor model constants.  Symmetric log-odds keep the additive
// update rule exact: k hits and m misses net to (k-m)*kLogOddsOcc.
inline const double kLogOddsOcc = std::log(0.7 / 0.3);
inline const double kLogOddsFree = -kLogOddsOcc;
inline constexpr double kLogOddsClamp = 10.0;

struct LogOddsGrid {
  GridSpec spec;
  std::vector<double> cells;  // row-major log-odds, clamped to +/-kLogOddsClamp

  LogOddsGrid() : cells(spec.cell_count(), 0.0) {}
  explicit LogOddsGrid(const GridSpec& s) : spec(s), cells(s.cell_count(), 0.0) {}

  double& at(int col, int row) { return cells[static_cast<std::size_t>(row) * spec.width + col]; }
  double at(int col, int row) const { return cells[static_cast<std::size_t>(row) * spec.width + col]; }
};

// Adds one scan's evidence: free cells along each discrete ray (endpoint
// excluded), occupied evidence at hit endpoints.  Sentinel beams carve free
// space out to their stored endpoint.  The clamp is applied once per call.
void integrate_scan(LogOddsGrid& grid, const LidarScan& scan);

// The static-object map g(.): integrates a scan history (time order) into a
// fresh grid and converts log-odds to probabilities.  Unobserved cells stay
// at 0.5.
OccupancyGrid build_local_map(std::span<const LidarScan> history, const GridSpec& spec);

OccupancyGrid to_probabilities(const LogOddsGrid& grid);

}  // namespace scopekit
