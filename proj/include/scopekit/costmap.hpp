#pragma once

#include <span>
#include <vector>

#include "scopekit/grid.hpp"
#include "scopekit/predict.hpp"
#include "scopekit/uq.hpp"

namespace scopekit {

inline constexpr int kCostLethal = 254;
inline constexpr int kCostBlocked = 253;  // planner treats >= this as untraversable
inline constexpr int kPredictionPeak = 128;
inline constexpr int kUncertaintyPeak = 64;

enum class LayerKind { static_map, prediction, uncertainty };

struct CostmapLayer {
  GridSpec spec;
  std::vector<std::uint8_t> costs;  // row-major, 0..254
  LayerKind kind = LayerKind::static_map;

  CostmapLayer() : costs(spec.cell_count(), 0) {}
  CostmapLayer(const GridSpec& s, LayerKind k) : spec(s), costs(s.cell_count(), 0), kind(k) {}

  std::uint8_t at(int col, int row) const { return costs[static_cast<std::size_t>(row) * spec.width + col]; }
};

struct MasterCostmap {
  GridSpec spec;
  std::vector<std::uint8_t> costs;

  std::uint8_t at(int col, int row) const { return costs[static_cast<std::size_t>(row) * spec.width + col]; }
};

// Exact Euclidean distance (cell units) from every cell to the nearest seed,
// via the two-pass squared distance transform.  Cells with no seed anywhere
// get +inf.
std::vector<double> distance_to_seeds(const BinaryGrid& seeds);

// cost(c) = round(peak * exp(-d(c)^2 / (2 sigma^2))), truncated to 0 below 1.
CostmapLayer gaussian_inflate(const BinaryGrid& seeds, int peak, double sigma,
                              LayerKind kind = LayerKind::prediction);

// Observed obstacles get the lethal cost (predicted ones never do).
CostmapLayer static_layer(const BinaryGrid& occupied);

// Prediction layer: Gaussian-inflated binarized mean map (peak 128, sigma 2).
// Uncertainty layer: round(64 * H_c / ln 2) smoothed with a sigma-1 Gaussian.
std::pair<CostmapLayer, CostmapLayer> build_layers(const PredictionBundle& bundle,
                                                   const UqTable& table, int horizon,
                                                   double threshold = kFreeThreshold);

// Cellwise max over layers.
MasterCostmap merge(std::span<const CostmapLayer> layers);

struct PathResult {
  bool reachable = false;
  std::vector<CellCoord> cells;  // start..goal inclusive
  double cost = 0.0;
};

// 8-connected A* with edge weight len*(1 + beta*avg(cost)/254), beta=4;
// cells with cost >= 253 are blocked.  Deterministic tie-break (f, h, row, col).
inline constexpr double kTraversalBeta = 4.0;
PathResult plan_path(const MasterCostmap& costmap, CellCoord start, CellCoord goal);

// PGM export (costs as gray values) and a PPM overlay with the path drawn in.
void export_costmap_pgm(const MasterCostmap& costmap, const std::filesystem::path& path);
void export_costmap_pgm(const CostmapLayer& layer, const std::filesystem::path& path);
void export_path_overlay(const MasterCostmap& costmap, const PathResult& path,
                         const std::filesystem::path& out);

}  // namespace scopekit
