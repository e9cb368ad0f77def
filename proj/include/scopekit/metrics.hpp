#pragma once

#include <array>
#include <span>
#include <vector>

#include "scopekit/grid.hpp"
#include "scopekit/predict.hpp"

namespace scopekit {

// Weighted mean square error.  Default weights balance the class skew:
// occupied truth cells (t > 0.3) weigh #free/#occupied capped at 100, free
// cells weigh 1.  Pass an explicit weight grid to override.
double wmse(const OccupancyGrid& pred, const OccupancyGrid& truth,
            const std::vector<float>* weights = nullptr);

// Mean local SSIM with an 11x11 Gaussian window (sigma 1.5), K1=0.01,
// K2=0.03, dynamic range 1; averaged over fully interior window centers.
double ssim(const OccupancyGrid& a, const OccupancyGrid& b);

struct ClusterSet {
  std::vector<std::array<double, 2>> centroids;  // (col, row) in cell units
  std::vector<int> sizes;
};

// Density clustering over occupied cells (Euclidean metric, cell units).
// minPts=1 keeps single-cell objects.  Clusters come back sorted by centroid
// so the result is independent of traversal order.  cell_labels, when given,
// receives one entry per grid cell: the cluster index or -1.
ClusterSet dbscan(const BinaryGrid& grid, double eps = 1.5, int min_pts = 1,
                  std::vector<int>* cell_labels = nullptr);

struct OspaResult {
  double distance = 0.0;
  double localization = 0.0;  // distance^p = localization^p + cardinality^p
  double cardinality = 0.0;
};

inline constexpr double kOspaCutoff = 10.0;  // cells (1 m on the default grid)

// Optimal subpattern assignment distance between centroid sets; exact
// assignment via a Hungarian solver.  Two empty sets give distance 0.
OspaResult ospa(const ClusterSet& x, const ClusterSet& y,
                double cutoff = kOspaCutoff, int p = 1);

struct MetricOptions {
  double threshold = kFreeThreshold;  // binarization for the OSPA pipeline
  double ospa_cutoff = kOspaCutoff;
  int ospa_p = 1;
  double dbscan_eps = 1.5;
  int dbscan_min_pts = 1;
};

struct HorizonMetrics {
  double wmse = 0.0;
  double ssim = 0.0;
  double ospa = 0.0;
};

// Per-horizon metrics of a prediction bundle against the truth sequence
// (truth[T-1] is the ground-truth OGM at horizon T).
std::vector<HorizonMetrics> evaluate_sequence(const PredictionBundle& bundle,
                                              std::span<const OccupancyGrid> truth,
                                              const MetricOptions& opts = {});

}  // namespace scopekit
