#include "scopekit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace scopekit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Minimum-cost assignment of every row to a distinct column (rows <= cols),
// O(rows^2 * cols) potentials + augmenting paths.
double assignment_cost(const std::vector<std::vector<double>>& cost) {
  const int m = static_cast<int>(cost.size());
  if (m == 0) return 0.0;
  const int n = static_cast<int>(cost[0].size());
  std::vector<double> u(m + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> match(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= m; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = match[j0];
      int j1 = -1;
      double delta = kInf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  double total = 0.0;
  for (int j = 1; j <= n; ++j)
    if (match[j] != 0) total += cost[match[j] - 1][j - 1];
  return total;
}

std::vector<double> gaussian_window(int half, double sigma) {
  const int side = 2 * half + 1;
  std::vector<double> w(static_cast<std::size_t>(side) * side);
  double sum = 0.0;
  for (int dy = -half; dy <= half; ++dy)
    for (int dx = -half; dx <= half; ++dx) {
      const double g = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
      w[static_cast<std::size_t>(dy + half) * side + (dx + half)] = g;
      sum += g;
    }
  for (double& v : w) v /= sum;
  return w;
}

}  // namespace

double wmse(const OccupancyGrid& pred, const OccupancyGrid& truth,
            const std::vector<float>* weights) {
  if (!(pred.spec == truth.spec))
    throw std::invalid_argument("wmse: grid specs differ");
  if (weights && weights->size() != truth.cells.size())
    throw std::invalid_argument("wmse: weight grid size mismatch");

  double occupied_weight = 1.0;
  if (!weights) {
    std::size_t n_occ = 0;
    for (float t : truth.cells) n_occ += t > kFreeThreshold;
    const std::size_t n_free = truth.cells.size() - n_occ;
    occupied_weight =
        n_occ == 0 ? 1.0
                   : std::min(static_cast<double>(n_free) / static_cast<double>(n_occ), 100.0);
  }

  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < truth.cells.size(); ++i) {
    const double w = weights ? (*weights)[i]
                             : (truth.cells[i] > kFreeThreshold ? occupied_weight : 1.0);
    const double d = static_cast<double>(pred.cells[i]) - static_cast<double>(truth.cells[i]);
    num += w * d * d;
    den += w;
  }
  return den == 0.0 ? 0.0 : num / den;
}

double ssim(const OccupancyGrid& a, const OccupancyGrid& b) {
  if (!(a.spec == b.spec)) throw std::invalid_argument("ssim: grid specs differ");
  constexpr int kHalf = 5;  // 11x11 window
  constexpr double kC1 = 0.01 * 0.01;
  constexpr double kC2 = 0.03 * 0.03;
  const int w = a.spec.width, h = a.spec.height;
  if (w < 2 * kHalf + 1 || h < 2 * kHalf + 1)
    throw std::invalid_argument("ssim: grid smaller than the 11x11 window");
  static const std::vector<double> kernel = gaussian_window(kHalf, 1.5);

  double total = 0.0;
  std::size_t count = 0;
  for (int row = kHalf; row < h - kHalf; ++row) {
    for (int col = kHalf; col < w - kHalf; ++col) {
      double mx = 0.0, my = 0.0;
      std::size_t k = 0;
      for (int dy = -kHalf; dy <= kHalf; ++dy)
        for (int dx = -kHalf; dx <= kHalf; ++dx, ++k) {
          mx += kernel[k] * a.at(col + dx, row + dy);
          my += kernel[k] * b.at(col + dx, row + dy);
        }
      double vx = 0.0, vy = 0.0, cov = 0.0;
      k = 0;
      for (int dy = -kHalf; dy <= kHalf; ++dy)
        for (int dx = -kHalf; dx <= kHalf; ++dx, ++k) {
          const double da = a.at(col + dx, row + dy) - mx;
          const double db = b.at(col + dx, row + dy) - my;
          vx += kernel[k] * da * da;
          vy += kernel[k] * db * db;
          cov += kernel[k] * da * db;
        }
      const double num = (2.0 * mx * my + kC1) * (2.0 * cov + kC2);
      const double den = (mx * mx + my * my + kC1) * (vx + vy + kC2);
      total += num / den;
      ++count;
    }
  }
  return total / static_cast<double>(count);
}

ClusterSet dbscan(const BinaryGrid& grid, double eps, int min_pts,
                  std::vector<int>* cell_labels) {
  if (!(eps > 0.0)) throw std::invalid_argument("dbscan: eps must be positive");
  if (min_pts < 1) throw std::invalid_argument("dbscan: minPts must be >= 1");

  std::vector<std::array<double, 2>> points;
  for (int row = 0; row < grid.spec.height; ++row)
    for (int col = 0; col < grid.spec.width; ++col)
      if (grid.at(col, row)) points.push_back({static_cast<double>(col), static_cast<double>(row)});

  const std::size_t n = points.size();
  const double eps2 = eps * eps;
  auto neighbors = [&](std::size_t i) {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < n; ++j) {
      const double dx = points[i][0] - points[j][0];
      const double dy = points[i][1] - points[j][1];
      if (dx * dx + dy * dy <= eps2) out.push_back(j);
    }
    return out;
  };

  constexpr int kUnvisited = -2, kNoise = -1;
  std::vector<int> label(n, kUnvisited);
  int cluster_count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (label[i] != kUnvisited) continue;
    auto seed_neighbors = neighbors(i);
    if (static_cast<int>(seed_neighbors.size()) < min_pts) {
      label[i] = kNoise;
      continue;
    }
    const int cluster = cluster_count++;
    label[i] = cluster;
    std::vector<std::size_t> frontier = std::move(seed_neighbors);
    for (std::size_t f = 0; f < frontier.size(); ++f) {
      const std::size_t j = frontier[f];
      if (label[j] == kNoise) label[j] = cluster;  // border point
      if (label[j] != kUnvisited) continue;
      label[j] = cluster;
      auto nb = neighbors(j);
      if (static_cast<int>(nb.size()) >= min_pts)
        frontier.insert(frontier.end(), nb.begin(), nb.end());
    }
  }

  std::vector<std::array<double, 2>> sums(cluster_count, {0.0, 0.0});
  std::vector<int> sizes(cluster_count, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (label[i] < 0) continue;
    sums[label[i]][0] += points[i][0];
    sums[label[i]][1] += points[i][1];
    ++sizes[label[i]];
  }
  ClusterSet set;
  std::vector<std::size_t> order(cluster_count);
  for (std::size_t c = 0; c < order.size(); ++c) {
    sums[c][0] /= sizes[c];
    sums[c][1] /= sizes[c];
    order[c] = c;
  }
  std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
    return sums[l] < sums[r];
  });
  std::vector<int> rank(cluster_count);
  for (std::size_t pos = 0; pos < order.size(); ++pos) rank[order[pos]] = static_cast<int>(pos);
  for (std::size_t c : order) {
    set.centroids.push_back(sums[c]);
    set.sizes.push_back(sizes[c]);
  }
  if (cell_labels) {
    cell_labels->assign(grid.spec.cell_count(), -1);
    for (std::size_t i = 0; i < n; ++i) {
      if (label[i] < 0) continue;
      const std::size_t idx = static_cast<std::size_t>(points[i][1]) * grid.spec.width +
                              static_cast<std::size_t>(points[i][0]);
      (*cell_labels)[idx] = rank[label[i]];
    }
  }
  return set;
}

OspaResult ospa(const ClusterSet& x, const ClusterSet& y, double cutoff, int p) {
  if (!(cutoff > 0.0)) throw std::invalid_argument("ospa: cutoff must be positive");
  if (p < 1) throw std::invalid_argument("ospa: order must be >= 1");

  const auto* small = &x.centroids;
  const auto* large = &y.centroids;
  if (small->size() > large->size()) std::swap(small, large);
  const std::size_t m = small->size(), n = large->size();

  OspaResult result;
  if (n == 0) return result;  // both sets empty: 0 by convention

  const double pd = static_cast<double>(p);
  double loc_sum = 0.0;
  if (m > 0) {
    std::vector<std::vector<double>> cost(m, std::vector<double>(n));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const double dx = (*small)[i][0] - (*large)[j][0];
        const double dy = (*small)[i][1] - (*large)[j][1];
        cost[i][j] = std::pow(std::min(std::hypot(dx, dy), cutoff), pd);
      }
    loc_sum = assignment_cost(cost);
  }
  const double card_sum = std::pow(cutoff, pd) * static_cast<double>(n - m);
  const double nd = static_cast<double>(n);
  result.distance = std::pow((loc_sum + card_sum) / nd, 1.0 / pd);
  result.localization = std::pow(loc_sum / nd, 1.0 / pd);
  result.cardinality = std::pow(card_sum / nd, 1.0 / pd);
  return result;
}

std::vector<HorizonMetrics> evaluate_sequence(const PredictionBundle& bundle,
                                              std::span<const OccupancyGrid> truth,
                                              const MetricOptions& opts) {
  if (static_cast<std::size_t>(bundle.horizons()) != truth.size())
    throw std::invalid_argument("evaluate_sequence: horizon count mismatch");
  std::vector<HorizonMetrics> out(truth.size());
  for (std::size_t t = 0; t < truth.size(); ++t) {
    const OccupancyGrid& pred = bundle.mean_maps[t];
    out[t].wmse = wmse(pred, truth[t]);
    out[t].ssim = ssim(pred, truth[t]);
    const ClusterSet cx = dbscan(binarize(pred, opts.threshold), opts.dbscan_eps,
                                 opts.dbscan_min_pts);
    const ClusterSet cy = dbscan(binarize(truth[t], opts.threshold), opts.dbscan_eps,
                                 opts.dbscan_min_pts);
    out[t].ospa = ospa(cx, cy, opts.ospa_cutoff, opts.ospa_p).distance;
  }
  return out;
}

}  // namespace scopekit
