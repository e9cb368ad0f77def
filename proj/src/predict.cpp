#include "scopekit/predict.hpp"

#include <cmath>
#include <cstring>
#include <deque>
#include <fstream>
#include <stdexcept>

#include "binary_io.hpp"
#include "grid_io.hpp"
#include "scopekit/errors.hpp"
#include "scopekit/metrics.hpp"

namespace scopekit {

namespace {

constexpr char kBundleMagic[4] = {'S', 'K', 'B', '1'};
constexpr double kClusterMatchRadius = 5.0;  // cells

struct TrackedCluster {
  std::vector<std::size_t> cell_indices;
  double vx = 0.0;  // cells per step
  double vy = 0.0;
};

// Dynamic clusters in `current` with velocities estimated from the centroid
// displacement against `previous`.
std::vector<TrackedCluster> track_dynamic_clusters(const BinaryGrid& current,
                                                   const BinaryGrid& previous,
                                                   const OccupancyGrid* local_map) {
  const GridSpec& spec = current.spec;
  auto dynamic_mask = [&](const BinaryGrid& frame) {
    BinaryGrid mask(spec);
    for (std::size_t i = 0; i < frame.cells.size(); ++i) {
      const bool occupied = frame.cells[i] != 0;
      const bool is_static = local_map && local_map->cells[i] >= 0.5f;
      mask.cells[i] = (occupied && !is_static) ? 1 : 0;
    }
    return mask;
  };

  std::vector<int> labels_now;
  const ClusterSet now = dbscan(dynamic_mask(current), 1.5, 1, &labels_now);
  const ClusterSet before = dbscan(dynamic_mask(previous), 1.5, 1);

  std::vector<TrackedCluster> tracked(now.centroids.size());
  for (std::size_t i = 0; i < labels_now.size(); ++i)
    if (labels_now[i] >= 0) tracked[labels_now[i]].cell_indices.push_back(i);

  for (std::size_t c = 0; c < now.centroids.size(); ++c) {
    double best = kClusterMatchRadius;
    int best_j = -1;
    for (std::size_t j = 0; j < before.centroids.size(); ++j) {
      const double dx = now.centroids[c][0] - before.centroids[j][0];
      const double dy = now.centroids[c][1] - before.centroids[j][1];
      const double d = std::hypot(dx, dy);
      if (d < best) {
        best = d;
        best_j = static_cast<int>(j);
      }
    }
    if (best_j >= 0) {
      tracked[c].vx = now.centroids[c][0] - before.centroids[best_j][0];
      tracked[c].vy = now.centroids[c][1] - before.centroids[best_j][1];
    }
  }
  return tracked;
}

void check_history(std::span<const BinaryGrid> history, std::size_t min_len) {
  if (history.size() < min_len)
    throw std::invalid_argument("predictor history is too short");
  for (const BinaryGrid& g : history)
    if (!(g.spec == history.front().spec))
      throw std::invalid_argument("predictor history mixes grid specs");
}

}  // namespace

void PredictionBundle::validate() const {
  if (mean_maps.empty()) throw std::invalid_argument("bundle has no horizons");
  const GridSpec& spec = mean_maps.front().spec;
  for (const OccupancyGrid& g : mean_maps)
    if (!(g.spec == spec)) throw std::invalid_argument("bundle mixes grid specs");
  if (!samples.empty()) {
    if (samples.size() != mean_maps.size())
      throw std::invalid_argument("bundle sample horizons do not match mean maps");
    const std::size_t m = samples.front().size();
    for (const auto& horizon : samples) {
      if (horizon.size() != m)
        throw std::invalid_argument("bundle sample counts are ragged");
      for (const OccupancyGrid& g : horizon)
        if (!(g.spec == spec)) throw std::invalid_argument("bundle mixes grid specs");
    }
  }
}

PredictionBundle predict_persistence(std::span<const BinaryGrid> history,
                                     const PredictorConfig& cfg, const Pose2D& frame) {
  check_history(history, 1);
  PredictionBundle bundle;
  bundle.frame = frame;
  const OccupancyGrid latest = history.back().to_probabilities();
  bundle.mean_maps.assign(static_cast<std::size_t>(cfg.horizon), latest);
  return bundle;
}

PredictionBundle predict_kinematic(std::span<const BinaryGrid> history,
                                   const OccupancyGrid& local_map,
                                   const PredictorConfig& cfg, const Pose2D& frame) {
  check_history(history, 2);
  const GridSpec& spec = history.front().spec;
  if (cfg.use_static_map && !(local_map.spec == spec))
    throw std::invalid_argument("local map spec does not match the history");

  const OccupancyGrid* map = cfg.use_static_map ? &local_map : nullptr;
  const auto clusters =
      track_dynamic_clusters(history.back(), history[history.size() - 2], map);

  OccupancyGrid base(spec, static_cast<float>(cfg.free_prob));
  if (map)
    for (std::size_t i = 0; i < base.cells.size(); ++i)
      if (map->cells[i] >= 0.5f) base.cells[i] = map->cells[i];

  PredictionBundle bundle;
  bundle.frame = frame;
  bundle.mean_maps.reserve(static_cast<std::size_t>(cfg.horizon));
  for (int t = 1; t <= cfg.horizon; ++t) {
    OccupancyGrid out = base;
    for (const TrackedCluster& cluster : clusters) {
      const long dx = std::lround(static_cast<double>(t) * cluster.vx);
      const long dy = std::lround(static_cast<double>(t) * cluster.vy);
      for (std::size_t idx : cluster.cell_indices) {
        const long col = static_cast<long>(idx % spec.width) + dx;
        const long row = static_cast<long>(idx / spec.width) + dy;
        if (col < 0 || col >= spec.width || row < 0 || row >= spec.height) continue;
        out.at(static_cast<int>(col), static_cast<int>(row)) =
            static_cast<float>(cfg.occupied_prob);
      }
    }
    bundle.mean_maps.push_back(std::move(out));
  }
  return bundle;
}

OccupancyGrid PersistencePredictor::predict_next(std::span<const BinaryGrid> history) const {
  check_history(history, 1);
  return history.back().to_probabilities();
}

OccupancyGrid KinematicPredictor::predict_next(std::span<const BinaryGrid> history) const {
  PredictorConfig cfg = cfg_;
  cfg.horizon = 1;
  return predict_kinematic(history, local_map_, cfg).mean_maps.front();
}

PredictionBundle rollout(const Predictor& predictor, std::span<const BinaryGrid> history,
                         int n, const PredictorConfig& cfg, const Pose2D& frame) {
  if (n < 1) throw std::invalid_argument("rollout horizon must be >= 1");
  check_history(history, 1);
  std::deque<BinaryGrid> window(history.begin(), history.end());
  PredictionBundle bundle;
  bundle.frame = frame;
  bundle.mean_maps.reserve(static_cast<std::size_t>(n));
  for (int t = 0; t < n; ++t) {
    const std::vector<BinaryGrid> snapshot(window.begin(), window.end());
    OccupancyGrid next = predictor.predict_next(snapshot);
    window.push_back(binarize(next, cfg.binarize_threshold));
    window.pop_front();
    bundle.mean_maps.push_back(std::move(next));
  }
  return bundle;
}

void export_samples(const PredictionBundle& bundle, const std::filesystem::path& path) {
  bundle.validate();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot open " + path.string() + " for writing");
  out.write(kBundleMagic, sizeof(kBundleMagic));
  detail::write_spec_fields(out, bundle.mean_maps.front().spec);
  const std::uint32_t horizons = static_cast<std::uint32_t>(bundle.horizons());
  const std::uint32_t m = bundle.samples.empty()
                              ? 1u
                              : static_cast<std::uint32_t>(bundle.samples.front().size());
  detail::write_le<std::uint32_t>(out, horizons);
  detail::write_le<std::uint32_t>(out, m);
  detail::write_le<double>(out, bundle.frame.x);
  detail::write_le<double>(out, bundle.frame.y);
  detail::write_le<double>(out, bundle.frame.theta);
  for (std::uint32_t t = 0; t < horizons; ++t) {
    if (bundle.samples.empty()) {
      for (float v : bundle.mean_maps[t].cells) detail::write_le<float>(out, v);
    } else {
      for (const OccupancyGrid& g : bundle.samples[t])
        for (float v : g.cells) detail::write_le<float>(out, v);
    }
  }
  if (!out) throw FormatError("short write to " + path.string());
}

PredictionBundle import_samples(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kBundleMagic, 4) != 0)
    throw FormatError("not a sample bundle file: " + path.string());
  const GridSpec spec = detail::read_spec_fields(in);
  const std::uint32_t horizons = detail::read_le<std::uint32_t>(in, "bundle horizons");
  const std::uint32_t m = detail::read_le<std::uint32_t>(in, "bundle sample count");
  if (horizons == 0 || m == 0)
    throw FormatError("sample bundle must have at least one horizon and sample");
  PredictionBundle bundle;
  bundle.frame.x = detail::read_le<double>(in, "bundle frame x");
  bundle.frame.y = detail::read_le<double>(in, "bundle frame y");
  bundle.frame.theta = detail::read_le<double>(in, "bundle frame theta");

  bundle.samples.resize(horizons);
  bundle.mean_maps.reserve(horizons);
  std::vector<double> acc(spec.cell_count());
  for (std::uint32_t t = 0; t < horizons; ++t) {
    std::fill(acc.begin(), acc.end(), 0.0);
    bundle.samples[t].reserve(m);
    for (std::uint32_t j = 0; j < m; ++j) {
      OccupancyGrid g(spec);
      g.cells = detail::read_cells(in, spec.cell_count());
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += g.cells[i];
      bundle.samples[t].push_back(std::move(g));
    }
    OccupancyGrid mean(spec);
    for (std::size_t i = 0; i < acc.size(); ++i)
      mean.cells[i] = static_cast<float>(acc[i] / static_cast<double>(m));
    bundle.mean_maps.push_back(std::move(mean));
  }
  if (in.get() != std::char_traits<char>::eof())
    throw FormatError("trailing bytes after samples in " + path.string());
  return bundle;
}

}  // namespace scopekit
