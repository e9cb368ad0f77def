#pragma once

#include <filesystem>
#include <memory>
#include <span>
#include <vector>

#include "scopekit/grid.hpp"
#include "scopekit/motion.hpp"

namespace scopekit {

enum class PredictorKind { persistence, kinematic, external };

struct PredictorConfig {
  PredictorKind kind = PredictorKind::kinematic;
  int horizon = 10;      // n
  int history_len = 10;  // tau
  bool use_static_map = true;  // split static/dynamic against the local map
  double period = kNominalPeriod;
  // Calibrated output probabilities for predicted-occupied / elsewhere.
  double occupied_prob = 0.9;
  double free_prob = 0.05;
  double binarize_threshold = kFreeThreshold;  // feedback threshold in rollouts
};

// Multi-horizon prediction output.  mean_maps[T-1] is the expected OGM at
// horizon T; samples[T-1], when present, holds M stochastic OGMs per horizon.
struct PredictionBundle {
  std::vector<OccupancyGrid> mean_maps;
  std::vector<std::vector<OccupancyGrid>> samples;  // empty when deterministic
  Pose2D frame;  // the predicted pose R the grids live in

  int horizons() const { return static_cast<int>(mean_maps.size()); }
  int sample_count() const {
    return samples.empty() ? 0 : static_cast<int>(samples.front().size());
  }
  void validate() const;  // one spec everywhere, uniform sample counts
};

// Baseline h(.): the future equals the latest compensated observation.
PredictionBundle predict_persistence(std::span<const BinaryGrid> history,
                                     const PredictorConfig& cfg,
                                     const Pose2D& frame = {});

// Kinematic baseline: cells occupied now but free in the local map are
// dynamic; clusters of them translate with the centroid velocity estimated
// from the last two frames; static cells persist from the local map.
PredictionBundle predict_kinematic(std::span<const BinaryGrid> history,
                                   const OccupancyGrid& local_map,
                                   const PredictorConfig& cfg,
                                   const Pose2D& frame = {});

// Single-step predictor interface used by the autoregressive rollout.
class Predictor {
 public:
  virtual ~Predictor() = default;
  virtual OccupancyGrid predict_next(std::span<const BinaryGrid> history) const = 0;
};

class PersistencePredictor final : public Predictor {
 public:
  explicit PersistencePredictor(PredictorConfig cfg = {}) : cfg_(cfg) {}
  OccupancyGrid predict_next(std::span<const BinaryGrid> history) const override;

 private:
  PredictorConfig cfg_;
};

class KinematicPredictor final : public Predictor {
 public:
  KinematicPredictor(OccupancyGrid local_map, PredictorConfig cfg = {})
      : local_map_(std::move(local_map)), cfg_(cfg) {}
  OccupancyGrid predict_next(std::span<const BinaryGrid> history) const override;

 private:
  OccupancyGrid local_map_;
  PredictorConfig cfg_;
};

// Feeds each one-step prediction back (binarized, oldest frame dropped) to
// reach horizon n.
PredictionBundle rollout(const Predictor& predictor, std::span<const BinaryGrid> history,
                         int n, const PredictorConfig& cfg, const Pose2D& frame = {});

// Sample-bundle file: "SKB1" magic, grid spec, horizons n, sample count M,
// frame pose, then n*M grids in horizon-major order (same f32 cell encoding
// as the OGM format).  Import recomputes mean maps as the cellwise average.
void export_samples(const PredictionBundle& bundle, const std::filesystem::path& path);
PredictionBundle import_samples(const std::filesystem::path& path);

}  // namespace scopekit
