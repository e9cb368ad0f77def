#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "scopekit/grid.hpp"
#include "scopekit/motion.hpp"
#include "scopekit/predict.hpp"
#include "scopekit/rng.hpp"

namespace scopekit {

struct Segment {
  double x1 = 0.0, y1 = 0.0, x2 = 0.0, y2 = 0.0;
};

struct Pedestrian {
  double x = 0.0, y = 0.0;
  double vx = 0.0, vy = 0.0;
  double radius = 0.3;
};

struct WorldModel {
  std::vector<Segment> walls;
  std::vector<Pedestrian> pedestrians;
  double x_min = -10.0, x_max = 10.0;
  double y_min = -10.0, y_max = 10.0;
};

// 270 degree scanner, 0.25 degree resolution -> 1081 beams.
struct SensorConfig {
  double fov = 270.0 * M_PI / 180.0;
  double angular_resolution = 0.25 * M_PI / 180.0;
  double range_min = 0.1;
  double range_max = 30.0;
  double noise_sigma = 0.01;  // m, applied before clamping; 0 disables
  double rate = 10.0;         // Hz

  int beam_count() const;
  void validate() const;  // fov/resolution must give an integer beam count
};

// Advances pedestrians by v*dt with specular reflection off the bounds and
// wall segments.  Deterministic.
WorldModel step_world(WorldModel world, double dt);

// Per-beam nearest hit against walls and pedestrian discs.  rng adds Gaussian
// range noise; pass nullptr for exact geometry.  Misses read range_max.
LidarScan raycast(const WorldModel& world, const Pose2D& pose, const SensorConfig& cfg,
                  Rng* rng);

struct TwistSegment {
  double duration = 0.0;
  Twist2D twist;
};

// Scripted constant-twist trajectory sampled at the sensor rate; throws if
// the robot leaves the world bounds (the message names the tick).
std::vector<DataTuple> generate_dataset(WorldModel world, const Pose2D& start,
                                        std::span<const TwistSegment> profile,
                                        const SensorConfig& cfg, std::uint64_t seed,
                                        double duration);

// Newline-delimited records with fixed 9-significant-digit float formatting,
// so identical inputs produce byte-identical files.
void write_dataset(std::span<const DataTuple> records, const std::filesystem::path& path);
std::vector<DataTuple> read_dataset(const std::filesystem::path& path);

// Ground-truth OGM: the future world ray-cast (noise-free) from the frame R.
BinaryGrid truth_ogm(const WorldModel& future_world, const Pose2D& frame,
                     const SensorConfig& cfg, const GridSpec& spec);

struct FutureSampleOptions {
  int horizons = 10;
  int samples = 16;               // M
  double vel_noise_sigma = 0.3;   // m/s perturbation of pedestrian velocities
  double soft_sigma = 1.0;        // cells; Gaussian soft-render of each sample
  double period = kNominalPeriod;
};

// Stochastic future OGM samples: each of the M replicas perturbs every
// pedestrian's velocity once, rolls the world forward, and ray-casts the
// horizons from the constant-velocity frame R.  Binary sample maps are
// soft-rendered with a Gaussian kernel so cell values are continuous, which
// is what the uncertainty fitting consumes.
PredictionBundle sample_future_bundle(const WorldModel& world, const Pose2D& robot_pose,
                                      const Twist2D& robot_twist, const SensorConfig& cfg,
                                      const GridSpec& spec, const FutureSampleOptions& opts,
                                      Rng& rng);

// Gaussian blur of a binary grid into [0,1] probabilities (normalized kernel).
OccupancyGrid soft_render(const BinaryGrid& grid, double sigma_cells);

}  // namespace scopekit
