#pragma once

#include <span>
#include <vector>

#include "scopekit/grid.hpp"

namespace scopekit {

struct Pose2D {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;  // normalized to (-pi, pi] by all producing operations
};

struct Twist2D {
  double v = 0.0;  // m/s forward
  double w = 0.0;  // rad/s
};

// One synchronized odometry + lidar record.
struct DataTuple {
  double stamp = 0.0;
  Pose2D pose;
  Twist2D twist;
  LidarScan scan;
};

inline constexpr double kNominalPeriod = 0.1;  // 10 Hz sampling
inline constexpr int kHistoryLength = 10;      // tau: history is tau+1 records

double normalize_angle(double theta);  // -> (-pi, pi]

// SE(2) group product and inverse.
Pose2D compose(const Pose2D& a, const Pose2D& b);
Pose2D invert(const Pose2D& a);

// Point p (in the pose's frame) expressed in the parent frame.
void transform_point(const Pose2D& pose, double px, double py, double& out_x, double& out_y);

// Exact unicycle integration under constant twist; |w| below kOmegaEps uses
// the straight-line limit.
inline constexpr double kOmegaEps = 1e-6;
Pose2D predict_pose(const Pose2D& pose, const Twist2D& twist, double dt);

// Ego-motion compensation k(.): predicts the pose R at horizon_steps*period
// ahead of the newest record via the constant-velocity model and re-expresses
// every historical scan in frame R.  Transformed beams keep their hit flags;
// endpoints outside the grid extent are retained (clipping happens later).
std::vector<LidarScan> compensate_history(std::span<const DataTuple> history,
                                          int horizon_steps,
                                          double period = kNominalPeriod);

// The frame R used by compensate_history, exposed for truth generation.
Pose2D predicted_frame(std::span<const DataTuple> history, int horizon_steps,
                       double period = kNominalPeriod);

// One scan re-expressed in the given frame (both poses share one odometry
// frame).  Building block of compensate_history.
LidarScan transform_scan(const LidarScan& scan, const Pose2D& scan_pose,
                         const Pose2D& target_frame);

}  // namespace scopekit
