#include "scopekit/motion.hpp"

#include <cmath>
#include <stdexcept>

namespace scopekit {

double normalize_angle(double theta) {
  double t = std::fmod(theta + M_PI, 2.0 * M_PI);
  if (t <= 0.0) t += 2.0 * M_PI;
  return t - M_PI;
}

Pose2D compose(const Pose2D& a, const Pose2D& b) {
  const double c = std::cos(a.theta), s = std::sin(a.theta);
  Pose2D out;
  out.x = a.x + c * b.x - s * b.y;
  out.y = a.y + s * b.x + c * b.y;
  out.theta = normalize_angle(a.theta + b.theta);
  return out;
}

Pose2D invert(const Pose2D& a) {
  const double c = std::cos(a.theta), s = std::sin(a.theta);
  Pose2D out;
  out.x = -(c * a.x + s * a.y);
  out.y = -(-s * a.x + c * a.y);
  out.theta = normalize_angle(-a.theta);
  return out;
}

void transform_point(const Pose2D& pose, double px, double py, double& out_x,
                     double& out_y) {
  const double c = std::cos(pose.theta), s = std::sin(pose.theta);
  out_x = pose.x + c * px - s * py;
  out_y = pose.y + s * px + c * py;
}

Pose2D predict_pose(const Pose2D& pose, const Twist2D& twist, double dt) {
  Pose2D out = pose;
  if (std::abs(twist.w) < kOmegaEps) {
    out.x += twist.v * dt * std::cos(pose.theta);
    out.y += twist.v * dt * std::sin(pose.theta);
    out.theta = normalize_angle(pose.theta + twist.w * dt);
    return out;
  }
  const double ratio = twist.v / twist.w;
  out.x += ratio * (std::sin(pose.theta + twist.w * dt) - std::sin(pose.theta));
  out.y -= ratio * (std::cos(pose.theta + twist.w * dt) - std::cos(pose.theta));
  out.theta = normalize_angle(pose.theta + twist.w * dt);
  return out;
}

LidarScan transform_scan(const LidarScan& scan, const Pose2D& scan_pose,
                         const Pose2D& target_frame) {
  const Pose2D rel = compose(invert(target_frame), scan_pose);
  LidarScan out;
  out.angle_min = scan.angle_min;
  out.angle_increment = scan.angle_increment;
  out.range_min = scan.range_min;
  out.range_max = scan.range_max;
  out.origin_x = rel.x;
  out.origin_y = rel.y;
  const std::size_t n = scan.size();
  out.ranges.resize(n);
  out.bearings.resize(n);
  out.hits.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const bool hit = scan.hit(i);
    // Sentinel beams carry a virtual endpoint at range_max so mapping can
    // still carve free space along them.
    const double r = hit ? scan.ranges[i] : scan.range_max;
    const double b = scan.bearing(i);
    double qx, qy;
    transform_point(rel, r * std::cos(b), r * std::sin(b), qx, qy);
    out.ranges[i] = std::hypot(qx, qy);
    out.bearings[i] = std::atan2(qy, qx);
    out.hits[i] = hit ? 1 : 0;
  }
  return out;
}

Pose2D predicted_frame(std::span<const DataTuple> history, int horizon_steps,
                       double period) {
  if (history.empty())
    throw std::invalid_argument("compensate_history: empty history");
  const DataTuple& latest = history.back();
  return predict_pose(latest.pose, latest.twist,
                      static_cast<double>(horizon_steps) * period);
}

std::vector<LidarScan> compensate_history(std::span<const DataTuple> history,
                                          int horizon_steps, double period) {
  const Pose2D frame = predicted_frame(history, horizon_steps, period);
  std::vector<LidarScan> out;
  out.reserve(history.size());
  for (const DataTuple& record : history)
    out.push_back(transform_scan(record.scan, record.pose, frame));
  return out;
}

}  // namespace scopekit
