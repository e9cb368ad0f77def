#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace scopekit {

// All randomness flows through a caller-supplied generator so that runs are
// reproducible from a single seed.  The variate transforms below are written
// out explicitly because std::*_distribution is implementation-defined and
// would break byte-identical outputs across standard libraries.
using Rng = std::mt19937_64;

// Uniform on [0, 1) with 53-bit resolution.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform on (0, 1): rejects exact zeros so log/tan transforms stay finite.
inline double uniform_open01(Rng& rng) {
  double u;
  do {
    u = uniform01(rng);
  } while (u <= 0.0);
  return u;
}

inline double uniform_range(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

// Standard normal via Box-Muller (one value per call, no cached state).
inline double gaussian(Rng& rng) {
  const double u1 = uniform_open01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

inline double gaussian(Rng& rng, double mean, double sigma) {
  return mean + sigma * gaussian(rng);
}

}  // namespace scopekit
