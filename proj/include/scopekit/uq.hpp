#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "scopekit/grid.hpp"
#include "scopekit/predict.hpp"
#include "scopekit/rng.hpp"

namespace scopekit {

// Eight-parameter mixture of a truncated normal on [a,b] and a skew-Cauchy:
//   f(x) = w * TN(x; mu_tn, sigma_tn, a, b) + (1-w) * SC(x; mu_sc, sigma_sc, lambda)
// where the skew-Cauchy uses side-dependent scale sigma_sc*(1 + lambda*sign(x-mu_sc)).
struct MixtureParams {
  double w = 0.5;
  double a = 0.0;
  double b = 1.0;
  double mu_tn = 0.5;
  double sigma_tn = 0.1;
  double lambda = 0.0;
  double mu_sc = 0.5;
  double sigma_sc = 0.1;

  void validate() const;  // throws std::invalid_argument
};

double mixture_pdf(const MixtureParams& xi, double x);
double mixture_cdf(const MixtureParams& xi, double x);

// Inverts the CDF by bracketed bisection (tolerance 1e-10); p must be in (0,1).
double mixture_icdf(const MixtureParams& xi, double p);

// Mixture mass on [0,1] (closed form via the CDF).
double restricted_mass(const MixtureParams& xi);

// Shannon entropy of a Bernoulli(p), in nats.
double bernoulli_entropy(double p);

struct FitResult {
  MixtureParams params;
  double residual = 0.0;   // sum of squared density errors at the histogram centers
  int start_index = -1;    // which multi-start won
  bool degenerate = false; // a scale parameter finished at its lower bound
};

inline constexpr std::size_t kFitMinValues = 1000;
inline constexpr int kFitHistogramBins = 100;

// Least-squares mixture fit: values are histogrammed into 100 equal bins on
// [0,1], normalized to a density, and the squared pdf error is minimized by
// box-constrained Levenberg-Marquardt from four starts (balanced wide,
// balanced narrow, pure truncated-normal, pure skew-Cauchy).
// Throws std::invalid_argument below kFitMinValues and FitError when no start
// converges.
FitResult fit_mixture(std::span<const double> values);

// Statistics of the mixture restricted to [0,1] and renormalized.
struct EntryStats {
  double mean = 0.0;
  double median = 0.0;
  double mode = 0.0;
  double entropy = 0.0;  // E[H(c)] under the restricted law, nats
};

EntryStats derive_stats(const MixtureParams& xi);

// Standard deviation of the restricted law (alternative uncertainty measure).
double restricted_stddev(const MixtureParams& xi);

struct TableEntry {
  MixtureParams params;
  EntryStats stats;
  bool present = false;
  bool degenerate = false;
};

// Prediction-uncertainty statistics lookup table: fitted mixture parameters
// and derived statistics per (predicted-value bin, horizon).
class UqTable {
 public:
  static constexpr int kBins = 15;
  static constexpr int kHorizons = 10;

  UqTable() : entries_(kBins * kHorizons) {}

  static int bin_of(double c_hat);  // floor(c_hat*15), 1.0 clamps into bin 14

  TableEntry& entry(int bin, int horizon);              // horizon in [1,10]
  const TableEntry& entry(int bin, int horizon) const;

  // Total query: absent bins fall back to the nearest populated bin at the
  // same horizon (ties resolve to the lower bin).  Throws std::runtime_error
  // when the horizon has no populated entry at all.
  const TableEntry& lookup(double c_hat, int horizon) const;

  bool fully_populated() const;

  // Versioned JSON file; doubles survive a save/load round trip bit-exactly.
  void save(const std::filesystem::path& path) const;
  static UqTable load(const std::filesystem::path& path);

  bool operator==(const UqTable&) const;

 private:
  std::vector<TableEntry> entries_;
};

struct TableBuildOptions {
  std::size_t min_pool = kFitMinValues;  // smaller pools are marked absent
  std::size_t pool_cap = 50000;          // per-(bin,horizon) cap, scan order
};

// Pools sample values per (mean-value bin, horizon) across bundles and fits
// each pool.  Bundles must carry samples; fits run in parallel under the
// SCOPE_KIT_THREADS budget.
UqTable build_table(std::span<const PredictionBundle> bundles,
                    const TableBuildOptions& opts = {});

// Draws one occupancy value from the entry for (c_hat, horizon): inverse-CDF
// sampling restricted to [0,1] by rejection (100 tries, then clamp).
double sample_cell(const UqTable& table, double c_hat, int horizon, Rng& rng);

// Per-cell expected Bernoulli entropy (nats) of the mean map under the table.
std::vector<double> entropy_map(const OccupancyGrid& mean_map, const UqTable& table,
                                int horizon);
double entropy_scalar(const OccupancyGrid& mean_map, const UqTable& table, int horizon);

// Monte-Carlo entropy estimate from sample OGMs at one horizon; probabilities
// are clamped to [1e-6, 1-1e-6] before the logs.  Normalized per cell.
double entropy_mc(std::span<const OccupancyGrid> samples);

}  // namespace scopekit
