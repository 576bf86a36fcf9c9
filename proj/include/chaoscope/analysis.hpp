#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "chaoscope/generators.hpp"
#include "chaoscope/series.hpp"

namespace chaoscope {

// Pair-counting controls. Distances are max-norm throughout. Pairs closer
// in time than the Theiler window (|i - j| <= window) are excluded from
// both numerator and denominator so trajectory autocorrelation cannot
// masquerade as geometry; with window = 0 this reduces to the plain
// all-pairs correlation sum.
struct CorrelationOptions {
  std::size_t theiler_window = 0;
  std::size_t threads = 1;
  // Exact counting up to this many points; above it, pairs are subsampled.
  std::size_t exact_point_ceiling = 20000;
  // Number of candidate pair draws in subsampled mode. Pairs derive from
  // the seed and a counter, never from thread scheduling.
  std::uint64_t subsample_pairs = 100'000'000;
  std::uint64_t seed = 0;
};

struct CorrelationCurve {
  std::vector<double> radii;                // strictly increasing, > 0
  std::vector<double> c_values;             // C(r), non-decreasing, in [0,1]
  std::vector<std::uint64_t> pair_counts;   // cumulative pairs with distance <= radii[k]
  std::uint64_t n_pairs = 0;                // denominator (admissible or sampled pairs)
  std::size_t n_points = 0;
  std::size_t embedding_dim = 0;
  std::size_t theiler_window = 0;
  bool subsampled = false;
};

CorrelationCurve correlation_integral(const PointCloud& cloud, std::span<const double> radii,
                                      const CorrelationOptions& options = {});

// Controls for the default logarithmic radius grid. Quantiles are taken
// over a seeded sample of admissible pair distances; the lower quantile
// sits deep in the tail so the grid reaches the genuine scaling region
// instead of starting where the curve already saturates.
struct RadiusGridOptions {
  std::size_t count = 40;
  double lo_quantile = 1e-4;
  double hi_quantile = 0.99;
  std::uint64_t sample_pairs = 100'000;
  std::uint64_t seed = 0;
  std::size_t theiler_window = 0;
};

std::vector<double> default_radius_grid(const PointCloud& cloud,
                                        const RadiusGridOptions& options = {});

struct FitRange {
  double r_lo = 0.0;
  double r_hi = 0.0;
};

struct DimensionEstimate {
  double d2 = 0.0;
  FitRange fit_range;
  double fit_residual = 0.0;            // RMS of the log-log fit residuals
  std::uint64_t n_pairs_in_range = 0;   // pairs with r_lo < distance <= r_hi
};

// Least-squares slope of log C against log r. Without an explicit range,
// picks the longest window of consecutive radii whose local slopes stay
// within 10% of the window median (relaxing 20/40/80% if no window of at
// least three radii qualifies).
DimensionEstimate estimate_dimension(const CorrelationCurve& curve,
                                     std::optional<FitRange> range = std::nullopt);

struct FnnPoint {
  std::size_t dimension = 0;
  double fraction = 0.0;
};

// Kennel-style false-nearest-neighbor fractions for m = 1..m_max, max-norm,
// lag-exclusion window w = tau, distance-ratio threshold (default 15).
std::vector<FnnPoint> false_nearest_neighbors(const IntervalSeries& series, std::size_t m_max,
                                              std::size_t tau, double threshold = 15.0);

enum class Verdict { structure_detected, no_structure };

struct SurrogateReport {
  double observed_stat = 0.0;
  std::vector<double> surrogate_stats;
  double p_value = 1.0;
  Verdict verdict = Verdict::no_structure;
  double alpha = 0.05;
};

// End-to-end knobs shared by the pipeline and the surrogate test.
struct AnalysisOptions {
  std::size_t radius_count = 40;
  long theiler_window = -1;  // -1: use the embedding delay
  std::size_t threads = 1;
  std::size_t exact_point_ceiling = 20000;
  std::uint64_t subsample_pairs = 100'000'000;
};

struct CloudAnalysis {
  CorrelationCurve curve;
  DimensionEstimate dimension;
};

// Auto radius grid + correlation integral + dimension fit for one cloud.
CloudAnalysis analyze_cloud(const PointCloud& cloud, const AnalysisOptions& options = {},
                            std::uint64_t seed = 0);

// Fisher-Yates shuffle of the values under the given seed; preserves the
// multiset exactly, destroys temporal order.
std::vector<double> permuted_values(const std::vector<double>& values, Seed seed);

// One-sided (low tail) rank p-value of the observed statistic among the
// surrogate ensemble: p = (1 + #{stats <= observed}) / (S + 1).
double rank_p_value(double observed, std::span<const double> surrogate_stats);

// Permutation-surrogate test with the correlation dimension as the
// discriminating statistic: a chaotic attractor has lower D2 than the
// i.i.d. shuffles of the same intervals.
SurrogateReport surrogate_test(const IntervalSeries& series, const EmbeddingSpec& spec,
                               std::size_t surrogate_count, double alpha, Seed seed,
                               const AnalysisOptions& options = {});

}  // namespace chaoscope
