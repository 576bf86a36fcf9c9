#pragma once

// Shared test helpers: an independent brute-force correlation-sum oracle,
// a Kolmogorov-Smirnov check, and small random-input generators. Test-only;
// deliberately kept independent of the library's pair-counting path.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "chaoscope/rng.hpp"
#include "chaoscope/series.hpp"

namespace testsupport {

struct BruteForceCurve {
  std::vector<std::uint64_t> counts;  // pairs with distance <= radii[k]
  std::uint64_t admissible = 0;
};

// O(M^2) pair counting, one full scan per radius, no histogram tricks.
inline BruteForceCurve brute_force_correlation(const chaoscope::PointCloud& cloud,
                                               const std::vector<double>& radii,
                                               std::size_t theiler_window) {
  BruteForceCurve out;
  out.counts.assign(radii.size(), 0);
  const std::size_t m = cloud.size();
  for (std::size_t k = 0; k < radii.size(); ++k) {
    std::uint64_t hits = 0;
    std::uint64_t admissible = 0;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        if (j - i <= theiler_window) continue;
        ++admissible;
        double d = 0.0;
        for (std::size_t c = 0; c < cloud.dimension(); ++c) {
          d = std::max(d, std::fabs(cloud.coord(i, c) - cloud.coord(j, c)));
        }
        if (d <= radii[k]) ++hits;
      }
    }
    out.counts[k] = hits;
    out.admissible = admissible;
  }
  return out;
}

// One-sample KS statistic against an arbitrary CDF.
template <typename Cdf>
double ks_statistic(std::vector<double> sample, Cdf cdf) {
  std::sort(sample.begin(), sample.end());
  const auto n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max(d, f - static_cast<double>(i) / n);
    d = std::max(d, static_cast<double>(i + 1) / n - f);
  }
  return d;
}

inline double exponential_cdf(double x, double rate) { return 1.0 - std::exp(-rate * x); }

// Asymptotic 1% critical value of the one-sample KS statistic.
inline double ks_critical_1pct(std::size_t n) {
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  return 1.6276 / (sqrt_n + 0.12 + 0.11 / sqrt_n);
}

// Positive random series for property tests.
inline std::vector<double> random_positive_values(chaoscope::rng::Xoshiro256pp& gen,
                                                  std::size_t n) {
  std::vector<double> values(n);
  for (auto& v : values) v = 0.05 + gen.uniform01() * 10.0;
  return values;
}

}  // namespace testsupport
