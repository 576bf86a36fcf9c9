// Regenerates the frozen reference numbers asserted by the test suite:
// dimension estimates, surrogate p-values per seed, thinning robustness
// p-values, FNN fractions, KS outcomes and demo artifact hashes. Run the
// relevant mode after changing analysis internals and update the tests
// from its output.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "chaoscope/analysis.hpp"
#include "chaoscope/detector.hpp"
#include "chaoscope/generators.hpp"
#include "chaoscope/pipeline.hpp"
#include "chaoscope/rng.hpp"

using namespace chaoscope;

namespace {

double ks_statistic_exponential(std::vector<double> sample, double rate) {
  std::sort(sample.begin(), sample.end());
  const auto n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = 1.0 - std::exp(-rate * sample[i]);
    d = std::max(d, f - static_cast<double>(i) / n);
    d = std::max(d, static_cast<double>(i + 1) / n - f);
  }
  return d;
}

double ks_critical_1pct(std::size_t n) {
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  return 1.6276 / (sqrt_n + 0.12 + 0.11 / sqrt_n);
}

void dimensions() {
  std::printf("-- dimension estimates (m=3, tau=1, n=10^4) --\n");
  {
    const auto series = logistic_orbit({4.0, 0.41, 10000, 1000});
    const auto analysis = analyze_cloud(embed(series, {3, 1}), {}, 1);
    std::printf("logistic    d2=%.6f fit=[%.6g, %.6g] residual=%.4g pairs=%llu\n",
                analysis.dimension.d2, analysis.dimension.fit_range.r_lo,
                analysis.dimension.fit_range.r_hi, analysis.dimension.fit_residual,
                static_cast<unsigned long long>(analysis.dimension.n_pairs_in_range));
  }
  for (std::uint64_t seed : {7ULL, 11ULL, 13ULL}) {
    const auto series = exponential_intervals({1.0, 10000}, Seed{seed});
    const auto analysis = analyze_cloud(embed(series, {3, 1}), {}, seed);
    std::printf("exponential seed=%llu d2=%.6f fit=[%.6g, %.6g] residual=%.4g\n",
                static_cast<unsigned long long>(seed), analysis.dimension.d2,
                analysis.dimension.fit_range.r_lo, analysis.dimension.fit_range.r_hi,
                analysis.dimension.fit_residual);
  }
  {
    const auto series = logistic_orbit({4.0, 0.41, 10000, 1000});
    const auto analysis = analyze_cloud(embed(series, {2, 1}), {}, 1);
    std::printf("logistic m=2 d2=%.6f\n", analysis.dimension.d2);
  }
}

void surrogates() {
  std::printf("-- surrogate tests (n=4000, S=19, alpha=0.05) --\n");
  {
    const auto series = logistic_orbit({4.0, 0.41, 4000, 1000});
    const auto report = surrogate_test(series, {3, 1}, 19, 0.05, Seed{42});
    std::printf("logistic seed=42: observed=%.4f p=%.4f verdict=%s\n", report.observed_stat,
                report.p_value,
                report.verdict == Verdict::structure_detected ? "structure" : "none");
  }
  std::printf("uniform-random, 20 seeds:\n");
  int null_ok = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto series =
        uniform_intervals({DistributionConfig::Kind::uniform, 0.5, 0.5, 4000}, Seed{seed});
    const auto report = surrogate_test(series, {3, 1}, 19, 0.05, Seed{seed});
    const bool none = report.verdict == Verdict::no_structure;
    null_ok += none ? 1 : 0;
    std::printf("  seed=%2llu observed=%.4f p=%.4f %s\n",
                static_cast<unsigned long long>(seed), report.observed_stat, report.p_value,
                none ? "no_structure" : "STRUCTURE");
  }
  std::printf("uniform no_structure count: %d/20\n", null_ok);
  std::printf("exponential, 20 seeds:\n");
  null_ok = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto series = exponential_intervals({1.0, 4000}, Seed{seed});
    const auto report = surrogate_test(series, {3, 1}, 19, 0.05, Seed{seed});
    const bool none = report.verdict == Verdict::no_structure;
    null_ok += none ? 1 : 0;
    std::printf("  seed=%2llu observed=%.4f p=%.4f %s\n",
                static_cast<unsigned long long>(seed), report.observed_stat, report.p_value,
                none ? "no_structure" : "STRUCTURE");
  }
  std::printf("exponential no_structure count: %d/20\n", null_ok);
}

void thinning() {
  std::printf("-- thinning robustness (logistic intervals, n=4000, S=19) --\n");
  for (std::uint64_t seed : {3ULL, 5ULL, 9ULL, 17ULL}) {
    std::printf("seed=%llu:", static_cast<unsigned long long>(seed));
    for (double p : {1.0, 0.8, 0.5}) {
      const auto orbit = logistic_orbit({4.0, 0.41, 4000, 1000});
      const auto physical = orbit.as_seconds("logistic-as-seconds");
      auto stream = timestamps_from_intervals(physical);
      if (p < 1.0) stream = thin(stream, p, Seed{rng::derive_stream(seed, 7)});
      const auto intervals = intervals_from_timestamps(stream);
      const auto report = surrogate_test(intervals, {3, 1}, 19, 0.05, Seed{seed});
      std::printf("  p=%.1f -> pval=%.4f (d2=%.3f)", p, report.p_value, report.observed_stat);
    }
    std::printf("\n");
  }
}

void fnn() {
  std::printf("-- false nearest neighbors (tau=1, threshold 15) --\n");
  {
    const auto series = logistic_orbit({4.0, 0.41, 2000, 1000});
    std::printf("logistic n=2000:");
    for (const auto& point : false_nearest_neighbors(series, 6, 1)) {
      std::printf("  m=%zu:%.4f", point.dimension, point.fraction);
    }
    std::printf("\n");
  }
  {
    const auto series =
        uniform_intervals({DistributionConfig::Kind::uniform, 0.5, 0.5, 2000}, Seed{99});
    std::printf("uniform  n=2000:");
    for (const auto& point : false_nearest_neighbors(series, 6, 1)) {
      std::printf("  m=%zu:%.4f", point.dimension, point.fraction);
    }
    std::printf("\n");
  }
}

void ks() {
  std::printf("-- KS checks at 1%% critical value --\n");
  {
    const std::size_t n = 10000;
    const double critical = ks_critical_1pct(n);
    std::printf("exponential generator, n=10^4, critical=%.6f\n", critical);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const auto series = exponential_intervals({2.0, n}, Seed{seed});
      const double d = ks_statistic_exponential(series.values(), 2.0);
      std::printf("  seed=%2llu D=%.6f %s\n", static_cast<unsigned long long>(seed), d,
                  d < critical ? "pass" : "FAIL");
    }
  }
  {
    std::printf("thinning theorem: Exp(2) stream thinned at p=0.35 vs Exp(0.7), n=10^4 kept\n");
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL, 4ULL, 5ULL}) {
      const std::size_t n_raw = 30000;
      const auto raw = exponential_intervals({2.0, n_raw}, Seed{seed});
      const auto kept = thin(timestamps_from_intervals(raw), 0.35, Seed{seed + 1000});
      const auto intervals = intervals_from_timestamps(kept);
      const double d = ks_statistic_exponential(intervals.values(), 0.7);
      const double critical = ks_critical_1pct(intervals.size());
      std::printf("  seed=%llu kept=%zu D=%.6f crit=%.6f %s\n",
                  static_cast<unsigned long long>(seed), intervals.size(), d, critical,
                  d < critical ? "pass" : "FAIL");
    }
  }
  {
    std::printf("superposition: Exp(1.5) + background 0.5 vs Exp(2.0)\n");
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL, 4ULL, 5ULL}) {
      const auto base = exponential_intervals({1.5, 15000}, Seed{seed});
      const auto stream = timestamps_from_intervals(base);
      const auto merged = add_background(stream, 0.5, stream.last(), Seed{seed + 2000});
      const auto intervals = intervals_from_timestamps(merged.times);
      const double d = ks_statistic_exponential(intervals.values(), 2.0);
      const double critical = ks_critical_1pct(intervals.size());
      std::printf("  seed=%llu n=%zu D=%.6f crit=%.6f %s\n",
                  static_cast<unsigned long long>(seed), intervals.size(), d, critical,
                  d < critical ? "pass" : "FAIL");
    }
  }
}

void hashes() {
  std::printf("-- demo artifact hashes --\n");
  const auto root = std::filesystem::temp_directory_path() / "chaoscope-calibrate";
  std::filesystem::remove_all(root);
  for (const auto& [name, config] : demo_experiments()) {
    ExperimentSpec spec = parse_experiment(config);
    spec.out_dir = root / name;
    const auto result = run_pipeline(spec);
    for (const auto& artifact : result.artifacts) {
      std::printf("%s %s %s\n", name.c_str(), artifact.path.string().c_str(),
                  artifact.content_hash.c_str());
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  const std::string mode = argc > 1 ? argv[1] : "all";
  if (mode == "dimensions" || mode == "all") dimensions();
  if (mode == "surrogates" || mode == "all") surrogates();
  if (mode == "thinning" || mode == "all") thinning();
  if (mode == "fnn" || mode == "all") fnn();
  if (mode == "ks" || mode == "all") ks();
  if (mode == "hashes" || mode == "all") hashes();
  return 0;
}
