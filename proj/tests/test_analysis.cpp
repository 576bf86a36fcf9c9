#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "chaoscope/analysis.hpp"
#include "chaoscope/generators.hpp"
#include "support.hpp"

using namespace chaoscope;

namespace {

PointCloud cloud_1d(std::vector<double> values) {
  return PointCloud(std::move(values), EmbeddingSpec{1, 1}, "test");
}

PointCloud random_cloud(std::uint64_t seed, std::size_t n, std::size_t m) {
  const auto series = exponential_intervals({1.0, n + m}, Seed{seed});
  return embed(series, {m, 1});
}

}  // namespace

TEST_CASE("correlation integral counts pairs within r") {
  const auto cloud = cloud_1d({0.0, 1.0, 2.0});
  const double radii[] = {1.5};
  const auto curve = correlation_integral(cloud, radii);
  REQUIRE(curve.c_values.size() == 1);
  CHECK(curve.c_values[0] == doctest::Approx(2.0 / 3.0));
  CHECK(curve.pair_counts[0] == 2);
  CHECK(curve.n_pairs == 3);
}

TEST_CASE("correlation integral saturates at the diameter and vanishes below") {
  const auto cloud = random_cloud(5, 300, 3);
  double diameter = 0.0;
  double min_positive = 1e300;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    for (std::size_t j = i + 1; j < cloud.size(); ++j) {
      double d = 0.0;
      for (std::size_t c = 0; c < 3; ++c) {
        d = std::max(d, std::fabs(cloud.coord(i, c) - cloud.coord(j, c)));
      }
      diameter = std::max(diameter, d);
      if (d > 0.0) min_positive = std::min(min_positive, d);
    }
  }
  const double radii[] = {min_positive * 0.5, diameter};
  const auto curve = correlation_integral(cloud, radii);
  CHECK(curve.c_values[0] == 0.0);
  CHECK(curve.c_values[1] == 1.0);
}

TEST_CASE("correlation integral input validation") {
  CHECK_THROWS_AS(correlation_integral(cloud_1d({1.0}), std::vector<double>{0.5}), TooFewPoints);
  CHECK_THROWS_AS(correlation_integral(cloud_1d({1.0, 2.0}), std::vector<double>{}), InvalidConfig);
  CHECK_THROWS_AS(correlation_integral(cloud_1d({1.0, 2.0}), std::vector<double>{0.5, 0.5}),
                  InvalidConfig);
  CorrelationOptions options;
  options.theiler_window = 5;
  CHECK_THROWS_AS(
      correlation_integral(cloud_1d({1.0, 2.0, 3.0}), std::vector<double>{0.5}, options),
      TooFewPoints);
}

TEST_CASE("C(r) is non-decreasing and confined to [0,1]") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto cloud = random_cloud(seed, 200 + 37 * seed, 1 + seed % 4);
    RadiusGridOptions grid_options;
    grid_options.seed = seed;
    const auto grid = default_radius_grid(cloud, grid_options);
    const auto curve = correlation_integral(cloud, grid);
    double prev = 0.0;
    for (double c : curve.c_values) {
      CHECK(c >= prev);
      CHECK(c >= 0.0);
      CHECK(c <= 1.0);
      prev = c;
    }
  }
}

TEST_CASE("pair counting matches the brute-force oracle exactly") {
  for (std::size_t window : {0UL, 1UL, 4UL}) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto cloud = random_cloud(seed, 120 + 16 * seed, 2 + seed % 3);
      RadiusGridOptions grid_options;
      grid_options.seed = seed;
      grid_options.theiler_window = window;
      const auto grid = default_radius_grid(cloud, grid_options);
      CorrelationOptions options;
      options.theiler_window = window;
      const auto curve = correlation_integral(cloud, grid, options);
      const auto oracle = testsupport::brute_force_correlation(cloud, grid, window);
      REQUIRE(curve.n_pairs == oracle.admissible);
      for (std::size_t k = 0; k < grid.size(); ++k) {
        REQUIRE(curve.pair_counts[k] == oracle.counts[k]);
      }
    }
  }
}

TEST_CASE("pair counting is independent of the thread count") {
  const auto cloud = random_cloud(9, 900, 3);
  RadiusGridOptions grid_options;
  grid_options.seed = 9;
  const auto grid = default_radius_grid(cloud, grid_options);

  CorrelationOptions one;
  one.theiler_window = 1;
  CorrelationOptions four = one;
  four.threads = 4;
  const auto a = correlation_integral(cloud, grid, one);
  const auto b = correlation_integral(cloud, grid, four);
  CHECK(a.pair_counts == b.pair_counts);
  CHECK(a.c_values == b.c_values);

  // Subsampled mode: same seed, different thread counts, identical result.
  CorrelationOptions sub = one;
  sub.exact_point_ceiling = 100;
  sub.subsample_pairs = 200000;
  sub.seed = 77;
  CorrelationOptions sub4 = sub;
  sub4.threads = 4;
  const auto c = correlation_integral(cloud, grid, sub);
  const auto d = correlation_integral(cloud, grid, sub4);
  CHECK(c.subsampled);
  CHECK(c.n_pairs == d.n_pairs);
  CHECK(c.pair_counts == d.pair_counts);
}

TEST_CASE("subsampled mode approximates the exact curve") {
  const auto cloud = random_cloud(3, 2000, 3);
  RadiusGridOptions grid_options;
  grid_options.seed = 3;
  grid_options.lo_quantile = 0.01;  // keep every bin well populated
  const auto grid = default_radius_grid(cloud, grid_options);

  CorrelationOptions exact;
  exact.theiler_window = 1;
  const auto truth = correlation_integral(cloud, grid, exact);

  CorrelationOptions sub = exact;
  sub.exact_point_ceiling = 100;
  sub.subsample_pairs = 2000000;
  sub.seed = 123;
  const auto approx = correlation_integral(cloud, grid, sub);
  REQUIRE(approx.subsampled);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    // ~2e6 samples: a few percent relative error on populated bins.
    if (truth.c_values[k] > 0.01) {
      CHECK(approx.c_values[k] == doctest::Approx(truth.c_values[k]).epsilon(0.1));
    }
  }
}

TEST_CASE("dimension fit recovers an exact power law to machine precision") {
  CorrelationCurve curve;
  const std::size_t bins = 20;
  curve.n_pairs = 1;
  for (std::size_t k = 0; k < bins; ++k) {
    const double r = 0.1 * std::pow(10.0, static_cast<double>(k) / (bins - 1));
    curve.radii.push_back(r);
    curve.c_values.push_back(r * r);
    curve.pair_counts.push_back(k);
  }
  const auto estimate = estimate_dimension(curve);
  CHECK(estimate.d2 == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(estimate.fit_residual < 1e-12);

  const auto pinned = estimate_dimension(curve, FitRange{0.2, 0.8});
  CHECK(pinned.d2 == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("dimension fit wants at least three usable radii") {
  CorrelationCurve curve;
  curve.radii = {0.1, 0.2, 0.4, 0.8};
  curve.c_values = {0.0, 0.0, 0.5, 1.0};
  curve.pair_counts = {0, 0, 1, 2};
  curve.n_pairs = 2;
  CHECK_THROWS_AS(estimate_dimension(curve), EmptyScalingRegion);
  CHECK_THROWS_AS(estimate_dimension(curve, FitRange{0.3, 0.9}), EmptyScalingRegion);
}

TEST_CASE("power-of-two scaling leaves the analysis invariant") {
  const auto base = exponential_intervals({1.0, 600}, Seed{21});
  const auto cloud = embed(base, {3, 1});

  std::vector<double> scaled_values;
  for (double v : base.values()) scaled_values.push_back(v * 4.0);
  const auto scaled_cloud = embed(IntervalSeries(scaled_values, "scaled"), {3, 1});

  RadiusGridOptions grid_options;
  grid_options.seed = 21;
  grid_options.theiler_window = 1;
  const auto grid = default_radius_grid(cloud, grid_options);
  std::vector<double> scaled_grid;
  for (double r : grid) scaled_grid.push_back(r * 4.0);

  CorrelationOptions options;
  options.theiler_window = 1;
  const auto curve = correlation_integral(cloud, grid, options);
  const auto scaled_curve = correlation_integral(scaled_cloud, scaled_grid, options);

  CHECK(curve.pair_counts == scaled_curve.pair_counts);
  CHECK(curve.c_values == scaled_curve.c_values);

  const auto fit = estimate_dimension(curve);
  const auto scaled_fit = estimate_dimension(scaled_curve);
  CHECK(scaled_fit.d2 == doctest::Approx(fit.d2).epsilon(1e-12));
  CHECK(scaled_fit.fit_range.r_lo == doctest::Approx(fit.fit_range.r_lo * 4.0).epsilon(1e-12));
}

TEST_CASE("dimension estimates respect the embedding-dimension bound") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const std::size_t m = 1 + seed % 4;
    const auto cloud = random_cloud(seed, 1500, m);
    const auto analysis = analyze_cloud(cloud, {}, seed);
    CHECK(analysis.dimension.d2 >= 0.0);
    CHECK(analysis.dimension.d2 <= static_cast<double>(m) + 0.5);
  }
}

TEST_CASE("permutation surrogates preserve the multiset bitwise") {
  const auto series = exponential_intervals({3.0, 5000}, Seed{8});
  const auto shuffled = permuted_values(series.values(), Seed{99});
  CHECK(shuffled != series.values());

  auto a = series.values();
  auto b = shuffled;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  CHECK(a == b);

  CHECK(permuted_values(series.values(), Seed{99}) == shuffled);
}

TEST_CASE("rank p-value follows the one-sided rank definition") {
  std::vector<double> surrogates(19);
  for (std::size_t i = 0; i < surrogates.size(); ++i) surrogates[i] = 2.0 + 0.01 * i;
  CHECK(rank_p_value(1.5, surrogates) == doctest::Approx(0.05));
  CHECK(rank_p_value(3.5, surrogates) == doctest::Approx(1.0));
  CHECK(rank_p_value(2.005, surrogates) == doctest::Approx(2.0 / 20.0));
}

TEST_CASE("surrogate test validates its inputs") {
  const auto series = logistic_orbit({4.0, 0.41, 200, 100});
  CHECK_THROWS_AS(surrogate_test(series, {3, 1}, 10, 0.05, Seed{1}), InvalidConfig);
  CHECK_THROWS_AS(surrogate_test(series, {3, 1}, 19, 0.0, Seed{1}), InvalidConfig);
}

TEST_CASE("false nearest neighbors rejects degenerate input") {
  std::vector<double> constant(400, 0.7);
  const IntervalSeries series(constant, "flat", Units::dimensionless);
  CHECK_THROWS_AS(false_nearest_neighbors(series, 3, 1), DegenerateSeries);

  const IntervalSeries tiny({0.1, 0.2, 0.3, 0.4}, "tiny", Units::dimensionless);
  CHECK_THROWS_AS(false_nearest_neighbors(tiny, 6, 1), SeriesTooShort);
}

TEST_CASE("false nearest neighbors separates map from noise") {
  // The logistic attractor unfolds by m=2; i.i.d. noise never does.
  // Reference fractions recorded via tools/calibrate.cpp, mode "fnn".
  const auto orbit = logistic_orbit({4.0, 0.41, 2000, 1000});
  const auto map_fnn = false_nearest_neighbors(orbit, 6, 1);
  REQUIRE(map_fnn.size() == 6);
  CHECK(map_fnn[0].dimension == 1);
  for (const auto& point : map_fnn) {
    CHECK(point.fraction >= 0.0);
    CHECK(point.fraction <= 1.0);
    if (point.dimension >= 2) CHECK(point.fraction < 0.05);
  }

  const auto noise =
      uniform_intervals({DistributionConfig::Kind::uniform, 0.5, 0.5, 2000}, Seed{99});
  const auto noise_fnn = false_nearest_neighbors(noise, 6, 1);
  for (const auto& point : noise_fnn) CHECK(point.fraction > 0.2);
}
