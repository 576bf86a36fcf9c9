#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "chaoscope/generators.hpp"
#include "support.hpp"

using namespace chaoscope;

TEST_CASE("logistic orbit matches direct iteration") {
  const auto orbit = logistic_orbit({4.0, 0.2, 3, 0});
  REQUIRE(orbit.size() == 3);
  CHECK(orbit[0] == doctest::Approx(0.64).epsilon(1e-15));
  CHECK(orbit[1] == doctest::Approx(0.9216).epsilon(1e-15));
  CHECK(orbit[2] == doctest::Approx(0.28901376).epsilon(1e-15));
  CHECK(orbit.units() == Units::dimensionless);
}

TEST_CASE("logistic fixed point and absorbing zero") {
  const auto fixed = logistic_orbit({4.0, 0.75, 3, 0});
  CHECK(fixed[0] == 0.75);
  CHECK(fixed[1] == 0.75);
  CHECK(fixed[2] == 0.75);

  const auto absorbed = logistic_orbit({4.0, 0.5, 3, 0});
  CHECK(absorbed[0] == 1.0);
  CHECK(absorbed[1] == 0.0);
  CHECK(absorbed[2] == 0.0);
}

TEST_CASE("logistic burn-in discards leading iterates") {
  const auto full = logistic_orbit({4.0, 0.2, 5, 0});
  const auto burned = logistic_orbit({4.0, 0.2, 3, 2});
  CHECK(burned[0] == full[2]);
  CHECK(burned[1] == full[3]);
  CHECK(burned[2] == full[4]);
}

TEST_CASE("logistic config validation") {
  CHECK_THROWS_AS(logistic_orbit({4.5, 0.2, 10, 0}), InvalidConfig);
  CHECK_THROWS_AS(logistic_orbit({-0.1, 0.2, 10, 0}), InvalidConfig);
  CHECK_THROWS_AS(logistic_orbit({4.0, 1.2, 10, 0}), InvalidConfig);
  CHECK_THROWS_AS(logistic_orbit({4.0, 0.2, 0, 0}), InvalidConfig);
}

TEST_CASE("logistic orbits stay confined to [0,1]") {
  rng::Xoshiro256pp gen(555);
  std::size_t total = 0;
  while (total < 1000000) {
    const double k = gen.uniform01() * 4.0;
    const double x0 = gen.uniform01();
    const auto orbit = logistic_orbit({k, x0, 50000, 0});
    for (double v : orbit.values()) {
      REQUIRE(v >= 0.0);
      REQUIRE(v <= 1.0);
    }
    total += orbit.size();
  }
}

TEST_CASE("exponential inverse CDF") {
  CHECK(exponential_quantile(std::exp(-1.0), 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(exponential_quantile(1.0, 2.0) == 0.0);
  CHECK_THROWS_AS(exponential_quantile(0.0, 1.0), InvalidConfig);
  CHECK_THROWS_AS(exponential_quantile(0.5, 0.0), InvalidConfig);
}

TEST_CASE("exponential intervals: mean, determinism, positivity") {
  const auto series = exponential_intervals({2.0, 100000}, Seed{42});
  const double mean = std::accumulate(series.values().begin(), series.values().end(), 0.0) /
                      static_cast<double>(series.size());
  // CLT: sd of the mean is 0.5/sqrt(1e5) ~ 0.0016, so 1% of 0.5 is >3 sigma.
  CHECK(std::fabs(mean - 0.5) < 0.005);

  const auto again = exponential_intervals({2.0, 100000}, Seed{42});
  CHECK(series.values() == again.values());

  for (double v : series.values()) REQUIRE(v > 0.0);

  CHECK_THROWS_AS(exponential_intervals({0.0, 10}, Seed{1}), InvalidConfig);
  CHECK_THROWS_AS(exponential_intervals({1.0, 0}, Seed{1}), InvalidConfig);
}

TEST_CASE("exponential intervals pass a KS test against their own law") {
  // 1% critical value; fixed seeds recorded as passing when the numbers
  // were frozen (see tools/calibrate.cpp, mode "ks").
  const std::size_t n = 10000;
  const double critical = testsupport::ks_critical_1pct(n);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto series = exponential_intervals({2.0, n}, Seed{seed});
    const double d = testsupport::ks_statistic(
        series.values(), [](double x) { return testsupport::exponential_cdf(x, 2.0); });
    CHECK_MESSAGE(d < critical, "seed ", seed, " D=", d, " critical=", critical);
  }
}

TEST_CASE("uniform intervals: range, mean, determinism") {
  const DistributionConfig cfg{DistributionConfig::Kind::uniform, 0.5, 0.5, 100000};
  const auto series = uniform_intervals(cfg, Seed{7});
  double mean = 0.0;
  for (double v : series.values()) {
    REQUIRE(v > 0.0);
    REQUIRE(v < 1.0);
    mean += v;
  }
  mean /= static_cast<double>(series.size());
  CHECK(std::fabs(mean - 0.5) < 0.005);

  const auto again = uniform_intervals(cfg, Seed{7});
  CHECK(series.values() == again.values());

  CHECK_THROWS_AS(
      uniform_intervals({DistributionConfig::Kind::uniform, 0.2, 0.5, 10}, Seed{1}),
      InvalidConfig);
  CHECK_THROWS_AS(
      uniform_intervals({DistributionConfig::Kind::gaussian, 0.5, 0.5, 10}, Seed{1}),
      InvalidConfig);
}

TEST_CASE("gaussian intervals reject non-positive draws") {
  const DistributionConfig cfg{DistributionConfig::Kind::gaussian, 0.5, 0.4, 20000};
  const auto series = gaussian_intervals(cfg, Seed{11});
  REQUIRE(series.size() == 20000);
  for (double v : series.values()) REQUIRE(v > 0.0);

  const auto again = gaussian_intervals(cfg, Seed{11});
  CHECK(series.values() == again.values());

  CHECK_THROWS_AS(gaussian_intervals({DistributionConfig::Kind::gaussian, 0.0, 1.0, 10}, Seed{1}),
                  InvalidConfig);
  CHECK_THROWS_AS(gaussian_intervals({DistributionConfig::Kind::gaussian, 1.0, 0.0, 10}, Seed{1}),
                  InvalidConfig);
}

TEST_CASE("gaussian rejection overflow surfaces instead of truncating") {
  // With mean > 0 the acceptance probability exceeds 1/2, so the default
  // 1000*n budget is unreachable; the error path is exercised by shrinking
  // the budget below what n values need.
  const DistributionConfig cfg{DistributionConfig::Kind::gaussian, 1.0, 5.0, 1000};
  CHECK_THROWS_AS(gaussian_intervals(cfg, Seed{3}, 10), RejectionOverflow);
  CHECK_NOTHROW(gaussian_intervals(cfg, Seed{3}));
}

TEST_CASE("lognormal intervals") {
  const auto tight = lognormal_intervals({DistributionConfig::Kind::lognormal, 0.0, 1e-12, 100},
                                         Seed{5});
  for (double v : tight.values()) CHECK(v == doctest::Approx(1.0).epsilon(1e-9));

  const auto wide =
      lognormal_intervals({DistributionConfig::Kind::lognormal, 0.0, 2.0, 50000}, Seed{5});
  for (double v : wide.values()) REQUIRE(v > 0.0);

  const auto again =
      lognormal_intervals({DistributionConfig::Kind::lognormal, 0.0, 2.0, 50000}, Seed{5});
  CHECK(wide.values() == again.values());
}

TEST_CASE("xoshiro sequences are platform-pinned") {
  // First outputs for seed 1; frozen so a refactor cannot silently change
  // every downstream sequence.
  rng::Xoshiro256pp gen(1);
  CHECK(gen.next() == 14971601782005023387ULL);
  CHECK(gen.next() == 13781649495232077965ULL);

  rng::SplitMix64 sm(0);
  CHECK(sm.next() == 16294208416658607535ULL);
  CHECK(sm.next() == 7960286522194355700ULL);
}
