#include "chaoscope/generators.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "chaoscope/rng.hpp"

namespace chaoscope {

namespace {

std::string format_double(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

}  // namespace

IntervalSeries logistic_orbit(const LogisticConfig& cfg) {
  if (!(cfg.k >= 0.0 && cfg.k <= 4.0)) {
    throw InvalidConfig("logistic k must lie in [0,4], got " + format_double(cfg.k));
  }
  if (!(cfg.x0 >= 0.0 && cfg.x0 <= 1.0)) {
    throw InvalidConfig("logistic x0 must lie in [0,1], got " + format_double(cfg.x0));
  }
  if (cfg.n == 0) throw InvalidConfig("logistic orbit length must be >= 1");

  double x = cfg.x0;
  for (std::size_t i = 0; i < cfg.burn_in; ++i) x = cfg.k * x * (1.0 - x);

  std::vector<double> orbit(cfg.n);
  for (std::size_t i = 0; i < cfg.n; ++i) {
    x = cfg.k * x * (1.0 - x);
    orbit[i] = x;
  }
  return IntervalSeries(std::move(orbit),
                        "logistic(k=" + format_double(cfg.k) + ",x0=" + format_double(cfg.x0) +
                            ",burn_in=" + std::to_string(cfg.burn_in) +
                            ",n=" + std::to_string(cfg.n) + ")",
                        Units::dimensionless);
}

double exponential_quantile(double u, double rate) {
  if (!(rate > 0.0)) throw InvalidConfig("decay rate must be > 0");
  if (!(u > 0.0 && u <= 1.0)) throw InvalidConfig("u must lie in (0,1]");
  return -std::log(u) / rate;
}

IntervalSeries exponential_intervals(const DecayConfig& cfg, Seed seed) {
  if (!(cfg.rate > 0.0)) throw InvalidConfig("decay rate must be > 0");
  if (cfg.n == 0) throw InvalidConfig("interval count must be >= 1");

  rng::Xoshiro256pp gen(seed.value);
  std::vector<double> intervals(cfg.n);
  for (std::size_t i = 0; i < cfg.n; ++i) {
    // uniform_open01 never returns 0 or 1, so the interval is strictly positive
    intervals[i] = -std::log(gen.uniform_open01()) / cfg.rate;
  }
  return IntervalSeries(std::move(intervals),
                        "exponential(rate=" + format_double(cfg.rate) +
                            ",n=" + std::to_string(cfg.n) + ",seed=" + std::to_string(seed.value) +
                            ")",
                        Units::seconds);
}

IntervalSeries uniform_intervals(const DistributionConfig& cfg, Seed seed) {
  if (cfg.kind != DistributionConfig::Kind::uniform) {
    throw InvalidConfig("config kind does not match uniform_intervals");
  }
  if (!(cfg.spread > 0.0)) throw InvalidConfig("uniform spread must be > 0");
  if (cfg.mean - cfg.spread < 0.0) {
    throw InvalidConfig("uniform lower bound mean - spread must be >= 0 for positive intervals");
  }
  if (cfg.n == 0) throw InvalidConfig("interval count must be >= 1");

  const double lo = cfg.mean - cfg.spread;
  const double width = 2.0 * cfg.spread;
  rng::Xoshiro256pp gen(seed.value);
  std::vector<double> intervals(cfg.n);
  for (std::size_t i = 0; i < cfg.n; ++i) intervals[i] = lo + gen.uniform_open01() * width;
  return IntervalSeries(std::move(intervals),
                        "uniform(mean=" + format_double(cfg.mean) +
                            ",spread=" + format_double(cfg.spread) + ",n=" + std::to_string(cfg.n) +
                            ",seed=" + std::to_string(seed.value) + ")",
                        Units::seconds);
}

IntervalSeries gaussian_intervals(const DistributionConfig& cfg, Seed seed) {
  return gaussian_intervals(cfg, seed, 1000ULL * cfg.n);
}

IntervalSeries gaussian_intervals(const DistributionConfig& cfg, Seed seed,
                                  std::uint64_t attempt_budget) {
  if (cfg.kind != DistributionConfig::Kind::gaussian) {
    throw InvalidConfig("config kind does not match gaussian_intervals");
  }
  if (!(cfg.spread > 0.0)) throw InvalidConfig("gaussian sigma must be > 0");
  if (!(cfg.mean > 0.0)) throw InvalidConfig("gaussian mean must be > 0 for positive intervals");
  if (cfg.n == 0) throw InvalidConfig("interval count must be >= 1");

  rng::Xoshiro256pp gen(seed.value);
  std::vector<double> intervals;
  intervals.reserve(cfg.n);
  std::uint64_t attempts = 0;
  while (intervals.size() < cfg.n) {
    if (attempts >= attempt_budget) {
      throw RejectionOverflow("gaussian positivity rejection exceeded " +
                              std::to_string(attempt_budget) + " attempts for " +
                              std::to_string(cfg.n) + " values (mean=" + format_double(cfg.mean) +
                              ", sigma=" + format_double(cfg.spread) + ")");
    }
    ++attempts;
    const double v = cfg.mean + cfg.spread * gen.normal();
    if (v > 0.0) intervals.push_back(v);
  }
  return IntervalSeries(std::move(intervals),
                        "gaussian(mean=" + format_double(cfg.mean) +
                            ",sigma=" + format_double(cfg.spread) + ",n=" + std::to_string(cfg.n) +
                            ",seed=" + std::to_string(seed.value) + ")",
                        Units::seconds);
}

IntervalSeries lognormal_intervals(const DistributionConfig& cfg, Seed seed) {
  if (cfg.kind != DistributionConfig::Kind::lognormal) {
    throw InvalidConfig("config kind does not match lognormal_intervals");
  }
  if (!(cfg.spread > 0.0)) throw InvalidConfig("lognormal sigma must be > 0");
  if (cfg.n == 0) throw InvalidConfig("interval count must be >= 1");

  rng::Xoshiro256pp gen(seed.value);
  std::vector<double> intervals(cfg.n);
  for (std::size_t i = 0; i < cfg.n; ++i) {
    intervals[i] = std::exp(cfg.mean + cfg.spread * gen.normal());
  }
  return IntervalSeries(std::move(intervals),
                        "lognormal(mu=" + format_double(cfg.mean) +
                            ",sigma=" + format_double(cfg.spread) + ",n=" + std::to_string(cfg.n) +
                            ",seed=" + std::to_string(seed.value) + ")",
                        Units::seconds);
}

}  // namespace chaoscope
