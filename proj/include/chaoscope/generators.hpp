#pragma once

#include <cstdint>
#include <string>

#include "chaoscope/series.hpp"

namespace chaoscope {

// Every stochastic generator is a pure function of (config, seed).
struct Seed {
  std::uint64_t value = 0;
};

struct LogisticConfig {
  double k = 4.0;
  double x0 = 0.41;
  std::size_t n = 0;
  std::size_t burn_in = 1000;  // iterates discarded before recording
};

struct DecayConfig {
  double rate = 1.0;  // events per second
  std::size_t n = 0;  // number of intervals
};

struct DistributionConfig {
  enum class Kind { uniform, gaussian, lognormal };
  Kind kind = Kind::uniform;
  double mean = 1.0;    // for lognormal this is mu of the underlying normal
  double spread = 0.2;  // half-width for uniform, sigma otherwise
  std::size_t n = 0;
};

// x_{j+1} = k * x_j * (1 - x_j), recorded after the burn-in. Deterministic.
IntervalSeries logistic_orbit(const LogisticConfig& cfg);

// Inverse-CDF draw for one exponential interval; exposed so the transform
// can be checked against hand values.
double exponential_quantile(double u, double rate);

// n i.i.d. exponential intervals, t = -ln(u)/rate with u uniform on (0,1).
IntervalSeries exponential_intervals(const DecayConfig& cfg, Seed seed);

// n i.i.d. draws on (mean - spread, mean + spread); requires mean - spread >= 0.
IntervalSeries uniform_intervals(const DistributionConfig& cfg, Seed seed);

// n i.i.d. normal(mean, spread) draws; values <= 0 are rejected and redrawn.
// The retry budget defaults to 1000 draws per kept value; exceeding it
// throws RejectionOverflow instead of silently truncating the distribution.
IntervalSeries gaussian_intervals(const DistributionConfig& cfg, Seed seed);
IntervalSeries gaussian_intervals(const DistributionConfig& cfg, Seed seed,
                                  std::uint64_t attempt_budget);

// n i.i.d. exp(normal(mean, spread)) draws, always positive.
IntervalSeries lognormal_intervals(const DistributionConfig& cfg, Seed seed);

}  // namespace chaoscope
