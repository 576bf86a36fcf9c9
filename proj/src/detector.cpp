#include "chaoscope/detector.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "chaoscope/rng.hpp"

namespace chaoscope {

void DetectorConfig::validate() const {
  if (!(efficiency > 0.0 && efficiency <= 1.0)) {
    throw InvalidConfig("detector efficiency must lie in (0,1]");
  }
  if (!(dead_time >= 0.0) || !std::isfinite(dead_time)) {
    throw InvalidConfig("dead time must be >= 0");
  }
  if (!(quantum >= 0.0) || !std::isfinite(quantum)) {
    throw InvalidConfig("timestamp quantum must be >= 0");
  }
  if (!(background_rate >= 0.0) || !std::isfinite(background_rate)) {
    throw InvalidConfig("background rate must be >= 0");
  }
}

EventTimestamps thin(const EventTimestamps& ts, double p, Seed seed) {
  if (!(p > 0.0 && p <= 1.0)) throw InvalidConfig("thinning probability must lie in (0,1]");
  rng::Xoshiro256pp gen(seed.value);
  std::vector<double> kept;
  kept.reserve(ts.size());
  for (double t : ts.times()) {
    if (gen.uniform01() < p) kept.push_back(t);
  }
  return EventTimestamps(std::move(kept));
}

EventTimestamps apply_dead_time(const EventTimestamps& ts, double dead_time) {
  if (!(dead_time >= 0.0)) throw InvalidConfig("dead time must be >= 0");
  if (dead_time == 0.0 || ts.empty()) return ts;
  std::vector<double> recorded;
  recorded.reserve(ts.size());
  recorded.push_back(ts[0]);
  for (std::size_t i = 1; i < ts.size(); ++i) {
    if (ts[i] - recorded.back() >= dead_time) recorded.push_back(ts[i]);
  }
  return EventTimestamps(std::move(recorded));
}

namespace {

// Collapse exact duplicates in a sorted sequence, returning how many were
// dropped. Order is preserved.
std::size_t collapse_ties(std::vector<double>& sorted) {
  const auto last = std::unique(sorted.begin(), sorted.end());
  const auto dropped = static_cast<std::size_t>(std::distance(last, sorted.end()));
  sorted.erase(last, sorted.end());
  return dropped;
}

}  // namespace

QuantizeResult quantize(const EventTimestamps& ts, double quantum) {
  if (!(quantum >= 0.0)) throw InvalidConfig("timestamp quantum must be >= 0");
  if (quantum == 0.0 || ts.empty()) return {ts, 0};
  std::vector<double> rounded(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    rounded[i] = std::round(ts[i] / quantum) * quantum;
  }
  const std::size_t collapsed = collapse_ties(rounded);
  return {EventTimestamps(std::move(rounded)), collapsed};
}

BackgroundResult add_background(const EventTimestamps& ts, double rate, double horizon, Seed seed) {
  if (!(rate >= 0.0) || !std::isfinite(rate)) throw InvalidConfig("background rate must be >= 0");
  if (rate == 0.0) return {ts, 0, 0};
  if (!(horizon >= ts.last())) {
    throw InvalidHorizon("background horizon " + std::to_string(horizon) +
                         " is before the last timestamp " + std::to_string(ts.last()));
  }

  rng::Xoshiro256pp gen(seed.value);
  std::vector<double> background;
  double t = 0.0;
  while (true) {
    t += -std::log(gen.uniform_open01()) / rate;
    if (t > horizon) break;
    background.push_back(t);
  }

  std::vector<double> merged(ts.size() + background.size());
  std::merge(ts.times().begin(), ts.times().end(), background.begin(), background.end(),
             merged.begin());
  const std::size_t collapsed = collapse_ties(merged);
  return {EventTimestamps(std::move(merged)), background.size(), collapsed};
}

DegradeResult degrade(const EventTimestamps& ts, const DetectorConfig& cfg, Seed seed) {
  cfg.validate();
  DegradeStats stats;
  stats.input_events = ts.size();

  BackgroundResult with_bg =
      add_background(ts, cfg.background_rate, ts.last(), Seed{rng::derive_stream(seed.value, 0)});
  stats.background_added = with_bg.added;
  stats.merge_collapsed = with_bg.collapsed;

  EventTimestamps thinned =
      thin(with_bg.times, cfg.efficiency, Seed{rng::derive_stream(seed.value, 1)});
  stats.thinned_away = with_bg.times.size() - thinned.size();

  EventTimestamps alive = apply_dead_time(thinned, cfg.dead_time);
  stats.dead_time_dropped = thinned.size() - alive.size();

  QuantizeResult quantized = quantize(alive, cfg.quantum);
  stats.quantize_collapsed = quantized.collapsed;
  stats.output_events = quantized.times.size();

  return {std::move(quantized.times), stats};
}

}  // namespace chaoscope
