#pragma once

#include <cstddef>

#include "chaoscope/generators.hpp"
#include "chaoscope/series.hpp"

namespace chaoscope {

// Imperfect-detector parameters. The identity config (defaults) passes a
// stream through unchanged.
struct DetectorConfig {
  double efficiency = 1.0;       // keep probability per event, (0,1]
  double dead_time = 0.0;        // non-paralyzable dead time, seconds
  double quantum = 0.0;          // timestamp resolution, seconds; 0 = exact clock
  double background_rate = 0.0;  // Poisson background, events per second

  void validate() const;
};

// Independent thinning: each event kept with probability p.
EventTimestamps thin(const EventTimestamps& ts, double p, Seed seed);

// Non-paralyzable dead time: an event is recorded iff it occurs at least
// dead_time after the previous *recorded* event. First event always recorded.
EventTimestamps apply_dead_time(const EventTimestamps& ts, double dead_time);

struct QuantizeResult {
  EventTimestamps times;
  std::size_t collapsed = 0;  // events merged away by tie collapse
};

// Round every timestamp to the nearest multiple of quantum (half away from
// zero); resulting ties collapse to a single event, counted loudly.
QuantizeResult quantize(const EventTimestamps& ts, double quantum);

struct BackgroundResult {
  EventTimestamps times;
  std::size_t added = 0;      // background events merged in
  std::size_t collapsed = 0;  // exact ties collapsed after the merge
};

// Merge a Poisson(rate) stream on [0, horizon] into ts.
BackgroundResult add_background(const EventTimestamps& ts, double rate, double horizon, Seed seed);

struct DegradeStats {
  std::size_t input_events = 0;
  std::size_t background_added = 0;
  std::size_t merge_collapsed = 0;
  std::size_t thinned_away = 0;
  std::size_t dead_time_dropped = 0;
  std::size_t quantize_collapsed = 0;
  std::size_t output_events = 0;
};

struct DegradeResult {
  EventTimestamps times;
  DegradeStats stats;
};

// Full detector chain in fixed order: background -> thinning -> dead time
// -> quantization. Background events pass through efficiency and dead time
// like real photons would. Substreams: background uses derive_stream(seed,0),
// thinning derive_stream(seed,1).
DegradeResult degrade(const EventTimestamps& ts, const DetectorConfig& cfg, Seed seed);

}  // namespace chaoscope
