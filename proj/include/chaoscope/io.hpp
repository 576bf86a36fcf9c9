#pragma once

#include <filesystem>
#include <variant>

#include "chaoscope/series.hpp"

namespace chaoscope {

// One decimal number per line. '#' starts a comment, blank lines are
// skipped, and the first non-comment line may be the format's header word
// ("t_seconds" / "dt_seconds"). Two metadata comments survive round trips:
//   # label: <free text>
//   # units: seconds | dimensionless
// Values render with 17 significant digits, so read(write(x)) == x bitwise.
enum class EventFileFormat { timestamps_csv, intervals_csv };

using ParsedEvents = std::variant<EventTimestamps, IntervalSeries>;

ParsedEvents read_events(const std::filesystem::path& path, EventFileFormat format);
EventTimestamps read_timestamps_csv(const std::filesystem::path& path);
IntervalSeries read_intervals_csv(const std::filesystem::path& path);

void write_events(const EventTimestamps& ts, const std::filesystem::path& path);
void write_events(const IntervalSeries& series, const std::filesystem::path& path);

// Deliberate guard, not a parser: binned counts cannot reconstruct the
// inter-event intervals the embedding needs. Always throws
// UnsupportedForEmbedding pointing at timestamps_csv.
[[noreturn]] void read_counts_per_bin(const std::filesystem::path& path);

}  // namespace chaoscope
