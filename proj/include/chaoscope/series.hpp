#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "chaoscope/errors.hpp"

namespace chaoscope {

// Physical inter-event times are strictly positive seconds; map iterates
// are dimensionless values confined to [0,1]. The units tag selects which
// invariant a series must satisfy.
enum class Units { seconds, dimensionless };

// Ordered sequence of inter-event intervals. Immutable after construction.
class IntervalSeries {
public:
  IntervalSeries(std::vector<double> values, std::string label, Units units = Units::seconds);

  const std::vector<double>& values() const { return values_; }
  const std::string& label() const { return label_; }
  Units units() const { return units_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

  // Reinterpret a dimensionless series as physical seconds (validates
  // positivity). Used when feeding map iterates through the detector model.
  IntervalSeries as_seconds(const std::string& label) const;

private:
  std::vector<double> values_;
  std::string label_;
  Units units_;
};

// Absolute event times in seconds since acquisition start, strictly
// increasing, first entry >= 0. May be empty (a detector can miss
// every event).
class EventTimestamps {
public:
  EventTimestamps() = default;
  explicit EventTimestamps(std::vector<double> times);

  const std::vector<double>& times() const { return times_; }
  std::size_t size() const { return times_.size(); }
  bool empty() const { return times_.empty(); }
  double operator[](std::size_t i) const { return times_[i]; }
  double last() const { return times_.empty() ? 0.0 : times_.back(); }

private:
  std::vector<double> times_;
};

struct EmbeddingSpec {
  std::size_t dimension = 3;
  std::size_t delay = 1;

  void validate() const {
    if (dimension < 1) throw InvalidConfig("embedding dimension must be >= 1");
    if (delay < 1) throw InvalidConfig("embedding delay must be >= 1");
  }

  // Shortest series that still yields one point.
  std::size_t min_series_length() const { return (dimension - 1) * delay + 1; }
};

// Reconstructed phase-space portrait: points stored row-major with
// stride = dimension. Immutable after construction.
class PointCloud {
public:
  PointCloud(std::vector<double> flat, EmbeddingSpec spec, std::string source_label);

  std::size_t size() const { return spec_.dimension == 0 ? 0 : flat_.size() / spec_.dimension; }
  std::size_t dimension() const { return spec_.dimension; }
  const EmbeddingSpec& spec() const { return spec_; }
  const std::string& source_label() const { return source_label_; }
  const std::vector<double>& flat() const { return flat_; }

  std::span<const double> point(std::size_t i) const {
    return {flat_.data() + i * spec_.dimension, spec_.dimension};
  }
  double coord(std::size_t i, std::size_t axis) const { return flat_[i * spec_.dimension + axis]; }

private:
  std::vector<double> flat_;
  EmbeddingSpec spec_;
  std::string source_label_;
};

// timestamps -> intervals; requires >= 2 strictly increasing entries.
IntervalSeries intervals_from_timestamps(const EventTimestamps& ts);

// intervals -> timestamps with the first event pinned at t = 0, so the
// conversion is lossless under intervals_from_timestamps.
EventTimestamps timestamps_from_intervals(const IntervalSeries& series);

// Delay-coordinate embedding: point j = (s[j], s[j+tau], ..., s[j+(m-1)tau]),
// overlapping windows, stride 1. Point count = N - (m-1)*tau.
PointCloud embed(const IntervalSeries& series, const EmbeddingSpec& spec);

// Keep the selected coordinates of every point, in the requested order.
PointCloud project(const PointCloud& cloud, std::span<const std::size_t> axes);

}  // namespace chaoscope
