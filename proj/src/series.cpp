#include "chaoscope/series.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace chaoscope {

namespace {

void check_interval_values(const std::vector<double>& values, Units units) {
  if (values.empty()) throw InvalidSeries("interval series must contain at least one value");
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (!std::isfinite(v)) {
      throw InvalidSeries("interval series value at index " + std::to_string(i) + " is not finite");
    }
    if (units == Units::seconds && v <= 0.0) {
      throw InvalidSeries("physical interval at index " + std::to_string(i) +
                          " must be > 0, got " + std::to_string(v));
    }
    if (units == Units::dimensionless && (v < 0.0 || v > 1.0)) {
      throw InvalidSeries("dimensionless iterate at index " + std::to_string(i) +
                          " must lie in [0,1], got " + std::to_string(v));
    }
  }
}

}  // namespace

IntervalSeries::IntervalSeries(std::vector<double> values, std::string label, Units units)
    : values_(std::move(values)), label_(std::move(label)), units_(units) {
  check_interval_values(values_, units_);
}

IntervalSeries IntervalSeries::as_seconds(const std::string& label) const {
  return IntervalSeries(values_, label, Units::seconds);
}

EventTimestamps::EventTimestamps(std::vector<double> times) : times_(std::move(times)) {
  if (times_.empty()) return;
  if (!std::isfinite(times_[0]) || times_[0] < 0.0) {
    throw NonMonotonic(0, "first timestamp must be finite and >= 0");
  }
  for (std::size_t i = 1; i < times_.size(); ++i) {
    if (!std::isfinite(times_[i]) || times_[i] <= times_[i - 1]) {
      throw NonMonotonic(i, "timestamps must be strictly increasing; violation at index " +
                                std::to_string(i));
    }
  }
}

PointCloud::PointCloud(std::vector<double> flat, EmbeddingSpec spec, std::string source_label)
    : flat_(std::move(flat)), spec_(spec), source_label_(std::move(source_label)) {
  spec_.validate();
  if (flat_.size() % spec_.dimension != 0) {
    throw InvalidConfig("point cloud storage size is not a multiple of the dimension");
  }
}

IntervalSeries intervals_from_timestamps(const EventTimestamps& ts) {
  if (ts.size() < 2) {
    throw TooShort("need at least 2 timestamps to form an interval, got " +
                   std::to_string(ts.size()));
  }
  std::vector<double> intervals(ts.size() - 1);
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) intervals[i] = ts[i + 1] - ts[i];
  return IntervalSeries(std::move(intervals), "intervals(" + std::to_string(ts.size()) + " events)",
                        Units::seconds);
}

EventTimestamps timestamps_from_intervals(const IntervalSeries& series) {
  if (series.units() != Units::seconds) {
    throw InvalidSeries("only physical-time series convert to timestamps; relabel first");
  }
  std::vector<double> times(series.size() + 1);
  times[0] = 0.0;
  for (std::size_t i = 0; i < series.size(); ++i) times[i + 1] = times[i] + series[i];
  return EventTimestamps(std::move(times));
}

PointCloud embed(const IntervalSeries& series, const EmbeddingSpec& spec) {
  spec.validate();
  const std::size_t n = series.size();
  const std::size_t window = (spec.dimension - 1) * spec.delay;
  if (n < window + 1) {
    throw SeriesTooShort(window + 1, "series of length " + std::to_string(n) +
                                         " is too short for m=" + std::to_string(spec.dimension) +
                                         ", tau=" + std::to_string(spec.delay) +
                                         " (need >= " + std::to_string(window + 1) + ")");
  }
  const std::size_t count = n - window;
  std::vector<double> flat(count * spec.dimension);
  const auto& values = series.values();
  for (std::size_t j = 0; j < count; ++j) {
    for (std::size_t c = 0; c < spec.dimension; ++c) {
      flat[j * spec.dimension + c] = values[j + c * spec.delay];
    }
  }
  return PointCloud(std::move(flat), spec, series.label());
}

PointCloud project(const PointCloud& cloud, std::span<const std::size_t> axes) {
  if (axes.empty()) throw AxisOutOfRange("projection requires at least one axis");
  for (std::size_t axis : axes) {
    if (axis >= cloud.dimension()) {
      throw AxisOutOfRange("axis " + std::to_string(axis) + " out of range for dimension " +
                           std::to_string(cloud.dimension()));
    }
  }
  const std::size_t count = cloud.size();
  std::vector<double> flat(count * axes.size());
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t c = 0; c < axes.size(); ++c) flat[i * axes.size() + c] = cloud.coord(i, axes[c]);
  }
  EmbeddingSpec spec{axes.size(), cloud.spec().delay};
  return PointCloud(std::move(flat), spec, cloud.source_label());
}

}  // namespace chaoscope
