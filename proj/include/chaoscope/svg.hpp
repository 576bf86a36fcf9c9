#pragma once

#include <array>
#include <string>

#include "chaoscope/analysis.hpp"
#include "chaoscope/series.hpp"

namespace chaoscope::svg {

// All renderers are pure string builders with fixed canvas geometry and
// fixed-precision coordinates, so identical inputs give byte-identical SVG.

// Value against index, drawn as a thin polyline (the raw-data figure).
std::string render_series(const IntervalSeries& series, const std::string& caption);

// 2-D scatter of two coordinates of a cloud. Axis labels follow the delay
// convention, e.g. t[i] / t[i+1].
std::string render_scatter(const PointCloud& cloud, std::array<std::size_t, 2> axes,
                           const std::string& caption);

// Four-panel view of a >= 3-dimensional cloud: the three pairwise
// projections plus one fixed-angle oblique projection (cabinet projection,
// 45 degrees, half depth).
std::string render_projection_views(const PointCloud& cloud, const std::string& caption);

// log C(r) against log r with the fitted scaling-region slope overlaid.
std::string render_correlation_curve(const CorrelationCurve& curve,
                                     const DimensionEstimate* estimate,
                                     const std::string& caption);

}  // namespace chaoscope::svg
