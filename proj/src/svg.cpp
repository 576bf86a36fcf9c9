#include "chaoscope/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace chaoscope::svg {

namespace {

std::string fmt(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.2f", v);
  return buffer;
}

std::string fmt_tick(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.3g", v);
  return buffer;
}

std::string escape_xml(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Bounds {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void include(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  // Degenerate ranges get a unit pad so a single point still renders.
  void finalize() {
    if (!(lo < hi)) {
      lo -= 1.0;
      hi += 1.0;
    }
  }
  double width() const { return hi - lo; }
};

// Maps data coordinates into a pixel rectangle (y axis flipped).
struct Frame {
  double px = 0.0, py = 0.0, pw = 0.0, ph = 0.0;
  Bounds x, y;

  double map_x(double v) const { return px + (v - x.lo) / x.width() * pw; }
  double map_y(double v) const { return py + ph - (v - y.lo) / y.width() * ph; }
};

class Builder {
public:
  Builder(double width, double height) : width_(width), height_(height) {
    out_ += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out_ += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width) + "\" height=\"" +
            fmt(height) + "\" viewBox=\"0 0 " + fmt(width) + " " + fmt(height) + "\">\n";
    out_ += "<rect x=\"0\" y=\"0\" width=\"" + fmt(width) + "\" height=\"" + fmt(height) +
            "\" fill=\"white\"/>\n";
  }

  void frame_box(const Frame& f) {
    out_ += "<rect x=\"" + fmt(f.px) + "\" y=\"" + fmt(f.py) + "\" width=\"" + fmt(f.pw) +
            "\" height=\"" + fmt(f.ph) + "\" fill=\"none\" stroke=\"#404040\" stroke-width=\"1\"/>\n";
  }

  void circle(double cx, double cy, double r, const std::string& fill) {
    out_ += "<circle cx=\"" + fmt(cx) + "\" cy=\"" + fmt(cy) + "\" r=\"" + fmt(r) + "\" fill=\"" +
            fill + "\"/>\n";
  }

  void line(double x1, double y1, double x2, double y2, const std::string& stroke, double width,
            bool dashed = false) {
    out_ += "<line x1=\"" + fmt(x1) + "\" y1=\"" + fmt(y1) + "\" x2=\"" + fmt(x2) + "\" y2=\"" +
            fmt(y2) + "\" stroke=\"" + stroke + "\" stroke-width=\"" + fmt(width) + "\"";
    if (dashed) out_ += " stroke-dasharray=\"4 3\"";
    out_ += "/>\n";
  }

  void polyline_begin() { out_ += "<polyline fill=\"none\" stroke=\"#1f4e8c\" stroke-width=\"0.8\" points=\""; }
  void polyline_point(double x, double y) { out_ += fmt(x) + "," + fmt(y) + " "; }
  void polyline_end() { out_ += "\"/>\n"; }

  void text(double x, double y, const std::string& anchor, double size, const std::string& body) {
    out_ += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(y) + "\" font-family=\"monospace\" font-size=\"" +
            fmt(size) + "\" text-anchor=\"" + anchor + "\" fill=\"#202020\">" + escape_xml(body) +
            "</text>\n";
  }

  std::string finish() {
    out_ += "</svg>\n";
    return std::move(out_);
  }

  double width() const { return width_; }
  double height() const { return height_; }

private:
  std::string out_;
  double width_;
  double height_;
};

void draw_axis_labels(Builder& b, const Frame& f, const std::string& x_name,
                      const std::string& y_name) {
  b.text(f.px, f.py + f.ph + 14.0, "start", 10.0, fmt_tick(f.x.lo));
  b.text(f.px + f.pw, f.py + f.ph + 14.0, "end", 10.0, fmt_tick(f.x.hi));
  b.text(f.px + f.pw / 2.0, f.py + f.ph + 26.0, "middle", 11.0, x_name);
  b.text(f.px - 4.0, f.py + f.ph, "end", 10.0, fmt_tick(f.y.lo));
  b.text(f.px - 4.0, f.py + 10.0, "end", 10.0, fmt_tick(f.y.hi));
  b.text(f.px - 4.0, f.py - 8.0, "end", 11.0, y_name);
}

std::string coordinate_label(std::size_t axis, std::size_t delay) {
  const std::size_t lag = axis * delay;
  if (lag == 0) return "t[i]";
  return "t[i+" + std::to_string(lag) + "]";
}

void scatter_panel(Builder& b, const PointCloud& cloud, std::size_t ax, std::size_t ay, Frame f,
                   const std::string& x_name, const std::string& y_name, double point_radius) {
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    f.x.include(cloud.coord(i, ax));
    f.y.include(cloud.coord(i, ay));
  }
  f.x.finalize();
  f.y.finalize();
  b.frame_box(f);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    b.circle(f.map_x(cloud.coord(i, ax)), f.map_y(cloud.coord(i, ay)), point_radius, "#1f4e8c");
  }
  draw_axis_labels(b, f, x_name, y_name);
}

double marker_radius(std::size_t points) { return points > 2000 ? 1.0 : 1.6; }

}  // namespace

std::string render_series(const IntervalSeries& series, const std::string& caption) {
  Builder b(860.0, 400.0);
  Frame f{60.0, 30.0, 760.0, 300.0, {}, {}};
  f.x.include(0.0);
  f.x.include(static_cast<double>(series.size() - 1));
  for (double v : series.values()) f.y.include(v);
  f.x.finalize();
  f.y.finalize();
  b.frame_box(f);
  b.polyline_begin();
  for (std::size_t i = 0; i < series.size(); ++i) {
    b.polyline_point(f.map_x(static_cast<double>(i)), f.map_y(series[i]));
  }
  b.polyline_end();
  draw_axis_labels(b, f, "i", "t[i]");
  b.text(430.0, 388.0, "middle", 12.0, caption);
  return b.finish();
}

std::string render_scatter(const PointCloud& cloud, std::array<std::size_t, 2> axes,
                           const std::string& caption) {
  if (cloud.size() == 0) throw EmptyCloud("cannot render an empty point cloud");
  for (std::size_t axis : axes) {
    if (axis >= cloud.dimension()) {
      throw AxisOutOfRange("scatter axis " + std::to_string(axis) + " out of range");
    }
  }
  Builder b(560.0, 600.0);
  Frame f{70.0, 40.0, 440.0, 440.0, {}, {}};
  const std::size_t delay = cloud.spec().delay;
  scatter_panel(b, cloud, axes[0], axes[1], f, coordinate_label(axes[0], delay),
                coordinate_label(axes[1], delay), marker_radius(cloud.size()));
  b.text(280.0, 570.0, "middle", 12.0, caption);
  return b.finish();
}

std::string render_projection_views(const PointCloud& cloud, const std::string& caption) {
  if (cloud.size() == 0) throw EmptyCloud("cannot render an empty point cloud");
  if (cloud.dimension() < 3) {
    throw AxisOutOfRange("projection views need a cloud of dimension >= 3");
  }
  Builder b(760.0, 830.0);
  const std::size_t delay = cloud.spec().delay;
  const double r = marker_radius(cloud.size());

  const double panel = 290.0;
  const Frame top_left{70.0, 40.0, panel, panel, {}, {}};
  const Frame top_right{450.0, 40.0, panel, panel, {}, {}};
  const Frame bottom_left{70.0, 430.0, panel, panel, {}, {}};
  Frame oblique{450.0, 430.0, panel, panel, {}, {}};

  scatter_panel(b, cloud, 0, 1, top_left, coordinate_label(0, delay), coordinate_label(1, delay), r);
  scatter_panel(b, cloud, 0, 2, top_right, coordinate_label(0, delay), coordinate_label(2, delay), r);
  scatter_panel(b, cloud, 1, 2, bottom_left, coordinate_label(1, delay), coordinate_label(2, delay),
                r);

  // Cabinet projection: u = x + z/2 cos45, v = y + z/2 sin45.
  const double depth = 0.35355339059327373;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    oblique.x.include(cloud.coord(i, 0) + depth * cloud.coord(i, 2));
    oblique.y.include(cloud.coord(i, 1) + depth * cloud.coord(i, 2));
  }
  oblique.x.finalize();
  oblique.y.finalize();
  b.frame_box(oblique);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const double u = cloud.coord(i, 0) + depth * cloud.coord(i, 2);
    const double v = cloud.coord(i, 1) + depth * cloud.coord(i, 2);
    b.circle(oblique.map_x(u), oblique.map_y(v), r, "#1f4e8c");
  }
  draw_axis_labels(b, oblique, "oblique u", "oblique v");

  b.text(380.0, 800.0, "middle", 12.0, caption);
  return b.finish();
}

std::string render_correlation_curve(const CorrelationCurve& curve,
                                     const DimensionEstimate* estimate,
                                     const std::string& caption) {
  Builder b(640.0, 560.0);
  Frame f{80.0, 40.0, 500.0, 420.0, {}, {}};

  std::vector<double> xs, ys;
  for (std::size_t k = 0; k < curve.radii.size(); ++k) {
    if (curve.c_values[k] <= 0.0) continue;
    xs.push_back(std::log10(curve.radii[k]));
    ys.push_back(std::log10(curve.c_values[k]));
  }
  if (xs.empty()) throw EmptyScalingRegion("correlation curve has no positive C(r) to draw");
  for (double x : xs) f.x.include(x);
  for (double y : ys) f.y.include(y);
  f.x.finalize();
  f.y.finalize();
  b.frame_box(f);

  for (std::size_t k = 0; k < xs.size(); ++k) {
    b.circle(f.map_x(xs[k]), f.map_y(ys[k]), 2.2, "#1f4e8c");
  }

  if (estimate != nullptr) {
    // Slope guide through the centroid of the fitted points.
    const double lo = std::log10(estimate->fit_range.r_lo);
    const double hi = std::log10(estimate->fit_range.r_hi);
    double cx = 0.0, cy = 0.0;
    std::size_t count = 0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      if (xs[k] < lo || xs[k] > hi) continue;
      cx += xs[k];
      cy += ys[k];
      ++count;
    }
    if (count > 0) {
      cx /= static_cast<double>(count);
      cy /= static_cast<double>(count);
      const double y_at_lo = cy + estimate->d2 * (lo - cx);
      const double y_at_hi = cy + estimate->d2 * (hi - cx);
      b.line(f.map_x(lo), f.map_y(y_at_lo), f.map_x(hi), f.map_y(y_at_hi), "#c0392b", 1.4);
      b.line(f.map_x(lo), f.py, f.map_x(lo), f.py + f.ph, "#909090", 0.8, true);
      b.line(f.map_x(hi), f.py, f.map_x(hi), f.py + f.ph, "#909090", 0.8, true);
      char label[64];
      std::snprintf(label, sizeof(label), "D2 = %.3f", estimate->d2);
      b.text(f.px + f.pw - 8.0, f.py + 18.0, "end", 12.0, label);
    }
  }

  draw_axis_labels(b, f, "log10 r", "log10 C(r)");
  b.text(320.0, 530.0, "middle", 12.0, caption);
  return b.finish();
}

}  // namespace chaoscope::svg
