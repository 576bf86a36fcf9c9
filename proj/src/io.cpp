#include "chaoscope/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

namespace chaoscope {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

struct FileBody {
  std::vector<double> values;
  std::vector<std::size_t> lines;  // 1-based physical line of each value
  std::string label;
  Units units = Units::seconds;
};

FileBody parse_body(const std::filesystem::path& path, std::string_view header_word) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");

  FileBody body;
  std::string line;
  std::size_t line_no = 0;
  bool header_allowed = true;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view text = trim(line);
    if (text.empty()) continue;
    if (text.front() == '#') {
      std::string_view comment = trim(text.substr(1));
      if (comment.starts_with("label:")) {
        body.label = std::string(trim(comment.substr(6)));
      } else if (comment.starts_with("units:")) {
        const std::string_view units = trim(comment.substr(6));
        if (units == "dimensionless") {
          body.units = Units::dimensionless;
        } else if (units == "seconds") {
          body.units = Units::seconds;
        } else {
          throw ParseError(line_no, path.string() + ":" + std::to_string(line_no) +
                                        ": unknown units \"" + std::string(units) + "\"");
        }
      }
      continue;
    }
    if (header_allowed && text == header_word) {
      header_allowed = false;
      continue;
    }
    header_allowed = false;

    double value = 0.0;
    const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
    if (result.ec != std::errc() || result.ptr != text.data() + text.size()) {
      throw ParseError(line_no, path.string() + ":" + std::to_string(line_no) +
                                    ": not a decimal number: \"" + std::string(text) + "\"");
    }
    body.values.push_back(value);
    body.lines.push_back(line_no);
  }
  if (body.values.empty()) {
    throw EmptyFile(path.string() + " contains no data rows");
  }
  return body;
}

}  // namespace

EventTimestamps read_timestamps_csv(const std::filesystem::path& path) {
  FileBody body = parse_body(path, "t_seconds");
  if (body.values[0] < 0.0) {
    throw ParseError(body.lines[0], path.string() + ":" + std::to_string(body.lines[0]) +
                                        ": first timestamp must be >= 0");
  }
  for (std::size_t i = 1; i < body.values.size(); ++i) {
    if (body.values[i] <= body.values[i - 1]) {
      throw MonotonicityError(body.lines[i],
                              path.string() + ":" + std::to_string(body.lines[i]) +
                                  ": timestamps must be strictly increasing");
    }
  }
  return EventTimestamps(std::move(body.values));
}

IntervalSeries read_intervals_csv(const std::filesystem::path& path) {
  FileBody body = parse_body(path, "dt_seconds");
  for (std::size_t i = 0; i < body.values.size(); ++i) {
    const double v = body.values[i];
    if (body.units == Units::seconds && v <= 0.0) {
      throw ParseError(body.lines[i], path.string() + ":" + std::to_string(body.lines[i]) +
                                          ": non-positive interval");
    }
    if (body.units == Units::dimensionless && (v < 0.0 || v > 1.0)) {
      throw ParseError(body.lines[i], path.string() + ":" + std::to_string(body.lines[i]) +
                                          ": dimensionless value outside [0,1]");
    }
  }
  const std::string label = body.label.empty() ? path.filename().string() : body.label;
  return IntervalSeries(std::move(body.values), label, body.units);
}

ParsedEvents read_events(const std::filesystem::path& path, EventFileFormat format) {
  if (format == EventFileFormat::timestamps_csv) return read_timestamps_csv(path);
  return read_intervals_csv(path);
}

namespace {

void write_rows(const std::filesystem::path& path, std::string_view header,
                const std::string& label, const Units* units,
                const std::vector<double>& values) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  if (!label.empty()) out << "# label: " << label << "\n";
  if (units != nullptr && *units == Units::dimensionless) out << "# units: dimensionless\n";
  out << header << "\n";
  char buffer[64];
  for (double v : values) {
    std::snprintf(buffer, sizeof(buffer), "%.17g", v);
    out << buffer << "\n";
  }
  if (!out) throw IoError("write to " + path.string() + " failed");
}

}  // namespace

void write_events(const EventTimestamps& ts, const std::filesystem::path& path) {
  write_rows(path, "t_seconds", {}, nullptr, ts.times());
}

void write_events(const IntervalSeries& series, const std::filesystem::path& path) {
  const Units units = series.units();
  write_rows(path, "dt_seconds", series.label(), &units, series.values());
}

void read_counts_per_bin(const std::filesystem::path& path) {
  throw UnsupportedForEmbedding(
      path.string() +
      ": counts-per-bin files cannot be embedded. A histogram of counts in fixed time bins "
      "discards the individual event times, so the inter-event intervals the phase-space "
      "reconstruction is built from are unrecoverable. Export per-event timestamps instead "
      "(format: timestamps_csv, one event time per line).");
}

}  // namespace chaoscope
