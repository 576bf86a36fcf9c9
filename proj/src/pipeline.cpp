#include "chaoscope/pipeline.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "chaoscope/io.hpp"
#include "chaoscope/rng.hpp"
#include "chaoscope/svg.hpp"

namespace chaoscope {

namespace {

// Substream ids carving independent RNG streams out of the experiment seed.
constexpr std::uint64_t kDetectorStream = 101;
constexpr std::uint64_t kAnalysisStream = 102;

std::string short_num(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.4g", v);
  return buffer;
}

std::string full_num(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

IntervalSeries make_source_series(const ExperimentSpec& spec,
                                  std::optional<EventTimestamps>& raw_timestamps) {
  const Seed seed{spec.seed};
  switch (spec.source.kind) {
    case SourceSpec::Kind::logistic: return logistic_orbit(spec.source.logistic);
    case SourceSpec::Kind::exponential: return exponential_intervals(spec.source.decay, seed);
    case SourceSpec::Kind::uniform: return uniform_intervals(spec.source.dist, seed);
    case SourceSpec::Kind::gaussian: return gaussian_intervals(spec.source.dist, seed);
    case SourceSpec::Kind::lognormal: return lognormal_intervals(spec.source.dist, seed);
    case SourceSpec::Kind::timestamps_file: {
      raw_timestamps = read_timestamps_csv(spec.source.path);
      return intervals_from_timestamps(*raw_timestamps);
    }
    case SourceSpec::Kind::intervals_file: return read_intervals_csv(spec.source.path);
  }
  throw InvalidConfig("unreachable source kind");
}

std::string verdict_name(Verdict verdict) {
  return verdict == Verdict::structure_detected ? "structure_detected" : "no_structure";
}

std::string curve_csv(const CorrelationCurve& curve) {
  std::ostringstream out;
  out << "r,C,pairs\n";
  for (std::size_t k = 0; k < curve.radii.size(); ++k) {
    out << full_num(curve.radii[k]) << "," << full_num(curve.c_values[k]) << ","
        << curve.pair_counts[k] << "\n";
  }
  return out.str();
}

std::string report_csv(const SurrogateReport& report) {
  std::ostringstream out;
  out << "role,index,d2\n";
  out << "observed,," << full_num(report.observed_stat) << "\n";
  for (std::size_t s = 0; s < report.surrogate_stats.size(); ++s) {
    out << "surrogate," << s << "," << full_num(report.surrogate_stats[s]) << "\n";
  }
  return out.str();
}

std::string report_json(const ExperimentSpec& spec, const PipelineResult& result,
                        std::size_t point_count) {
  nlohmann::json j;
  j["title"] = spec.title;
  j["source"] = result.source_label;
  j["series_length"] = result.series_length;
  j["units"] = result.series_units == Units::seconds ? "seconds" : "dimensionless";
  j["embedding"] = {{"dimension", result.embedding.dimension}, {"delay", result.embedding.delay}};
  j["points"] = point_count;
  j["d2"] = result.dimension.d2;
  j["fit_range"] = {result.dimension.fit_range.r_lo, result.dimension.fit_range.r_hi};
  j["fit_residual"] = result.dimension.fit_residual;
  j["n_pairs_in_range"] = result.dimension.n_pairs_in_range;
  j["surrogates"] = {{"count", result.report.surrogate_stats.size()},
                     {"stats", result.report.surrogate_stats},
                     {"alpha", result.report.alpha},
                     {"p_value", result.report.p_value},
                     {"verdict", verdict_name(result.report.verdict)}};
  if (result.degraded) {
    const DegradeStats& d = result.degrade_stats;
    j["detector"] = {{"input_events", d.input_events},
                     {"background_added", d.background_added},
                     {"merge_collapsed", d.merge_collapsed},
                     {"thinned_away", d.thinned_away},
                     {"dead_time_dropped", d.dead_time_dropped},
                     {"quantize_collapsed", d.quantize_collapsed},
                     {"output_events", d.output_events}};
  }
  return j.dump(2) + "\n";
}

std::string verdict_page(const ExperimentSpec& spec, const PipelineResult& result,
                         std::size_t point_count) {
  std::ostringstream out;
  out << "== chaoscope run =============================================\n";
  if (!spec.title.empty()) out << "title        : " << spec.title << "\n";
  out << "source       : " << result.source_label << "\n";
  out << "series       : " << result.series_length << " intervals ("
      << (result.series_units == Units::seconds ? "seconds" : "dimensionless") << ")\n";
  if (result.degraded) {
    const DegradeStats& d = result.degrade_stats;
    out << "detector     : " << d.input_events << " events +" << d.background_added
        << " background, " << d.thinned_away << " thinned away, " << d.dead_time_dropped
        << " lost to dead time, " << d.quantize_collapsed << " collapsed -> " << d.output_events
        << " recorded\n";
  }
  out << "embedding    : m=" << result.embedding.dimension << " tau=" << result.embedding.delay
      << " -> " << point_count << " points\n";
  out << "D2           : " << short_num(result.dimension.d2) << "  (fit r in ["
      << short_num(result.dimension.fit_range.r_lo) << ", "
      << short_num(result.dimension.fit_range.r_hi) << "], RMS residual "
      << short_num(result.dimension.fit_residual) << ", " << result.dimension.n_pairs_in_range
      << " pairs)\n";
  out << "surrogates   : S=" << result.report.surrogate_stats.size()
      << " permutations, statistic = D2, alpha = " << short_num(result.report.alpha) << "\n";
  out << "p-value      : " << short_num(result.report.p_value) << "\n";
  out << "verdict      : " << verdict_name(result.report.verdict) << "\n";
  out << "==============================================================\n";
  return out.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << content;
  if (!out) throw IoError("write to " + path.string() + " failed");
}

}  // namespace

const char* stage_name(Stage stage) {
  switch (stage) {
    case Stage::configure: return "configure";
    case Stage::ingest: return "ingest";
    case Stage::generate: return "generate";
    case Stage::detector: return "detector";
    case Stage::embed: return "embed";
    case Stage::analyze: return "analyze";
    case Stage::render: return "render";
    case Stage::write: return "write";
  }
  return "?";
}

int stage_exit_code(Stage stage) {
  switch (stage) {
    case Stage::configure:
    case Stage::generate: return 2;
    case Stage::ingest: return 3;
    default: return 4;
  }
}

const char* artifact_kind_name(FigureArtifact::Kind kind) {
  switch (kind) {
    case FigureArtifact::Kind::series_plot: return "series_plot";
    case FigureArtifact::Kind::projection_2d: return "projection_2d";
    case FigureArtifact::Kind::projection_3d_views: return "projection_3d_views";
    case FigureArtifact::Kind::correlation_curve: return "correlation_curve";
    case FigureArtifact::Kind::report: return "report";
  }
  return "?";
}

std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(hash));
  return buffer;
}

PipelineResult run_pipeline(const ExperimentSpec& spec) {
  auto fail = [&spec](Stage stage, const std::string& cause) -> PipelineError {
    PipelineError error(stage, cause);
    // Leave an error log (and nothing else) in the output directory.
    if (!spec.out_dir.empty()) {
      std::error_code ec;
      std::filesystem::create_directories(spec.out_dir, ec);
      if (!ec) {
        std::ofstream log(spec.out_dir / "error.log");
        log << error.what() << "\n";
      }
    }
    return error;
  };

  try {
    spec.validate();
    if (spec.out_dir.empty()) throw InvalidConfig("output directory is required");
  } catch (const Error& e) {
    throw fail(Stage::configure, e.what());
  }

  // Source stage: one generator or one input file.
  const bool from_file = spec.source.kind == SourceSpec::Kind::timestamps_file ||
                         spec.source.kind == SourceSpec::Kind::intervals_file;
  std::optional<EventTimestamps> raw_timestamps;
  std::optional<IntervalSeries> intervals;
  try {
    intervals = make_source_series(spec, raw_timestamps);
  } catch (const Error& e) {
    throw fail(from_file ? Stage::ingest : Stage::generate, e.what());
  }

  PipelineResult result;
  result.embedding = spec.embedding;

  // Detector stage: degrade the event stream, then recover intervals.
  if (spec.detector) {
    try {
      EventTimestamps stream;
      if (raw_timestamps) {
        stream = *raw_timestamps;
      } else {
        // Map iterates are reinterpreted as seconds when fed through the
        // detector; the label keeps the provenance visible.
        IntervalSeries physical = intervals->units() == Units::dimensionless
                                      ? intervals->as_seconds(intervals->label() + "/as-seconds")
                                      : *intervals;
        stream = timestamps_from_intervals(physical);
      }
      DegradeResult degraded =
          degrade(stream, *spec.detector, Seed{rng::derive_stream(spec.seed, kDetectorStream)});
      result.degraded = true;
      result.degrade_stats = degraded.stats;
      IntervalSeries recorded = intervals_from_timestamps(degraded.times);
      intervals = IntervalSeries(recorded.values(), intervals->label() + "/degraded",
                                 Units::seconds);
    } catch (const Error& e) {
      throw fail(Stage::detector, e.what());
    }
  } else if (raw_timestamps) {
    // Already converted by make_source_series.
  }

  result.source_label = intervals->label();
  result.series_length = intervals->size();
  result.series_units = intervals->units();

  std::optional<PointCloud> cloud;
  try {
    cloud = embed(*intervals, spec.embedding);
  } catch (const Error& e) {
    throw fail(Stage::embed, e.what());
  }

  AnalysisOptions options;
  options.radius_count = spec.analysis.radius_count;
  options.theiler_window = spec.analysis.theiler;
  options.threads = spec.analysis.threads;
  const std::uint64_t analysis_seed = rng::derive_stream(spec.seed, kAnalysisStream);
  try {
    CloudAnalysis analysis = analyze_cloud(*cloud, options, analysis_seed);
    result.curve = std::move(analysis.curve);
    result.dimension = analysis.dimension;
    result.report = surrogate_test(*intervals, spec.embedding, spec.analysis.surrogates,
                                   spec.analysis.alpha, Seed{analysis_seed}, options);
  } catch (const Error& e) {
    throw fail(Stage::analyze, e.what());
  }

  // Render stage: build every artifact in memory first.
  const std::string title = spec.title.empty() ? result.source_label : spec.title;
  std::vector<std::pair<FigureArtifact, std::string>> files;
  try {
    files.emplace_back(
        FigureArtifact{FigureArtifact::Kind::series_plot, "series.svg", title + " - interval series",
                       ""},
        svg::render_series(*intervals, title + " - interval series"));
    if (spec.embedding.dimension >= 2) {
      files.emplace_back(FigureArtifact{FigureArtifact::Kind::projection_2d, "projection_2d.svg",
                                        title + " - 2-D phase portrait", ""},
                         svg::render_scatter(*cloud, {0, 1}, title + " - 2-D phase portrait"));
    }
    if (spec.embedding.dimension >= 3) {
      files.emplace_back(
          FigureArtifact{FigureArtifact::Kind::projection_3d_views, "projection_3d.svg",
                         title + " - 3-D phase portrait (projections)", ""},
          svg::render_projection_views(*cloud, title + " - 3-D phase portrait (projections)"));
    }
    files.emplace_back(FigureArtifact{FigureArtifact::Kind::correlation_curve, "correlation.svg",
                                      title + " - correlation integral", ""},
                       svg::render_correlation_curve(result.curve, &result.dimension,
                                                     title + " - correlation integral"));
    files.emplace_back(FigureArtifact{FigureArtifact::Kind::correlation_curve, "correlation.csv",
                                      title + " - correlation integral table", ""},
                       curve_csv(result.curve));
    const std::size_t points = cloud->size();
    result.verdict_page = verdict_page(spec, result, points);
    files.emplace_back(
        FigureArtifact{FigureArtifact::Kind::report, "report.txt", title + " - verdict", ""},
        result.verdict_page);
    files.emplace_back(
        FigureArtifact{FigureArtifact::Kind::report, "report.csv", title + " - statistics", ""},
        report_csv(result.report));
    files.emplace_back(
        FigureArtifact{FigureArtifact::Kind::report, "report.json", title + " - full report", ""},
        report_json(spec, result, points));
  } catch (const Error& e) {
    throw fail(Stage::render, e.what());
  }

  // Write stage: artifacts, then the manifest listing all of them.
  try {
    std::filesystem::create_directories(spec.out_dir);
    nlohmann::json manifest;
    manifest["title"] = title;
    manifest["experiment"] = serialize_experiment(spec);
    manifest["artifacts"] = nlohmann::json::array();
    for (auto& [artifact, content] : files) {
      artifact.content_hash = fnv1a64_hex(content);
      write_text_file(spec.out_dir / artifact.path, content);
      manifest["artifacts"].push_back({{"kind", artifact_kind_name(artifact.kind)},
                                       {"path", artifact.path.string()},
                                       {"caption", artifact.caption},
                                       {"fnv1a64", artifact.content_hash}});
      result.artifacts.push_back(artifact);
    }
    manifest["verdict"] = {{"d2", result.dimension.d2},
                           {"p_value", result.report.p_value},
                           {"verdict", verdict_name(result.report.verdict)}};
    result.manifest_path = spec.out_dir / "manifest.json";
    write_text_file(result.manifest_path, manifest.dump(2) + "\n");
  } catch (const Error& e) {
    throw fail(Stage::write, e.what());
  }

  return result;
}

}  // namespace chaoscope
