#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chaoscope/analysis.hpp"
#include "chaoscope/detector.hpp"
#include "chaoscope/experiment.hpp"
#include "chaoscope/generators.hpp"
#include "chaoscope/io.hpp"
#include "chaoscope/pipeline.hpp"
#include "chaoscope/rng.hpp"
#include "chaoscope/svg.hpp"

namespace {

using namespace chaoscope;

// Exit codes: 2 configuration, 3 parse/ingest, 4 analysis.
int exit_code_for(const Error& error) {
  if (dynamic_cast<const PipelineError*>(&error) != nullptr) {
    return static_cast<const PipelineError&>(error).exit_code();
  }
  if (dynamic_cast<const InvalidConfig*>(&error) || dynamic_cast<const InvalidHorizon*>(&error) ||
      dynamic_cast<const RejectionOverflow*>(&error) ||
      dynamic_cast<const UnsupportedForEmbedding*>(&error) ||
      dynamic_cast<const InvalidSeries*>(&error)) {
    return 2;
  }
  if (dynamic_cast<const ParseError*>(&error) || dynamic_cast<const EmptyFile*>(&error) ||
      dynamic_cast<const IoError*>(&error) || dynamic_cast<const TooShort*>(&error) ||
      dynamic_cast<const NonMonotonic*>(&error)) {
    return 3;
  }
  return 4;
}

EventFileFormat parse_format(const std::string& name) {
  if (name == "timestamps_csv") return EventFileFormat::timestamps_csv;
  if (name == "intervals_csv") return EventFileFormat::intervals_csv;
  if (name == "counts_csv") {
    // Deliberate guard: binned counts cannot reconstruct intervals.
    read_counts_per_bin("(--format counts_csv)");
  }
  throw InvalidConfig("unknown format \"" + name +
                      "\" (expected timestamps_csv, intervals_csv or counts_csv)");
}

IntervalSeries intervals_from_file(const std::string& path, const std::string& format) {
  if (parse_format(format) == EventFileFormat::timestamps_csv) {
    return intervals_from_timestamps(read_timestamps_csv(path));
  }
  return read_intervals_csv(path);
}

void write_string(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << content;
  if (!out) throw IoError("write to " + path + " failed");
}

struct GenerateArgs {
  std::string kind = "logistic";
  std::size_t n = 4000;
  std::uint64_t seed = 0;
  double k = 4.0, x0 = 0.41;
  std::size_t burn_in = 1000;
  double rate = 1.0;
  double mean = 0.5, spread = 0.5;
  double mu = 0.0, sigma = 0.5;
  std::string out;
  bool as_timestamps = false;
};

int cmd_generate(const GenerateArgs& args) {
  IntervalSeries series = [&]() -> IntervalSeries {
    const Seed seed{args.seed};
    if (args.kind == "logistic") {
      return logistic_orbit({args.k, args.x0, args.n, args.burn_in});
    }
    if (args.kind == "exponential") return exponential_intervals({args.rate, args.n}, seed);
    if (args.kind == "uniform") {
      return uniform_intervals({DistributionConfig::Kind::uniform, args.mean, args.spread, args.n},
                               seed);
    }
    if (args.kind == "gaussian") {
      return gaussian_intervals(
          {DistributionConfig::Kind::gaussian, args.mean, args.spread, args.n}, seed);
    }
    if (args.kind == "lognormal") {
      return lognormal_intervals(
          {DistributionConfig::Kind::lognormal, args.mu, args.sigma, args.n}, seed);
    }
    throw InvalidConfig("unknown generator kind \"" + args.kind + "\"");
  }();

  if (args.as_timestamps) {
    const IntervalSeries physical = series.units() == Units::dimensionless
                                        ? series.as_seconds(series.label() + "/as-seconds")
                                        : series;
    write_events(timestamps_from_intervals(physical), args.out);
  } else {
    write_events(series, args.out);
  }
  std::cout << "wrote " << series.size() << (args.as_timestamps ? " intervals as timestamps to "
                                                                : " intervals to ")
            << args.out << "  [" << series.label() << "]\n";
  return 0;
}

struct DegradeArgs {
  std::string in;
  std::string format = "timestamps_csv";
  DetectorConfig config;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_degrade(const DegradeArgs& args) {
  EventTimestamps stream;
  if (parse_format(args.format) == EventFileFormat::timestamps_csv) {
    stream = read_timestamps_csv(args.in);
  } else {
    stream = timestamps_from_intervals(read_intervals_csv(args.in));
  }
  DegradeResult result = degrade(stream, args.config, Seed{args.seed});
  write_events(result.times, args.out);
  const DegradeStats& s = result.stats;
  std::cout << "degraded " << s.input_events << " events: +" << s.background_added
            << " background, -" << s.thinned_away << " thinned, -" << s.dead_time_dropped
            << " dead time, -" << s.quantize_collapsed << " quantization ties -> "
            << s.output_events << " recorded, written to " << args.out << "\n";
  return 0;
}

struct EmbedArgs {
  std::string in;
  std::string format = "intervals_csv";
  std::size_t dimension = 3;
  std::size_t delay = 1;
  std::string out;
};

int cmd_embed(const EmbedArgs& args) {
  const IntervalSeries series = intervals_from_file(args.in, args.format);
  const PointCloud cloud = embed(series, {args.dimension, args.delay});
  std::ostringstream body;
  body << "# label: " << cloud.source_label() << "\n";
  body << "# m=" << cloud.dimension() << " tau=" << cloud.spec().delay
       << " points=" << cloud.size() << "\n";
  char buffer[40];
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    for (std::size_t c = 0; c < cloud.dimension(); ++c) {
      std::snprintf(buffer, sizeof(buffer), "%.17g", cloud.coord(i, c));
      body << (c == 0 ? "" : ",") << buffer;
    }
    body << "\n";
  }
  write_string(args.out, body.str());
  std::cout << "embedded " << series.size() << " intervals -> " << cloud.size() << " points (m="
            << args.dimension << ", tau=" << args.delay << ") in " << args.out << "\n";
  return 0;
}

struct AnalyzeArgs {
  std::string in;
  std::string format = "intervals_csv";
  std::size_t dimension = 3;
  std::size_t delay = 1;
  std::size_t radii = 40;
  std::size_t surrogates = 19;
  double alpha = 0.05;
  long theiler = -1;
  std::size_t threads = 1;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_analyze(const AnalyzeArgs& args) {
  const IntervalSeries series = intervals_from_file(args.in, args.format);
  const EmbeddingSpec spec{args.dimension, args.delay};
  const PointCloud cloud = embed(series, spec);

  AnalysisOptions options;
  options.radius_count = args.radii;
  options.theiler_window = args.theiler;
  options.threads = args.threads;

  const CloudAnalysis analysis = analyze_cloud(cloud, options, args.seed);
  const SurrogateReport report =
      surrogate_test(series, spec, args.surrogates, args.alpha, Seed{args.seed}, options);

  std::ostringstream page;
  page << "source       : " << series.label() << "\n"
       << "series       : " << series.size() << " intervals\n"
       << "embedding    : m=" << args.dimension << " tau=" << args.delay << " -> " << cloud.size()
       << " points\n";
  char line[160];
  std::snprintf(line, sizeof(line), "D2           : %.4g  (fit r in [%.4g, %.4g], residual %.4g)\n",
                analysis.dimension.d2, analysis.dimension.fit_range.r_lo,
                analysis.dimension.fit_range.r_hi, analysis.dimension.fit_residual);
  page << line;
  std::snprintf(line, sizeof(line), "surrogates   : S=%zu, alpha=%.4g\np-value      : %.4g\n",
                report.surrogate_stats.size(), report.alpha, report.p_value);
  page << line;
  page << "verdict      : "
       << (report.verdict == Verdict::structure_detected ? "structure_detected" : "no_structure")
       << "\n";

  if (!args.out.empty()) {
    std::filesystem::create_directories(args.out);
    const std::filesystem::path dir(args.out);
    std::ostringstream curve;
    curve << "r,C,pairs\n";
    char row[128];
    for (std::size_t k = 0; k < analysis.curve.radii.size(); ++k) {
      std::snprintf(row, sizeof(row), "%.17g,%.17g,%llu\n", analysis.curve.radii[k],
                    analysis.curve.c_values[k],
                    static_cast<unsigned long long>(analysis.curve.pair_counts[k]));
      curve << row;
    }
    write_string((dir / "correlation.csv").string(), curve.str());
    std::ostringstream stats;
    stats << "role,index,d2\n";
    std::snprintf(row, sizeof(row), "observed,,%.17g\n", report.observed_stat);
    stats << row;
    for (std::size_t s = 0; s < report.surrogate_stats.size(); ++s) {
      std::snprintf(row, sizeof(row), "surrogate,%zu,%.17g\n", s, report.surrogate_stats[s]);
      stats << row;
    }
    write_string((dir / "report.csv").string(), stats.str());
    write_string((dir / "report.txt").string(), page.str());
  }

  std::cout << page.str();
  return 0;
}

struct RenderArgs {
  std::string in;
  std::string format = "intervals_csv";
  std::string kind = "series";
  std::size_t dimension = 3;
  std::size_t delay = 1;
  std::vector<std::size_t> axes{0, 1};
  std::string caption;
  std::string out;
};

int cmd_render(const RenderArgs& args) {
  const IntervalSeries series = intervals_from_file(args.in, args.format);
  const std::string caption = args.caption.empty() ? series.label() : args.caption;
  std::string body;
  if (args.kind == "series") {
    body = svg::render_series(series, caption);
  } else if (args.kind == "scatter") {
    if (args.axes.size() != 2) throw InvalidConfig("--axes needs exactly two indices for scatter");
    const PointCloud cloud = embed(series, {args.dimension, args.delay});
    body = svg::render_scatter(cloud, {args.axes[0], args.axes[1]}, caption);
  } else if (args.kind == "views") {
    const PointCloud cloud = embed(series, {args.dimension, args.delay});
    body = svg::render_projection_views(cloud, caption);
  } else {
    throw InvalidConfig("unknown render kind \"" + args.kind +
                        "\" (expected series, scatter or views)");
  }
  write_string(args.out, body);
  std::cout << "rendered " << args.kind << " -> " << args.out << "\n";
  return 0;
}

int run_spec(ExperimentSpec spec, const std::string& out_override, long threads_override) {
  if (!out_override.empty()) spec.out_dir = out_override;
  if (threads_override > 0) spec.analysis.threads = static_cast<std::size_t>(threads_override);
  const PipelineResult result = run_pipeline(spec);
  std::cout << result.verdict_page;
  std::cout << "artifacts    : " << result.artifacts.size() << " files + manifest at "
            << result.manifest_path.string() << "\n";
  return 0;  // the verdict is data, not a failure
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "chaoscope: look for low-dimensional deterministic structure in event time series.\n"
      "Pipelines: generate/ingest -> degrade -> embed -> analyze -> render."};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Generate an interval series");
  generate->add_option("--kind", gen.kind,
                       "logistic | exponential | uniform | gaussian | lognormal");
  generate->add_option("--n", gen.n, "number of intervals");
  generate->add_option("--seed", gen.seed, "generator seed");
  generate->add_option("--k", gen.k, "logistic k in [0,4]");
  generate->add_option("--x0", gen.x0, "logistic x0 in [0,1]");
  generate->add_option("--burn-in", gen.burn_in, "logistic iterates to discard");
  generate->add_option("--rate", gen.rate, "exponential rate (events/s)");
  generate->add_option("--mean", gen.mean, "uniform/gaussian mean");
  generate->add_option("--spread", gen.spread, "uniform half-width / gaussian sigma");
  generate->add_option("--mu", gen.mu, "lognormal mu");
  generate->add_option("--sigma", gen.sigma, "lognormal sigma");
  generate->add_flag("--timestamps", gen.as_timestamps, "write cumulative timestamps instead");
  generate->add_option("--out", gen.out, "output file")->required();

  DegradeArgs deg;
  auto* degrade_cmd = app.add_subcommand("degrade", "Pass an event stream through the detector model");
  degrade_cmd->add_option("--in", deg.in, "input file")->required();
  degrade_cmd->add_option("--format", deg.format, "timestamps_csv | intervals_csv");
  degrade_cmd->add_option("--efficiency", deg.config.efficiency, "keep probability (0,1]");
  degrade_cmd->add_option("--dead-time", deg.config.dead_time, "non-paralyzable dead time, s");
  degrade_cmd->add_option("--quantum", deg.config.quantum, "timestamp resolution, s");
  degrade_cmd->add_option("--background-rate", deg.config.background_rate, "background events/s");
  degrade_cmd->add_option("--seed", deg.seed, "detector seed");
  degrade_cmd->add_option("--out", deg.out, "output timestamps file")->required();

  EmbedArgs emb;
  auto* embed_cmd = app.add_subcommand("embed", "Delay-coordinate embedding to a point cloud CSV");
  embed_cmd->add_option("--in", emb.in, "input file")->required();
  embed_cmd->add_option("--format", emb.format, "timestamps_csv | intervals_csv");
  embed_cmd->add_option("--dimension,-m", emb.dimension, "embedding dimension");
  embed_cmd->add_option("--delay", emb.delay, "embedding delay (samples)");
  embed_cmd->add_option("--out", emb.out, "output cloud CSV")->required();

  AnalyzeArgs ana;
  auto* analyze_cmd = app.add_subcommand("analyze", "Correlation dimension + surrogate test");
  analyze_cmd->add_option("--in", ana.in, "input file")->required();
  analyze_cmd->add_option("--format", ana.format, "timestamps_csv | intervals_csv | counts_csv");
  analyze_cmd->add_option("--dimension,-m", ana.dimension, "embedding dimension");
  analyze_cmd->add_option("--delay", ana.delay, "embedding delay (samples)");
  analyze_cmd->add_option("--radii", ana.radii, "radius grid size");
  analyze_cmd->add_option("--surrogates", ana.surrogates, "surrogate count (>= 19)");
  analyze_cmd->add_option("--alpha", ana.alpha, "significance level");
  analyze_cmd->add_option("--theiler", ana.theiler, "Theiler window (-1: use delay)");
  analyze_cmd->add_option("--threads", ana.threads, "worker threads");
  analyze_cmd->add_option("--seed", ana.seed, "analysis seed");
  analyze_cmd->add_option("--out", ana.out, "output directory for tables (optional)");

  RenderArgs ren;
  auto* render_cmd = app.add_subcommand("render", "Render an SVG figure from a data file");
  render_cmd->add_option("--in", ren.in, "input file")->required();
  render_cmd->add_option("--format", ren.format, "timestamps_csv | intervals_csv");
  render_cmd->add_option("--kind", ren.kind, "series | scatter | views");
  render_cmd->add_option("--dimension,-m", ren.dimension, "embedding dimension");
  render_cmd->add_option("--delay", ren.delay, "embedding delay");
  render_cmd->add_option("--axes", ren.axes, "scatter axes, e.g. --axes 0 1")->expected(2);
  render_cmd->add_option("--caption", ren.caption, "figure caption");
  render_cmd->add_option("--out", ren.out, "output SVG file")->required();

  std::string run_config, run_out;
  long run_threads = 0;
  auto* run_cmd = app.add_subcommand("run", "Run a full experiment from a config file");
  run_cmd->add_option("--config", run_config, "experiment config file")->required();
  run_cmd->add_option("--out", run_out, "output directory (overrides config)");
  run_cmd->add_option("--threads", run_threads, "worker threads (overrides config)");

  std::string demo_name, demo_out;
  long demo_threads = 0;
  bool demo_print = false;
  auto* demo_cmd = app.add_subcommand("demo", "Run a canonical demo experiment (fig1 .. fig7)");
  demo_cmd->add_option("name", demo_name, "fig1 .. fig7")->required();
  demo_cmd->add_option("--out", demo_out, "output directory (default out/<name>)");
  demo_cmd->add_option("--threads", demo_threads, "worker threads");
  demo_cmd->add_flag("--print-config", demo_print, "print the demo's config and exit");

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) return cmd_generate(gen);
    if (degrade_cmd->parsed()) return cmd_degrade(deg);
    if (embed_cmd->parsed()) return cmd_embed(emb);
    if (analyze_cmd->parsed()) return cmd_analyze(ana);
    if (render_cmd->parsed()) return cmd_render(ren);
    if (run_cmd->parsed()) {
      return run_spec(load_experiment(run_config), run_out, run_threads);
    }
    if (demo_cmd->parsed()) {
      const auto& demos = demo_experiments();
      const auto it = demos.find(demo_name);
      if (it == demos.end()) {
        throw InvalidConfig("unknown demo \"" + demo_name + "\" (expected fig1 .. fig7)");
      }
      if (demo_print) {
        std::cout << it->second;
        return 0;
      }
      ExperimentSpec spec = parse_experiment(it->second);
      if (spec.out_dir.empty()) spec.out_dir = "out/" + demo_name;
      return run_spec(std::move(spec), demo_out, demo_threads);
    }
  } catch (const Error& error) {
    std::cerr << "error: " << error.what() << "\n";
    return exit_code_for(error);
  }
  return 0;
}
