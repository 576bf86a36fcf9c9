#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "chaoscope/analysis.hpp"
#include "chaoscope/detector.hpp"
#include "chaoscope/experiment.hpp"

namespace chaoscope {

// Pipeline stages, used to classify failures into CLI exit codes:
// configure -> 2, ingest -> 3, everything downstream -> 4.
enum class Stage { configure, ingest, generate, detector, embed, analyze, render, write };

const char* stage_name(Stage stage);
int stage_exit_code(Stage stage);

// A stage failure wrapping the underlying cause.
class PipelineError : public Error {
public:
  PipelineError(Stage stage, const std::string& cause)
      : Error(std::string(stage_name(stage)) + " stage failed: " + cause), stage_(stage) {}
  Stage stage() const { return stage_; }
  int exit_code() const { return stage_exit_code(stage_); }

private:
  Stage stage_;
};

struct FigureArtifact {
  enum class Kind { series_plot, projection_2d, projection_3d_views, correlation_curve, report };
  Kind kind;
  std::filesystem::path path;  // relative to the output directory
  std::string caption;
  std::string content_hash;  // fnv1a64 of the file bytes, lowercase hex
};

const char* artifact_kind_name(FigureArtifact::Kind kind);

struct PipelineResult {
  std::vector<FigureArtifact> artifacts;
  std::filesystem::path manifest_path;
  SurrogateReport report;
  DimensionEstimate dimension;
  CorrelationCurve curve;
  std::string source_label;
  std::size_t series_length = 0;
  Units series_units = Units::seconds;
  EmbeddingSpec embedding;
  bool degraded = false;
  DegradeStats degrade_stats;
  std::string verdict_page;  // the one-page text summary
};

// Full generate/ingest -> degrade -> embed -> analyze -> render run.
// All artifacts are rendered in memory before anything is written, so a
// failed run leaves no partial artifacts (the CLI adds an error log).
// The run succeeds regardless of the verdict; the verdict is data.
PipelineResult run_pipeline(const ExperimentSpec& spec);

// FNV-1a 64-bit content hash, lowercase hex. Stable fingerprint for the
// artifact manifest and the figure regression tests.
std::string fnv1a64_hex(std::string_view bytes);

// The canonical demo experiments (fig1 .. fig7), keyed by name.
const std::map<std::string, std::string>& demo_experiments();

}  // namespace chaoscope
