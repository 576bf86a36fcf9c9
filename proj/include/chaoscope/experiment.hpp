#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "chaoscope/analysis.hpp"
#include "chaoscope/detector.hpp"
#include "chaoscope/generators.hpp"
#include "chaoscope/series.hpp"

namespace chaoscope {

// Where the intervals come from: one generator or one input file.
struct SourceSpec {
  enum class Kind {
    logistic,
    exponential,
    uniform,
    gaussian,
    lognormal,
    timestamps_file,
    intervals_file,
  };

  Kind kind = Kind::logistic;
  LogisticConfig logistic;
  DecayConfig decay;
  DistributionConfig dist;
  std::filesystem::path path;  // for the file kinds
};

struct AnalysisParams {
  std::size_t radius_count = 40;
  std::size_t surrogates = 19;
  double alpha = 0.05;
  long theiler = -1;  // -1: use the embedding delay
  std::size_t threads = 1;
};

// A full, reproducible experiment description. Serializes to a flat
// "key = value" text file ('#' comments); see serialize_experiment for the
// canonical key set.
struct ExperimentSpec {
  std::string title;
  SourceSpec source;
  std::optional<DetectorConfig> detector;
  EmbeddingSpec embedding{3, 1};
  AnalysisParams analysis;
  std::uint64_t seed = 0;
  std::filesystem::path out_dir;

  void validate() const;
};

ExperimentSpec parse_experiment(const std::string& text);
ExperimentSpec load_experiment(const std::filesystem::path& path);
std::string serialize_experiment(const ExperimentSpec& spec);

}  // namespace chaoscope
