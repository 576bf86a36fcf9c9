#include "chaoscope/experiment.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
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

// key -> (value, consumed flag); unknown or leftover keys are errors so a
// typo cannot silently fall back to a default.
class KeyValues {
public:
  explicit KeyValues(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      // Inline comments start at a '#' that opens the line or follows
      // whitespace, so titles like "run#3" stay intact.
      std::size_t cut = std::string::npos;
      for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '#' && (i == 0 || line[i - 1] == ' ' || line[i - 1] == '\t')) {
          cut = i;
          break;
        }
      }
      std::string_view text_part = trim(cut == std::string::npos
                                            ? std::string_view(line)
                                            : std::string_view(line).substr(0, cut));
      if (text_part.empty()) continue;
      const auto eq = text_part.find('=');
      if (eq == std::string_view::npos) {
        throw InvalidConfig("config line " + std::to_string(line_no) +
                            ": expected key = value, got \"" + std::string(text_part) + "\"");
      }
      const std::string key(trim(text_part.substr(0, eq)));
      const std::string value(trim(text_part.substr(eq + 1)));
      if (key.empty()) {
        throw InvalidConfig("config line " + std::to_string(line_no) + ": empty key");
      }
      if (!entries_.emplace(key, value).second) {
        throw InvalidConfig("config line " + std::to_string(line_no) + ": duplicate key \"" + key +
                            "\"");
      }
    }
  }

  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  std::optional<std::string> take(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    std::string value = it->second;
    entries_.erase(it);
    return value;
  }

  std::string take_required(const std::string& key) {
    auto value = take(key);
    if (!value) throw InvalidConfig("config is missing required key \"" + key + "\"");
    return *value;
  }

  double take_double(const std::string& key, double fallback) {
    auto value = take(key);
    if (!value) return fallback;
    double out = 0.0;
    const char* begin = value->data();
    const char* end = begin + value->size();
    const auto result = std::from_chars(begin, end, out);
    if (result.ec != std::errc() || result.ptr != end) {
      throw InvalidConfig("config key \"" + key + "\": not a number: \"" + *value + "\"");
    }
    return out;
  }

  std::uint64_t take_uint(const std::string& key, std::uint64_t fallback) {
    auto value = take(key);
    if (!value) return fallback;
    std::uint64_t out = 0;
    const char* begin = value->data();
    const char* end = begin + value->size();
    const auto result = std::from_chars(begin, end, out);
    if (result.ec != std::errc() || result.ptr != end) {
      throw InvalidConfig("config key \"" + key + "\": not a non-negative integer: \"" + *value +
                          "\"");
    }
    return out;
  }

  long take_long(const std::string& key, long fallback) {
    auto value = take(key);
    if (!value) return fallback;
    long out = 0;
    const char* begin = value->data();
    const char* end = begin + value->size();
    const auto result = std::from_chars(begin, end, out);
    if (result.ec != std::errc() || result.ptr != end) {
      throw InvalidConfig("config key \"" + key + "\": not an integer: \"" + *value + "\"");
    }
    return out;
  }

  bool take_bool(const std::string& key, bool fallback) {
    auto value = take(key);
    if (!value) return fallback;
    if (*value == "true" || *value == "yes" || *value == "1") return true;
    if (*value == "false" || *value == "no" || *value == "0") return false;
    throw InvalidConfig("config key \"" + key + "\": expected true/false, got \"" + *value + "\"");
  }

  void reject_leftovers() const {
    if (entries_.empty()) return;
    std::string keys;
    for (const auto& [key, value] : entries_) {
      if (!keys.empty()) keys += ", ";
      keys += key;
    }
    throw InvalidConfig("config contains unknown keys: " + keys);
  }

private:
  std::map<std::string, std::string> entries_;
};

SourceSpec::Kind parse_source_kind(const std::string& name) {
  if (name == "logistic") return SourceSpec::Kind::logistic;
  if (name == "exponential") return SourceSpec::Kind::exponential;
  if (name == "uniform") return SourceSpec::Kind::uniform;
  if (name == "gaussian") return SourceSpec::Kind::gaussian;
  if (name == "lognormal") return SourceSpec::Kind::lognormal;
  if (name == "timestamps_csv") return SourceSpec::Kind::timestamps_file;
  if (name == "intervals_csv") return SourceSpec::Kind::intervals_file;
  throw InvalidConfig("unknown source kind \"" + name +
                      "\" (expected logistic, exponential, uniform, gaussian, lognormal, "
                      "timestamps_csv or intervals_csv)");
}

const char* source_kind_name(SourceSpec::Kind kind) {
  switch (kind) {
    case SourceSpec::Kind::logistic: return "logistic";
    case SourceSpec::Kind::exponential: return "exponential";
    case SourceSpec::Kind::uniform: return "uniform";
    case SourceSpec::Kind::gaussian: return "gaussian";
    case SourceSpec::Kind::lognormal: return "lognormal";
    case SourceSpec::Kind::timestamps_file: return "timestamps_csv";
    case SourceSpec::Kind::intervals_file: return "intervals_csv";
  }
  return "?";
}

std::string num(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

}  // namespace

void ExperimentSpec::validate() const {
  embedding.validate();
  if (analysis.surrogates < 19) throw InvalidConfig("analysis.surrogates must be >= 19");
  if (!(analysis.alpha > 0.0 && analysis.alpha < 1.0)) {
    throw InvalidConfig("analysis.alpha must lie in (0,1)");
  }
  if (analysis.radius_count < 2) throw InvalidConfig("analysis.radii must be >= 2");
  if (analysis.threads < 1) throw InvalidConfig("analysis.threads must be >= 1");
  if (detector) detector->validate();
  switch (source.kind) {
    case SourceSpec::Kind::logistic:
      if (source.logistic.n == 0) throw InvalidConfig("n must be >= 1");
      break;
    case SourceSpec::Kind::exponential:
      if (source.decay.n == 0) throw InvalidConfig("n must be >= 1");
      break;
    case SourceSpec::Kind::uniform:
    case SourceSpec::Kind::gaussian:
    case SourceSpec::Kind::lognormal:
      if (source.dist.n == 0) throw InvalidConfig("n must be >= 1");
      break;
    case SourceSpec::Kind::timestamps_file:
    case SourceSpec::Kind::intervals_file:
      if (source.path.empty()) throw InvalidConfig("input.path is required for file sources");
      break;
  }
}

ExperimentSpec parse_experiment(const std::string& text) {
  KeyValues kv(text);
  ExperimentSpec spec;

  spec.title = kv.take("title").value_or("");
  spec.source.kind = parse_source_kind(kv.take_required("source"));
  spec.seed = kv.take_uint("seed", 0);
  const auto n = static_cast<std::size_t>(kv.take_uint("n", 0));

  switch (spec.source.kind) {
    case SourceSpec::Kind::logistic:
      spec.source.logistic.k = kv.take_double("logistic.k", 4.0);
      spec.source.logistic.x0 = kv.take_double("logistic.x0", 0.41);
      spec.source.logistic.burn_in =
          static_cast<std::size_t>(kv.take_uint("logistic.burn_in", 1000));
      spec.source.logistic.n = n;
      break;
    case SourceSpec::Kind::exponential:
      spec.source.decay.rate = kv.take_double("exponential.rate", 1.0);
      spec.source.decay.n = n;
      break;
    case SourceSpec::Kind::uniform:
      spec.source.dist = {DistributionConfig::Kind::uniform, kv.take_double("uniform.mean", 0.5),
                          kv.take_double("uniform.spread", 0.5), n};
      break;
    case SourceSpec::Kind::gaussian:
      spec.source.dist = {DistributionConfig::Kind::gaussian, kv.take_double("gaussian.mean", 1.0),
                          kv.take_double("gaussian.sigma", 0.2), n};
      break;
    case SourceSpec::Kind::lognormal:
      spec.source.dist = {DistributionConfig::Kind::lognormal, kv.take_double("lognormal.mu", 0.0),
                          kv.take_double("lognormal.sigma", 0.5), n};
      break;
    case SourceSpec::Kind::timestamps_file:
    case SourceSpec::Kind::intervals_file:
      spec.source.path = kv.take_required("input.path");
      break;
  }

  if (kv.take_bool("detector.enabled", false)) {
    DetectorConfig detector;
    detector.efficiency = kv.take_double("detector.efficiency", 1.0);
    detector.dead_time = kv.take_double("detector.dead_time", 0.0);
    detector.quantum = kv.take_double("detector.quantum", 0.0);
    detector.background_rate = kv.take_double("detector.background_rate", 0.0);
    spec.detector = detector;
  }

  spec.embedding.dimension = static_cast<std::size_t>(kv.take_uint("embedding.dimension", 3));
  spec.embedding.delay = static_cast<std::size_t>(kv.take_uint("embedding.delay", 1));

  spec.analysis.radius_count = static_cast<std::size_t>(kv.take_uint("analysis.radii", 40));
  spec.analysis.surrogates = static_cast<std::size_t>(kv.take_uint("analysis.surrogates", 19));
  spec.analysis.alpha = kv.take_double("analysis.alpha", 0.05);
  spec.analysis.theiler = kv.take_long("analysis.theiler", -1);
  spec.analysis.threads = static_cast<std::size_t>(kv.take_uint("analysis.threads", 1));

  if (auto out = kv.take("out")) spec.out_dir = *out;

  kv.reject_leftovers();
  spec.validate();
  return spec;
}

ExperimentSpec load_experiment(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open experiment config " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_experiment(buffer.str());
}

std::string serialize_experiment(const ExperimentSpec& spec) {
  std::ostringstream out;
  out << "# chaoscope experiment\n";
  if (!spec.title.empty()) out << "title = " << spec.title << "\n";
  out << "source = " << source_kind_name(spec.source.kind) << "\n";
  out << "seed = " << spec.seed << "\n";
  switch (spec.source.kind) {
    case SourceSpec::Kind::logistic:
      out << "n = " << spec.source.logistic.n << "\n";
      out << "logistic.k = " << num(spec.source.logistic.k) << "\n";
      out << "logistic.x0 = " << num(spec.source.logistic.x0) << "\n";
      out << "logistic.burn_in = " << spec.source.logistic.burn_in << "\n";
      break;
    case SourceSpec::Kind::exponential:
      out << "n = " << spec.source.decay.n << "\n";
      out << "exponential.rate = " << num(spec.source.decay.rate) << "\n";
      break;
    case SourceSpec::Kind::uniform:
      out << "n = " << spec.source.dist.n << "\n";
      out << "uniform.mean = " << num(spec.source.dist.mean) << "\n";
      out << "uniform.spread = " << num(spec.source.dist.spread) << "\n";
      break;
    case SourceSpec::Kind::gaussian:
      out << "n = " << spec.source.dist.n << "\n";
      out << "gaussian.mean = " << num(spec.source.dist.mean) << "\n";
      out << "gaussian.sigma = " << num(spec.source.dist.spread) << "\n";
      break;
    case SourceSpec::Kind::lognormal:
      out << "n = " << spec.source.dist.n << "\n";
      out << "lognormal.mu = " << num(spec.source.dist.mean) << "\n";
      out << "lognormal.sigma = " << num(spec.source.dist.spread) << "\n";
      break;
    case SourceSpec::Kind::timestamps_file:
    case SourceSpec::Kind::intervals_file:
      out << "input.path = " << spec.source.path.string() << "\n";
      break;
  }
  if (spec.detector) {
    out << "detector.enabled = true\n";
    out << "detector.efficiency = " << num(spec.detector->efficiency) << "\n";
    out << "detector.dead_time = " << num(spec.detector->dead_time) << "\n";
    out << "detector.quantum = " << num(spec.detector->quantum) << "\n";
    out << "detector.background_rate = " << num(spec.detector->background_rate) << "\n";
  }
  out << "embedding.dimension = " << spec.embedding.dimension << "\n";
  out << "embedding.delay = " << spec.embedding.delay << "\n";
  out << "analysis.radii = " << spec.analysis.radius_count << "\n";
  out << "analysis.surrogates = " << spec.analysis.surrogates << "\n";
  out << "analysis.alpha = " << num(spec.analysis.alpha) << "\n";
  out << "analysis.theiler = " << spec.analysis.theiler << "\n";
  out << "analysis.threads = " << spec.analysis.threads << "\n";
  if (!spec.out_dir.empty()) out << "out = " << spec.out_dir.string() << "\n";
  return out.str();
}

}  // namespace chaoscope
