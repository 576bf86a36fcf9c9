#include "chaoscope/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

#include "chaoscope/rng.hpp"

namespace chaoscope {

namespace {

double max_norm_distance(const double* a, const double* b, std::size_t dim) {
  double d = 0.0;
  for (std::size_t c = 0; c < dim; ++c) {
    const double diff = std::fabs(a[c] - b[c]);
    if (diff > d) d = diff;
  }
  return d;
}

// Pairs i < j with j - i > window.
std::uint64_t admissible_pair_count(std::size_t points, std::size_t window) {
  if (points == 0 || points - 1 <= window) return 0;
  const std::uint64_t k = points - 1 - window;
  return k * (k + 1) / 2;
}

void check_radii(std::span<const double> radii) {
  if (radii.empty()) throw InvalidConfig("radius grid must not be empty");
  double prev = 0.0;
  for (double r : radii) {
    if (!(r > prev)) throw InvalidConfig("radii must be strictly increasing and > 0");
    prev = r;
  }
}

// Histogram bin of a distance: index of the first radius >= d, or K when
// the distance exceeds every radius.
std::size_t bin_of(std::span<const double> radii, double d) {
  return static_cast<std::size_t>(
      std::lower_bound(radii.begin(), radii.end(), d) - radii.begin());
}

std::size_t clamp_threads(std::size_t threads) { return threads == 0 ? 1 : threads; }

std::vector<std::uint64_t> exact_histogram(const PointCloud& cloud, std::span<const double> radii,
                                           std::size_t window, std::size_t threads) {
  const std::size_t m = cloud.size();
  const std::size_t dim = cloud.dimension();
  const double* data = cloud.flat().data();
  const std::size_t bins = radii.size();

  auto count_rows = [&](std::size_t first_row, std::size_t stride) {
    std::vector<std::uint64_t> hist(bins + 1, 0);
    for (std::size_t i = first_row; i + window + 1 < m; i += stride) {
      const double* pi = data + i * dim;
      for (std::size_t j = i + window + 1; j < m; ++j) {
        hist[bin_of(radii, max_norm_distance(pi, data + j * dim, dim))]++;
      }
    }
    return hist;
  };

  if (threads <= 1) return count_rows(0, 1);

  // Strided row assignment balances the triangular workload; integer merges
  // make the result independent of the thread count.
  std::vector<std::future<std::vector<std::uint64_t>>> parts;
  parts.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    parts.push_back(std::async(std::launch::async, count_rows, t, threads));
  }
  std::vector<std::uint64_t> hist(bins + 1, 0);
  for (auto& part : parts) {
    const auto local = part.get();
    for (std::size_t k = 0; k <= bins; ++k) hist[k] += local[k];
  }
  return hist;
}

struct SampledHistogram {
  std::vector<std::uint64_t> hist;
  std::uint64_t accepted = 0;
};

// Counter-based pair sampling: candidate k maps to a pair through
// splitmix64_mix(seed + counter), so any partition of the counter range
// yields identical totals.
SampledHistogram sampled_histogram(const PointCloud& cloud, std::span<const double> radii,
                                   std::size_t window, std::uint64_t candidates,
                                   std::uint64_t seed, std::size_t threads) {
  const std::size_t m = cloud.size();
  const std::size_t dim = cloud.dimension();
  const double* data = cloud.flat().data();
  const std::size_t bins = radii.size();

  auto count_range = [&](std::uint64_t begin, std::uint64_t end) {
    SampledHistogram out;
    out.hist.assign(bins + 1, 0);
    for (std::uint64_t k = begin; k < end; ++k) {
      const std::uint64_t h1 = rng::splitmix64_mix(seed + 2 * k);
      const std::uint64_t h2 = rng::splitmix64_mix(seed + 2 * k + 1);
      const auto i = static_cast<std::size_t>((static_cast<__uint128_t>(h1) * m) >> 64);
      const auto j = static_cast<std::size_t>((static_cast<__uint128_t>(h2) * m) >> 64);
      const std::size_t gap = i > j ? i - j : j - i;
      if (gap <= window) continue;
      out.accepted++;
      out.hist[bin_of(radii, max_norm_distance(data + i * dim, data + j * dim, dim))]++;
    }
    return out;
  };

  if (threads <= 1) return count_range(0, candidates);

  std::vector<std::future<SampledHistogram>> parts;
  parts.reserve(threads);
  const std::uint64_t chunk = (candidates + threads - 1) / threads;
  for (std::size_t t = 0; t < threads; ++t) {
    const std::uint64_t begin = t * chunk;
    const std::uint64_t end = std::min<std::uint64_t>(candidates, begin + chunk);
    if (begin >= end) break;
    parts.push_back(std::async(std::launch::async, count_range, begin, end));
  }
  SampledHistogram merged;
  merged.hist.assign(bins + 1, 0);
  for (auto& part : parts) {
    const auto local = part.get();
    merged.accepted += local.accepted;
    for (std::size_t k = 0; k <= bins; ++k) merged.hist[k] += local.hist[k];
  }
  return merged;
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms_residual = 0.0;
};

LineFit least_squares(std::span<const double> x, std::span<const double> y) {
  const auto n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ss += r * r;
  }
  fit.rms_residual = std::sqrt(ss / n);
  return fit;
}

}  // namespace

CorrelationCurve correlation_integral(const PointCloud& cloud, std::span<const double> radii,
                                      const CorrelationOptions& options) {
  check_radii(radii);
  if (cloud.size() < 2) {
    throw TooFewPoints("correlation integral needs at least 2 points, got " +
                       std::to_string(cloud.size()));
  }
  const std::uint64_t admissible = admissible_pair_count(cloud.size(), options.theiler_window);
  if (admissible == 0) {
    throw TooFewPoints("Theiler window " + std::to_string(options.theiler_window) +
                       " excludes every pair of the " + std::to_string(cloud.size()) +
                       "-point cloud");
  }

  const std::size_t threads = clamp_threads(options.threads);
  const bool subsampled = cloud.size() > options.exact_point_ceiling;

  std::vector<std::uint64_t> hist;
  std::uint64_t denominator = 0;
  if (subsampled) {
    auto sampled = sampled_histogram(cloud, radii, options.theiler_window,
                                     options.subsample_pairs, options.seed, threads);
    if (sampled.accepted == 0) {
      throw TooFewPoints("pair subsampling accepted no pairs; Theiler window too wide");
    }
    hist = std::move(sampled.hist);
    denominator = sampled.accepted;
  } else {
    hist = exact_histogram(cloud, radii, options.theiler_window, threads);
    denominator = admissible;
  }

  CorrelationCurve curve;
  curve.radii.assign(radii.begin(), radii.end());
  curve.n_pairs = denominator;
  curve.n_points = cloud.size();
  curve.embedding_dim = cloud.dimension();
  curve.theiler_window = options.theiler_window;
  curve.subsampled = subsampled;
  curve.pair_counts.resize(radii.size());
  curve.c_values.resize(radii.size());
  std::uint64_t running = 0;
  for (std::size_t k = 0; k < radii.size(); ++k) {
    running += hist[k];
    curve.pair_counts[k] = running;
    curve.c_values[k] = static_cast<double>(running) / static_cast<double>(denominator);
  }
  return curve;
}

std::vector<double> default_radius_grid(const PointCloud& cloud, const RadiusGridOptions& options) {
  if (options.count < 2) throw InvalidConfig("radius grid needs at least 2 radii");
  if (cloud.size() < 2) {
    throw TooFewPoints("radius grid needs at least 2 points, got " + std::to_string(cloud.size()));
  }
  const std::size_t m = cloud.size();
  const std::size_t dim = cloud.dimension();
  const double* data = cloud.flat().data();
  const std::size_t w = options.theiler_window;
  const std::uint64_t admissible = admissible_pair_count(m, w);
  if (admissible == 0) {
    throw TooFewPoints("Theiler window excludes every pair; cannot build a radius grid");
  }

  std::vector<double> distances;
  if (admissible <= options.sample_pairs) {
    distances.reserve(admissible);
    for (std::size_t i = 0; i + w + 1 < m; ++i) {
      for (std::size_t j = i + w + 1; j < m; ++j) {
        const double d = max_norm_distance(data + i * dim, data + j * dim, dim);
        if (d > 0.0) distances.push_back(d);
      }
    }
  } else {
    distances.reserve(options.sample_pairs);
    const std::uint64_t cap = 100 * options.sample_pairs;
    std::uint64_t accepted = 0;
    for (std::uint64_t k = 0; k < cap && accepted < options.sample_pairs; ++k) {
      const std::uint64_t h1 = rng::splitmix64_mix(options.seed + 2 * k);
      const std::uint64_t h2 = rng::splitmix64_mix(options.seed + 2 * k + 1);
      const auto i = static_cast<std::size_t>((static_cast<__uint128_t>(h1) * m) >> 64);
      const auto j = static_cast<std::size_t>((static_cast<__uint128_t>(h2) * m) >> 64);
      const std::size_t gap = i > j ? i - j : j - i;
      if (gap <= w) continue;
      ++accepted;
      const double d = max_norm_distance(data + i * dim, data + j * dim, dim);
      if (d > 0.0) distances.push_back(d);
    }
  }
  if (distances.empty()) {
    throw DegenerateSeries("all sampled pair distances are zero; no geometry to resolve");
  }

  std::sort(distances.begin(), distances.end());
  auto quantile = [&](double q) {
    const auto idx = static_cast<std::size_t>(q * static_cast<double>(distances.size() - 1));
    return distances[std::min(idx, distances.size() - 1)];
  };
  double lo = quantile(options.lo_quantile);
  const double hi = quantile(options.hi_quantile);
  if (!(lo < hi)) {
    // Heavy ties: fall back to the smallest positive distance, then give up.
    lo = distances.front();
    if (!(lo < hi)) {
      throw DegenerateSeries("pair distance distribution too degenerate for a radius grid");
    }
  }

  std::vector<double> grid(options.count);
  const double log_lo = std::log(lo);
  const double log_hi = std::log(hi);
  for (std::size_t k = 0; k < options.count; ++k) {
    const double f = static_cast<double>(k) / static_cast<double>(options.count - 1);
    grid[k] = std::exp(log_lo + f * (log_hi - log_lo));
  }
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

namespace {

struct Window {
  std::size_t first_slope = 0;
  std::size_t last_slope = 0;  // inclusive
  double span = 0.0;
  double spread = 0.0;
  bool valid = false;
};

// Longest run of consecutive local slopes whose spread stays below
// tol * median; ties broken by log-radius span, then by smaller spread.
Window longest_stable_window(const std::vector<double>& slopes, const std::vector<double>& log_r,
                             double tol) {
  Window best;
  std::size_t best_len = 0;
  for (std::size_t a = 0; a < slopes.size(); ++a) {
    for (std::size_t b = a + 1; b < slopes.size(); ++b) {
      std::vector<double> window(slopes.begin() + a, slopes.begin() + b + 1);
      const double med = median_of(window);
      if (!(med > 0.0)) continue;
      const auto [mn, mx] = std::minmax_element(window.begin(), window.end());
      const double spread = *mx - *mn;
      if (spread > tol * med) continue;
      const std::size_t len = b - a + 1;
      const double span = log_r[b + 1] - log_r[a];
      if (len > best_len || (len == best_len && (span > best.span ||
                                                 (span == best.span && spread < best.spread)))) {
        best = Window{a, b, span, spread, true};
        best_len = len;
      }
    }
  }
  return best;
}

}  // namespace

DimensionEstimate estimate_dimension(const CorrelationCurve& curve, std::optional<FitRange> range) {
  if (curve.radii.size() != curve.c_values.size() || curve.radii.empty()) {
    throw InvalidConfig("malformed correlation curve");
  }

  // Indices with C > 0 (log defined), restricted to the requested range.
  std::vector<std::size_t> usable;
  for (std::size_t k = 0; k < curve.radii.size(); ++k) {
    if (curve.c_values[k] <= 0.0) continue;
    if (range && (curve.radii[k] < range->r_lo || curve.radii[k] > range->r_hi)) continue;
    usable.push_back(k);
  }
  if (usable.size() < 3) {
    throw EmptyScalingRegion("need at least 3 radii with C > 0 " +
                             std::string(range ? "inside the fit range" : "on the grid") +
                             ", found " + std::to_string(usable.size()));
  }

  std::size_t fit_first = 0;
  std::size_t fit_last = usable.size() - 1;
  if (!range) {
    std::vector<double> log_r(usable.size()), log_c(usable.size());
    for (std::size_t k = 0; k < usable.size(); ++k) {
      log_r[k] = std::log(curve.radii[usable[k]]);
      log_c[k] = std::log(curve.c_values[usable[k]]);
    }
    std::vector<double> slopes(usable.size() - 1);
    for (std::size_t k = 0; k + 1 < usable.size(); ++k) {
      slopes[k] = (log_c[k + 1] - log_c[k]) / (log_r[k + 1] - log_r[k]);
    }
    Window window;
    for (double tol : {0.10, 0.20, 0.40, 0.80}) {
      window = longest_stable_window(slopes, log_r, tol);
      if (window.valid) break;
    }
    if (!window.valid) {
      throw EmptyScalingRegion("no scaling region: local slopes never stabilize on the grid");
    }
    fit_first = window.first_slope;
    fit_last = window.last_slope + 1;
  }

  std::vector<double> x, y;
  x.reserve(fit_last - fit_first + 1);
  y.reserve(fit_last - fit_first + 1);
  for (std::size_t k = fit_first; k <= fit_last; ++k) {
    x.push_back(std::log(curve.radii[usable[k]]));
    y.push_back(std::log(curve.c_values[usable[k]]));
  }
  const LineFit fit = least_squares(x, y);

  DimensionEstimate estimate;
  estimate.d2 = fit.slope;
  estimate.fit_range = {curve.radii[usable[fit_first]], curve.radii[usable[fit_last]]};
  estimate.fit_residual = fit.rms_residual;
  estimate.n_pairs_in_range =
      curve.pair_counts[usable[fit_last]] - curve.pair_counts[usable[fit_first]];
  return estimate;
}

std::vector<FnnPoint> false_nearest_neighbors(const IntervalSeries& series, std::size_t m_max,
                                              std::size_t tau, double threshold) {
  if (m_max < 1) throw InvalidConfig("m_max must be >= 1");
  if (tau < 1) throw InvalidConfig("tau must be >= 1");
  const auto& v = series.values();
  const std::size_t n = v.size();
  const std::size_t w = tau;  // lag-exclusion window

  // Checking dimension m needs the (m+1)-coordinate embedding, and every
  // point needs at least one admissible neighbor.
  const std::size_t required = m_max * tau + w + 2;
  if (n < required) {
    throw SeriesTooShort(required, "series of length " + std::to_string(n) +
                                       " too short for FNN up to m=" + std::to_string(m_max));
  }
  const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
  if (*mn == *mx) {
    throw DegenerateSeries("constant series: all neighbor distances are zero");
  }

  std::vector<FnnPoint> result;
  result.reserve(m_max);
  for (std::size_t m = 1; m <= m_max; ++m) {
    const std::size_t points = n - m * tau;  // valid in both m and m+1 embeddings
    std::size_t false_count = 0;
    for (std::size_t i = 0; i < points; ++i) {
      double best = std::numeric_limits<double>::infinity();
      std::size_t best_j = points;
      for (std::size_t j = 0; j < points; ++j) {
        const std::size_t gap = i > j ? i - j : j - i;
        if (gap <= w) continue;
        double d = 0.0;
        for (std::size_t c = 0; c < m; ++c) {
          const double diff = std::fabs(v[i + c * tau] - v[j + c * tau]);
          if (diff > d) d = diff;
        }
        if (d < best) {
          best = d;
          best_j = j;
        }
      }
      const double extra = std::fabs(v[i + m * tau] - v[best_j + m * tau]);
      const bool is_false = best == 0.0 ? extra > 0.0 : extra / best > threshold;
      if (is_false) ++false_count;
    }
    result.push_back({m, static_cast<double>(false_count) / static_cast<double>(points)});
  }
  return result;
}

CloudAnalysis analyze_cloud(const PointCloud& cloud, const AnalysisOptions& options,
                            std::uint64_t seed) {
  const std::size_t window = options.theiler_window < 0
                                 ? cloud.spec().delay
                                 : static_cast<std::size_t>(options.theiler_window);
  RadiusGridOptions grid_options;
  grid_options.count = options.radius_count;
  grid_options.seed = seed;
  grid_options.theiler_window = window;
  const auto grid = default_radius_grid(cloud, grid_options);

  CorrelationOptions corr_options;
  corr_options.theiler_window = window;
  corr_options.threads = options.threads;
  corr_options.exact_point_ceiling = options.exact_point_ceiling;
  corr_options.subsample_pairs = options.subsample_pairs;
  corr_options.seed = seed;

  CloudAnalysis analysis;
  analysis.curve = correlation_integral(cloud, grid, corr_options);
  analysis.dimension = estimate_dimension(analysis.curve);
  return analysis;
}

std::vector<double> permuted_values(const std::vector<double>& values, Seed seed) {
  std::vector<double> out = values;
  rng::Xoshiro256pp gen(seed.value);
  for (std::size_t i = out.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(gen.bounded(i));
    std::swap(out[i - 1], out[j]);
  }
  return out;
}

double rank_p_value(double observed, std::span<const double> surrogate_stats) {
  std::uint64_t at_or_below = 0;
  for (double s : surrogate_stats) {
    if (s <= observed) ++at_or_below;
  }
  return static_cast<double>(1 + at_or_below) / static_cast<double>(surrogate_stats.size() + 1);
}

SurrogateReport surrogate_test(const IntervalSeries& series, const EmbeddingSpec& spec,
                               std::size_t surrogate_count, double alpha, Seed seed,
                               const AnalysisOptions& options) {
  if (surrogate_count < 19) {
    throw InvalidConfig("need at least 19 surrogates so the p-value can reach 0.05");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidConfig("alpha must lie in (0,1)");
  spec.validate();

  SurrogateReport report;
  report.alpha = alpha;
  report.observed_stat = analyze_cloud(embed(series, spec), options, seed.value).dimension.d2;

  auto surrogate_stat = [&](std::size_t index) {
    const std::uint64_t stream = rng::derive_stream(seed.value, index + 1);
    IntervalSeries surrogate(permuted_values(series.values(), Seed{stream}),
                             series.label() + "/surrogate#" + std::to_string(index),
                             series.units());
    try {
      return analyze_cloud(embed(surrogate, spec), options, stream).dimension.d2;
    } catch (const Error& e) {
      throw SurrogateDegenerate(index, "surrogate " + std::to_string(index) +
                                           " failed dimension estimation: " + e.what());
    }
  };

  report.surrogate_stats.resize(surrogate_count);
  const std::size_t threads = std::min<std::size_t>(clamp_threads(options.threads),
                                                    surrogate_count);
  if (threads <= 1) {
    for (std::size_t s = 0; s < surrogate_count; ++s) {
      report.surrogate_stats[s] = surrogate_stat(s);
    }
  } else {
    // Every surrogate derives its own stream from the master seed, so the
    // work schedule cannot change any number.
    std::atomic<std::size_t> next{0};
    std::mutex failure_mutex;
    std::exception_ptr failure;
    auto worker = [&] {
      while (true) {
        const std::size_t s = next.fetch_add(1);
        if (s >= surrogate_count) break;
        try {
          report.surrogate_stats[s] = surrogate_stat(s);
        } catch (...) {
          const std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }

  report.p_value = rank_p_value(report.observed_stat, report.surrogate_stats);
  report.verdict = report.p_value <= alpha ? Verdict::structure_detected : Verdict::no_structure;
  return report;
}

}  // namespace chaoscope
