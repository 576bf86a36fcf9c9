#include "chaoscope/pipeline.hpp"

namespace chaoscope {

// The seven canonical demo experiments. The CLI's `demo` command runs them
// by name; the copies under demos/ are kept byte-identical by a test.
// fig5 deliberately uses a synthetic degraded Poisson stream as a stand-in
// for real counter data and says so in its title.
const std::map<std::string, std::string>& demo_experiments() {
  static const std::map<std::string, std::string> demos = {
      {"fig1", R"(# fig1: a seemingly random interval series from a deterministic map
title = fig1: logistic-map interval series (k=4)
source = logistic
n = 4000
seed = 101
logistic.k = 4
logistic.x0 = 0.41
logistic.burn_in = 1000
embedding.dimension = 3
embedding.delay = 1
analysis.radii = 40
analysis.surrogates = 19
analysis.alpha = 0.05
)"},
      {"fig2", R"(# fig2: 2-D reconstruction of the logistic attractor
title = fig2: logistic attractor, 2-D reconstruction
source = logistic
n = 4000
seed = 101
logistic.k = 4
logistic.x0 = 0.41
logistic.burn_in = 1000
embedding.dimension = 3
embedding.delay = 1
analysis.radii = 40
analysis.surrogates = 19
analysis.alpha = 0.05
)"},
      {"fig3", R"(# fig3: 3-D reconstruction of the logistic attractor
title = fig3: logistic attractor, 3-D reconstruction
source = logistic
n = 4000
seed = 101
logistic.k = 4
logistic.x0 = 0.41
logistic.burn_in = 1000
embedding.dimension = 3
embedding.delay = 1
analysis.radii = 40
analysis.surrogates = 19
analysis.alpha = 0.05
)"},
      {"fig4", R"(# fig4: independent random intervals -> no structure in phase space
title = fig4: uniform random intervals (negative control)
source = uniform
n = 4000
seed = 202
uniform.mean = 0.5
uniform.spread = 0.5
embedding.dimension = 3
embedding.delay = 1
analysis.radii = 40
analysis.surrogates = 19
analysis.alpha = 0.05
)"},
      {"fig5", R"(# fig5: synthetic stand-in for real counter data: a Poisson event
# stream degraded by efficiency loss, dead time, clock quantization and
# background. Not measured data.
title = fig5: degraded Poisson stream (synthetic stand-in)
source = exponential
n = 6000
seed = 505
exponential.rate = 100
detector.enabled = true
detector.efficiency = 0.6
detector.dead_time = 0.002
detector.quantum = 0.0001
detector.background_rate = 2
embedding.dimension = 3
embedding.delay = 1
analysis.radii = 40
analysis.surrogates = 19
analysis.alpha = 0.05
)"},
      {"fig6", R"(# fig6: normal(mean, sigma) intervals around a given mean
title = fig6: gaussian intervals around a mean
source = gaussian
n = 4000
seed = 606
gaussian.mean = 1
gaussian.sigma = 0.2
embedding.dimension = 3
embedding.delay = 1
analysis.radii = 40
analysis.surrogates = 19
analysis.alpha = 0.05
)"},
      {"fig7", R"(# fig7: lognormal intervals around a given mean
title = fig7: lognormal intervals around a mean
source = lognormal
n = 4000
seed = 707
lognormal.mu = 0
lognormal.sigma = 0.5
embedding.dimension = 3
embedding.delay = 1
analysis.radii = 40
analysis.surrogates = 19
analysis.alpha = 0.05
)"},
  };
  return demos;
}

}  // namespace chaoscope
