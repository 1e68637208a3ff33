#include "ideal/pso.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace ideal {

namespace {

double safe_eval(const std::function<double(const FeatureVector&)>& f,
                 const FeatureVector& x) {
  const double v = f(x);
  return std::isfinite(v) ? v : -std::numeric_limits<double>::infinity();
}

}  // namespace

std::pair<FeatureVector, double> pso_maximize(
    const std::function<double(const FeatureVector&)>& f, const Bounds& bounds,
    const PsoConfig& config, Rng& rng,
    const std::function<void(int, double)>& observer) {
  if (config.swarm_size < 2) {
    throw std::invalid_argument("pso_maximize: swarm size must be >= 2");
  }
  const int n = bounds.dim();
  FeatureVector vmax(n);
  for (int d = 0; d < n; ++d) {
    vmax[d] = config.velocity_clamp * (bounds.x_max[d] - bounds.x_min[d]);
  }

  std::vector<FeatureVector> pos(config.swarm_size), vel(config.swarm_size);
  std::vector<FeatureVector> pbest(config.swarm_size);
  std::vector<double> pbest_val(config.swarm_size);
  for (int p = 0; p < config.swarm_size; ++p) {
    pos[p].resize(n);
    vel[p].resize(n);
    for (int d = 0; d < n; ++d) {
      pos[p][d] = rng.uniform(bounds.x_min[d], bounds.x_max[d]);
      vel[p][d] = rng.uniform(-vmax[d], vmax[d]);
    }
    pbest[p] = pos[p];
    pbest_val[p] = safe_eval(f, pos[p]);
  }

  int gbest = 0;
  for (int p = 1; p < config.swarm_size; ++p) {
    if (pbest_val[p] > pbest_val[gbest]) gbest = p;
  }

  for (int iter = 0; iter < config.iterations; ++iter) {
    for (int p = 0; p < config.swarm_size; ++p) {
      for (int d = 0; d < n; ++d) {
        const double r1 = rng.uniform();
        const double r2 = rng.uniform();
        double v = config.inertia * vel[p][d] +
                   config.cognitive * r1 * (pbest[p][d] - pos[p][d]) +
                   config.social * r2 * (pbest[gbest][d] - pos[p][d]);
        v = std::clamp(v, -vmax[d], vmax[d]);
        double x = pos[p][d] + v;
        if (x < bounds.x_min[d]) {
          x = bounds.x_min[d];
          v = -v;
        } else if (x > bounds.x_max[d]) {
          x = bounds.x_max[d];
          v = -v;
        }
        vel[p][d] = v;
        pos[p][d] = x;
      }
      const double value = safe_eval(f, pos[p]);
      if (value > pbest_val[p]) {
        pbest_val[p] = value;
        pbest[p] = pos[p];
      }
    }
    // Serial reduction once per iteration; lowest index wins ties.
    int best = 0;
    for (int p = 1; p < config.swarm_size; ++p) {
      if (pbest_val[p] > pbest_val[best]) best = p;
    }
    gbest = best;
    if (observer) observer(iter, pbest_val[gbest]);
  }
  return {pbest[gbest], pbest_val[gbest]};
}

}  // namespace ideal
