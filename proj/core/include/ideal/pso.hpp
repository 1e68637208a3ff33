#pragma once

#include <functional>
#include <utility>

#include "ideal/rng.hpp"
#include "ideal/types.hpp"

namespace ideal {

// Global-best particle swarm with constriction-style coefficients. Velocity
// is clamped to half the box width per dimension.
struct PsoConfig {
  int swarm_size = 30;
  int iterations = 200;
  double inertia = 0.729;
  double cognitive = 1.494;
  double social = 1.494;
  double velocity_clamp = 0.5;  // fraction of the box width
};

// Maximizes f over the box. Positions are clamped to the box with velocity
// reversal on contact, so f is only ever evaluated inside it. Non-finite
// objective values are treated as -inf and never selected. Deterministic for
// a fixed rng state; global-best ties break to the lowest particle index.
// `observer`, when set, receives the best value after every iteration.
std::pair<FeatureVector, double> pso_maximize(
    const std::function<double(const FeatureVector&)>& f, const Bounds& bounds,
    const PsoConfig& config, Rng& rng,
    const std::function<void(int, double)>& observer = nullptr);

}  // namespace ideal
