#pragma once

#include "sqlr/rng.hpp"
#include "sqlr/sieve_network.hpp"

#include <cstdint>
#include <functional>

namespace sqlr {

struct TrainConfig {
  int iterations = 3000;
  // c in step_k = c / ln(e + k), k = 1, 2, ...
  double step_base = 0.1;
  std::uint64_t seed = 0;
  // Half-width of the uniform initializer.
  double init_scale = 0.5;
  // Return the lowest-loss iterate (initial point included) instead of the
  // last one.
  bool track_best = true;

  // Throws std::invalid_argument when iterations < 1, step_base <= 0 or
  // init_scale < 0 (or any of them is not finite).
  void validate() const;
};

struct TrainResult {
  SieveNetwork network;
  double loss = 0.0;          // Q_n of the returned network
  double initial_loss = 0.0;  // Q_n of the starting point
  int best_iteration = 0;     // 0 means the starting point was kept
};

// Step size of the k-th iteration (k >= 1).
double step_size(double step_base, int k);

// Weights i.i.d. uniform on [-init_scale, init_scale] drawn in the order
// alpha0, alphas, gammas (row-major), gamma0s; then projected.
SieveNetwork random_network(Index input_dim, Index width, double v_budget,
                            double m_budget, double init_scale,
                            std::uint64_t seed);

// Called once per iterate (the starting point as iteration 0) with the
// projected weights and their loss.
using IterateObserver =
    std::function<void(int iteration, const SieveNetwork&, double loss)>;

// Projected gradient descent on Q_n:
//   w <- project_constraints(w - step_k * grad Q_n(w)).
// Deterministic in (data, config, init). Throws std::invalid_argument when
// `init` violates the budget and DimensionError when it does not match data.
TrainResult train(const Dataset& data, const TrainConfig& config,
                  const SieveNetwork& init,
                  const IterateObserver& observer = {});

}  // namespace sqlr
