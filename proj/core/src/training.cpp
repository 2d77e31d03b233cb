#include "sqlr/training.hpp"

#include "sqlr/errors.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sqlr {

void TrainConfig::validate() const {
  if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
  if (!(step_base > 0.0) || !std::isfinite(step_base)) {
    throw std::invalid_argument("step_base must be finite and > 0");
  }
  if (!(init_scale >= 0.0) || !std::isfinite(init_scale)) {
    throw std::invalid_argument("init_scale must be finite and >= 0");
  }
}

double step_size(double step_base, int k) {
  return step_base / std::log(std::numbers::e + static_cast<double>(k));
}

SieveNetwork random_network(Index input_dim, Index width, double v_budget,
                            double m_budget, double init_scale,
                            std::uint64_t seed) {
  SieveNetwork net(input_dim, width, v_budget, m_budget);
  Rng rng(seed);
  auto draw = [&] { return rng.uniform(-init_scale, init_scale); };
  net.alpha0 = draw();
  for (Index j = 0; j < width; ++j) net.alphas[j] = draw();
  for (Index j = 0; j < width; ++j) {
    for (Index i = 0; i < input_dim; ++i) net.gammas(j, i) = draw();
  }
  for (Index j = 0; j < width; ++j) net.gamma0s[j] = draw();
  return project_constraints(std::move(net));
}

TrainResult train(const Dataset& data, const TrainConfig& config,
                  const SieveNetwork& init, const IterateObserver& observer) {
  config.validate();
  if (init.input_dim() != data.d()) {
    throw DimensionError("initial network expects " + std::to_string(init.input_dim()) +
                         " inputs, data has " + std::to_string(data.d()));
  }
  if (!init.is_feasible()) {
    throw std::invalid_argument("initial network violates the l1 budget");
  }

  LossEvaluator eval(data.x(), data.y());
  Gradient grad;

  SieveNetwork current = init;
  TrainResult result;
  result.initial_loss = eval.loss_and_gradient(current, grad);
  result.network = current;
  result.loss = result.initial_loss;
  if (observer) observer(0, current, result.initial_loss);

  for (int k = 1; k <= config.iterations; ++k) {
    const double step = step_size(config.step_base, k);
    current.alpha0 -= step * grad.d_alpha0;
    current.alphas -= step * grad.d_alphas;
    current.gammas -= step * grad.d_gammas;
    current.gamma0s -= step * grad.d_gamma0s;
    if (!current.is_finite()) {
      throw DegenerateError("training diverged to non-finite weights at iteration " +
                            std::to_string(k));
    }
    current = project_constraints(std::move(current));

    // The last iterate needs no gradient.
    const double loss = (k < config.iterations) ? eval.loss_and_gradient(current, grad)
                                                : eval.loss(current);
    if (observer) observer(k, current, loss);
    if (!config.track_best || loss < result.loss) {
      result.loss = loss;
      result.best_iteration = k;
      if (config.track_best) result.network = current;
    }
  }
  if (!config.track_best) result.network = std::move(current);
  return result;
}

}  // namespace sqlr
