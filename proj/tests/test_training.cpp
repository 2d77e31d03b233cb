#include "sqlr/errors.hpp"
#include "sqlr/training.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace sqlr {
namespace {

Dataset noisy_data(std::uint64_t seed, Index n, Index d) {
  Rng rng(seed);
  Matrix x(n, d);
  Vector y(n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < d; ++j) x(i, j) = rng.uniform(-1, 1);
    y[i] = std::sin(2.0 * x(i, 0)) + 0.3 * rng.normal();
  }
  return Dataset(x, y);
}

TEST(TrainConfig, Validation) {
  EXPECT_THROW((TrainConfig{0, 0.1}).validate(), std::invalid_argument);
  EXPECT_THROW((TrainConfig{1, 0.0}).validate(), std::invalid_argument);
  EXPECT_THROW((TrainConfig{1, -1.0}).validate(), std::invalid_argument);
  EXPECT_THROW((TrainConfig{1, 0.1, 0, -0.5}).validate(), std::invalid_argument);
  EXPECT_NO_THROW((TrainConfig{1, 0.1}).validate());
}

TEST(StepSize, NaturalLogSchedule) {
  EXPECT_DOUBLE_EQ(step_size(0.1, 1), 0.1 / std::log(std::numbers::e + 1.0));
  EXPECT_LT(step_size(0.1, 100), step_size(0.1, 10));
}

TEST(RandomNetwork, UniformWithinScaleAndFeasible) {
  const SieveNetwork net = random_network(3, 6, 1000.0, 1000.0, 0.5, 77);
  EXPECT_TRUE(net.is_feasible());
  EXPECT_LE(std::abs(net.alpha0), 0.5);
  EXPECT_LE(net.gammas.lpNorm<Eigen::Infinity>(), 0.5);
  const SieveNetwork again = random_network(3, 6, 1000.0, 1000.0, 0.5, 77);
  EXPECT_EQ(net.gammas, again.gammas);
  const SieveNetwork tight = random_network(3, 6, 5.0, 0.3, 2.0, 77);
  EXPECT_TRUE(tight.is_feasible());
}

TEST(Train, RejectsInvalidInputs) {
  const Dataset data = noisy_data(1, 20, 2);
  const SieveNetwork init(2, 2, 10.0, 10.0);
  EXPECT_THROW(train(data, TrainConfig{1, 0.0}, init), std::invalid_argument);
  EXPECT_THROW(train(data, TrainConfig{1, 0.1}, SieveNetwork(3, 2, 10.0, 10.0)), DimensionError);
  SieveNetwork infeasible = init;
  infeasible.alpha0 = 50.0;
  EXPECT_THROW(train(data, TrainConfig{1, 0.1}, infeasible), std::invalid_argument);
}

TEST(Train, StationaryStartIsKept) {
  // Zero network on all-zero targets: residual and gradient are zero.
  const Dataset data(Matrix::Constant(5, 2, 0.3), Vector::Zero(5));
  const SieveNetwork init(2, 3, 10.0, 10.0);
  const TrainResult r = train(data, TrainConfig{10, 0.5}, init);
  EXPECT_EQ(r.loss, 0.0);
  EXPECT_EQ(r.network.alphas, init.alphas);
  EXPECT_EQ(r.network.gammas, init.gammas);
  EXPECT_EQ(r.best_iteration, 0);
}

TEST(Train, ConstantTargetImproves) {
  const Dataset data(noisy_data(2, 40, 2).x(), Vector::Constant(40, 3.0));
  const SieveNetwork init(2, 3, 10.0, 10.0);
  const TrainResult r = train(data, TrainConfig{200, 0.1}, init);
  EXPECT_LE(r.loss, 9.0);
  EXPECT_LT(r.loss, 1e-3);
}

TEST(Train, RecoversSingleSigmoid) {
  const Index n = 50;
  Matrix x(n, 1);
  Vector y(n);
  for (Index i = 0; i < n; ++i) {
    x(i, 0) = -1.0 + 2.0 * static_cast<double>(i) / (n - 1);
    y[i] = sigmoid(x(i, 0));
  }
  const Dataset data(x, y);
  const SieveNetwork init = random_network(1, 4, 1000.0, 1000.0, 0.5, 3);
  const TrainResult r = train(data, TrainConfig{5000, 0.1}, init);
  EXPECT_LT(r.loss, 1e-3);
}

TEST(Train, EveryIterateFeasibleAndBestIsMonotone) {
  const Dataset data = noisy_data(4, 60, 3);
  const SieveNetwork init = random_network(3, 5, 6.0, 1.0, 3.0, 9);
  double best_seen = mse(init, data);
  int count = 0;
  const TrainResult r =
      train(data, TrainConfig{300, 2.0}, init, [&](int, const SieveNetwork& w, double loss) {
        ++count;
        ASSERT_TRUE(w.is_feasible());
        EXPECT_NEAR(loss, mse(w, data), 1e-12);
        best_seen = std::min(best_seen, loss);
      });
  EXPECT_EQ(count, 301);
  EXPECT_EQ(r.loss, best_seen);
  EXPECT_LE(r.loss, r.initial_loss);
  EXPECT_TRUE(r.network.is_feasible());
  EXPECT_DOUBLE_EQ(mse(r.network, data), r.loss);
}

TEST(Train, LastIterateWhenNotTracking) {
  const Dataset data = noisy_data(5, 30, 2);
  const SieveNetwork init = random_network(2, 3, 1000.0, 1000.0, 0.5, 1);
  TrainConfig cfg{50, 0.1};
  cfg.track_best = false;
  SieveNetwork last;
  train(data, cfg, init, [&](int, const SieveNetwork& w, double) { last = w; });
  const TrainResult r = train(data, cfg, init);
  EXPECT_EQ(r.network.gammas, last.gammas);
  EXPECT_EQ(r.best_iteration, 50);
}

TEST(Train, Deterministic) {
  const Dataset data = noisy_data(6, 80, 3);
  const SieveNetwork init = random_network(3, 6, 1000.0, 1000.0, 0.5, 2);
  const TrainResult a = train(data, TrainConfig{200, 0.1}, init);
  const TrainResult b = train(data, TrainConfig{200, 0.1}, init);
  EXPECT_EQ(a.loss, b.loss);
  EXPECT_EQ(a.network.alphas, b.network.alphas);
  EXPECT_EQ(a.network.gammas, b.network.gammas);
  EXPECT_EQ(a.network.gamma0s, b.network.gamma0s);
  EXPECT_EQ(a.network.alpha0, b.network.alpha0);
}

}  // namespace
}  // namespace sqlr
