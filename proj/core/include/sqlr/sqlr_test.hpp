#pragma once

#include "sqlr/distributions.hpp"
#include "sqlr/training.hpp"

#include <vector>

namespace sqlr {

// Set of tested input columns (0-based), kept sorted.
class HypothesisSpec {
 public:
  // Throws std::invalid_argument if empty or if an index repeats.
  explicit HypothesisSpec(std::vector<Index> tested);

  const std::vector<Index>& tested() const { return tested_; }
  bool contains(Index column) const;
  // Throws DimensionError if any index is >= d.
  void check(Index d) const;
  // Columns of a d-column design that are not tested, ascending.
  std::vector<Index> retained(Index d) const;

 private:
  std::vector<Index> tested_;
};

struct SieveShape {
  Index width = 0;  // 0 selects floor(sqrt(n))
  double v_budget = 1000.0;
  double m_budget = 1000.0;

  Index resolve_width(Index n) const;
};

struct LrStatistic {
  double value = 0.0;
  double raw = 0.0;  // n (loss_null - loss_alt) before clamping
  bool clamped = false;
};

struct TestOutcome {
  double lr_stat = 0.0;
  double lr_raw = 0.0;
  bool clamped = false;
  double sigma_hat_sq = 0.0;
  double scaled_stat = 0.0;
  PValue p_value;
  double loss_null = 0.0;
  double loss_alt = 0.0;
  std::vector<Index> tested;
};

// Null-space fit: a network of input dimension d whose weights on every
// tested column are exactly zero. Trained from a random start on the
// retained columns, then re-embedded. When every column is tested the
// constant network alpha0 = mean(Y) is returned.
SieveNetwork fit_null(const Dataset& data, const HypothesisSpec& spec,
                      const SieveShape& shape, const TrainConfig& config);

// Full-sieve fit warm-started at `null_net` (tested weights start at zero).
TrainResult fit_alt(const Dataset& data, const TrainConfig& config,
                    const SieveNetwork& null_net);

// max(0, n (loss_null - loss_alt)).
LrStatistic lr_statistic(double loss_null, double loss_alt, Index n);

// Q_n of the null fit; throws DegenerateError when it is zero.
double sigma_hat_sq(const Dataset& data, const SieveNetwork& null_net);

// fit_null -> fit_alt -> LR_n / sigma_hat^2 -> chi-square(1) tail.
TestOutcome sqlr_test(const Dataset& data, const HypothesisSpec& spec,
                      const SieveShape& shape, const TrainConfig& null_config,
                      const TrainConfig& alt_config);

}  // namespace sqlr
