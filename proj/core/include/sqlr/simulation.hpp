#pragma once

#include "sqlr/sqlr_test.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sqlr {

// Y = 8 + X1 X2 + exp(X3 X4) + 0.1 X5 + noise_sd * eps,
// X ~ Uniform([-1, 1]^d), eps ~ N(0, 1). Column 6 (and any beyond) is inert.
struct SimModel {
  Index n = 500;
  Index d = 6;
  double noise_sd = 1.0;
  std::uint64_t seed = 0;
};

double sim_regression_function(const Eigen::Ref<const Vector>& x);

// Row by row: d draws of Rng::uniform(-1, 1), then one Rng::normal().
Dataset gen_data(const SimModel& model);

enum class Method { Sqlr, FTest };
std::string method_name(Method m);

struct McCell {
  Index feature = 0;  // 0-based column
  Index n = 0;
  Method method = Method::Sqlr;
  int rejections = 0;
  int reps = 0;
  double rate() const { return reps > 0 ? static_cast<double>(rejections) / reps : 0.0; }
  friend bool operator==(const McCell&, const McCell&) = default;
};

struct McReport {
  double level = 0.05;
  std::uint64_t base_seed = 0;
  std::vector<McCell> cells;
  // Diagnostics across every SQLR test in the run.
  int clamp_count = 0;
  int nesting_violations = 0;
  friend bool operator==(const McReport&, const McReport&) = default;
};

struct McConfig {
  Index n = 500;
  int reps = 500;
  int first_rep = 0;  // replications first_rep .. first_rep + reps - 1
  double level = 0.05;
  std::vector<Index> features{0, 1, 2, 3, 4, 5};
  std::uint64_t base_seed = 0;
  std::vector<Method> methods{Method::Sqlr, Method::FTest};
  SieveShape shape{};
  TrainConfig null_config{3000, 0.1, 0, 0.5, true};
  TrainConfig alt_config{3000, 0.1 / 300.0, 0, 0.5, true};
  unsigned threads = 1;  // 0 uses std::thread::hardware_concurrency()

  void validate() const;
};

// Seed of replication t: derive_seed(base_seed, t). The training seed for
// every feature tested on that replication is derive_seed(rep_seed, 1).
std::uint64_t replication_seed(std::uint64_t base_seed, int rep);
std::uint64_t replication_train_seed(std::uint64_t rep_seed);

// One dataset per replication; every requested feature is tested on it by
// each requested method. Rejection means p < level. Output does not depend
// on `threads`.
McReport run_mc(const McConfig& config);

// Rows are features, columns are (method, n); rates to three decimals.
struct RateTable {
  std::vector<Index> features;
  std::vector<std::pair<Method, Index>> columns;
  std::vector<std::vector<std::optional<double>>> rates;  // [row][column]
  double level = 0.05;

  std::string to_text() const;
};

// Merges reports into one table. Throws std::invalid_argument on empty input
// and DataError when reports disagree on the level or on a repeated cell.
RateTable table_report(const std::vector<McReport>& reports);

}  // namespace sqlr
