#pragma once

#include "sqlr/sqlr_test.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sqlr {

struct LoadedData {
  Dataset data;
  Matrix covariates;  // n x k, may have zero columns
  std::vector<std::string> covariate_names;
  int dropped_rows = 0;  // rows with a missing value in a selected column
  std::vector<std::size_t> source_rows;  // data-row index in the file per kept row
};

// Missing cells are empty or one of NA, NaN, nan. An empty `features` list
// selects every column that is neither the response nor a covariate.
// Throws DataError on a missing column, a non-numeric cell (row and column
// are named) or when no complete rows remain.
LoadedData load_csv(const std::string& path, const std::string& response,
                    const std::vector<std::string>& features,
                    const std::vector<std::string>& covariates);

struct ScaledFeatures {
  Matrix x;
  std::vector<std::pair<double, double>> ranges;  // per column (min, max)
  std::vector<Index> constant_columns;            // mapped to 0
  std::vector<Index> low_level_columns;           // <= 3 distinct values
};

// Per-column affine map of [min, max] onto [-1, 1].
ScaledFeatures scale_features(const Matrix& x);
Matrix unscale_features(const Matrix& scaled,
                        const std::vector<std::pair<double, double>>& ranges);

// Residuals of y regressed on [1, covariates].
Vector adjust_covariates(const Vector& y, const Matrix& covariates);

struct ScanConfig {
  SieveShape shape{};
  TrainConfig null_config{3000, 0.1, 0, 0.5, true};
  TrainConfig alt_config{3000, 0.1 / 300.0, 0, 0.5, true};
  unsigned threads = 1;
};

struct ScanRow {
  Index feature = 0;
  std::string name;
  TestOutcome outcome;
  std::optional<double> p_ftest;  // empty when the linear model cannot be fit
  bool ftest_degenerate = false;
  int rank = 0;  // 1-based, by SQLR p-value
};

struct ScanResult {
  std::vector<ScanRow> rows;  // sorted by rank
};

// Tests S = {j} for every column j. Every feature uses the seeds in
// `config` unchanged, so identical columns give identical statistics.
// Rows are stably sorted by SQLR p-value, ties by feature index.
ScanResult scan(const Dataset& data, const ScanConfig& config);

}  // namespace sqlr
