#pragma once

#include "sqlr/dataset.hpp"
#include "sqlr/distributions.hpp"

#include <vector>

namespace sqlr {

struct OlsFit {
  Vector coefficients;  // intercept first, then one per selected column
  Vector residuals;
  double rss = 0.0;
  Index n = 0;
  Index p = 0;  // predictors, intercept excluded
};

// Least squares of y on [1, x.col(c) for c in columns] via Householder QR of
// the column-equilibrated design. Throws DegenerateError when a diagonal of
// R falls below 1e-10 (rank deficiency) and DataError when n <= p + 1.
OlsFit ols_fit(const Matrix& x, const Vector& y, const std::vector<Index>& columns);
OlsFit ols_fit(const Dataset& data, const std::vector<Index>& columns);

struct FTestResult {
  double f_stat = 0.0;
  PValue p_value;
  double rss_reduced = 0.0;  // without the tested feature
  double rss_full = 0.0;
  long long df_residual = 0;
  bool degenerate = false;  // rss_full zero up to rounding; reported as p = 0
};

// Partial F-test of one coefficient with every other column retained:
//   F = (rss0 - rss1) / (rss1 / (n - d - 1)),  p = P(F(1, n - d - 1) > F).
FTestResult f_test_feature(const Dataset& data, Index feature);

}  // namespace sqlr
