#include "sqlr/ftest.hpp"

#include "sqlr/errors.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <string>

namespace sqlr {

namespace {
constexpr double kRankTolerance = 1e-10;
}

OlsFit ols_fit(const Matrix& x, const Vector& y, const std::vector<Index>& columns) {
  const Index n = x.rows();
  const Index p = static_cast<Index>(columns.size());
  if (y.size() != n) throw DimensionError("response length does not match design rows");
  if (n <= p + 1) {
    throw DataError("least squares needs n > p + 1 (n = " + std::to_string(n) +
                    ", p = " + std::to_string(p) + ")");
  }

  Matrix design(n, p + 1);
  design.col(0).setOnes();
  for (Index k = 0; k < p; ++k) {
    const Index c = columns[static_cast<std::size_t>(k)];
    if (c < 0 || c >= x.cols()) throw DimensionError("column index out of range");
    design.col(k + 1) = x.col(c);
  }

  // Unit-norm columns make the rank threshold scale free.
  Vector col_norm = design.colwise().norm().transpose();
  for (Index k = 0; k <= p; ++k) {
    if (col_norm[k] == 0.0) {
      throw DegenerateError("design column " + std::to_string(k) + " is identically zero");
    }
    design.col(k) /= col_norm[k];
  }

  const Eigen::HouseholderQR<Matrix> qr(design);
  const auto r_diag = qr.matrixQR().diagonal();
  for (Index k = 0; k <= p; ++k) {
    if (std::abs(r_diag[k]) < kRankTolerance) {
      throw DegenerateError("design matrix is rank deficient");
    }
  }

  OlsFit fit;
  fit.n = n;
  fit.p = p;
  const Vector scaled = qr.solve(y);
  fit.coefficients = scaled.array() / col_norm.array();
  fit.residuals = y - design * scaled;
  fit.rss = fit.residuals.squaredNorm();
  return fit;
}

OlsFit ols_fit(const Dataset& data, const std::vector<Index>& columns) {
  return ols_fit(data.x(), data.y(), columns);
}

FTestResult f_test_feature(const Dataset& data, Index feature) {
  const Index d = data.d();
  if (feature < 0 || feature >= d) throw DimensionError("feature index out of range");

  std::vector<Index> all(static_cast<std::size_t>(d));
  for (Index j = 0; j < d; ++j) all[static_cast<std::size_t>(j)] = j;
  std::vector<Index> reduced;
  std::copy_if(all.begin(), all.end(), std::back_inserter(reduced),
               [feature](Index j) { return j != feature; });

  const OlsFit full = ols_fit(data, all);
  const OlsFit without = ols_fit(data, reduced);

  FTestResult out;
  out.rss_full = full.rss;
  // Nested fits: rss can only drop when a column is added.
  out.rss_reduced = std::max(without.rss, full.rss);
  out.df_residual = static_cast<long long>(data.n() - d - 1);
  // Residuals at rounding level count as an exact fit.
  const double eps = 64.0 * std::numeric_limits<double>::epsilon();
  if (!(out.rss_full > eps * eps * data.y().squaredNorm())) {
    out.degenerate = true;
    out.f_stat = std::numeric_limits<double>::infinity();
    out.p_value = PValue(0.0);
    return out;
  }
  out.f_stat = (out.rss_reduced - out.rss_full) /
               (out.rss_full / static_cast<double>(out.df_residual));
  out.p_value = f_sf(out.f_stat, 1, out.df_residual);
  return out;
}

}  // namespace sqlr
