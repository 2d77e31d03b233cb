#include "sqlr/pipeline.hpp"

#include "sqlr/csv.hpp"
#include "sqlr/errors.hpp"
#include "sqlr/ftest.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

namespace sqlr {

namespace {

bool is_missing(const std::string& cell) {
  return cell.empty() || cell == "NA" || cell == "NaN" || cell == "nan";
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

double parse_number(const std::string& cell, std::size_t row, const std::string& column) {
  const std::string t = trim(cell);
  double value = 0.0;
  const char* begin = t.data();
  const char* end = t.data() + t.size();
  if (!t.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw DataError("non-numeric value '" + cell + "' at data row " + std::to_string(row + 1) +
                    ", column '" + column + "'");
  }
  return value;
}

}  // namespace

LoadedData load_csv(const std::string& path, const std::string& response,
                    const std::vector<std::string>& features,
                    const std::vector<std::string>& covariates) {
  const CsvTable table = read_csv(path);
  const std::size_t y_col = table.column(response);
  std::vector<std::size_t> cov_cols;
  for (const auto& c : covariates) cov_cols.push_back(table.column(c));

  std::vector<std::string> feature_names = features;
  if (feature_names.empty()) {
    const std::set<std::string> excluded(covariates.begin(), covariates.end());
    for (const auto& h : table.header) {
      if (h != response && !excluded.contains(h)) feature_names.push_back(h);
    }
  }
  if (feature_names.empty()) throw DataError("no feature columns selected");
  std::vector<std::size_t> x_cols;
  for (const auto& f : feature_names) x_cols.push_back(table.column(f));

  std::vector<std::size_t> keep;
  int dropped = 0;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    bool missing = is_missing(trim(row[y_col]));
    for (std::size_t c : x_cols) missing = missing || is_missing(trim(row[c]));
    for (std::size_t c : cov_cols) missing = missing || is_missing(trim(row[c]));
    if (missing) {
      ++dropped;
    } else {
      keep.push_back(r);
    }
  }
  if (keep.empty()) throw DataError("no complete rows in '" + path + "'");

  const auto n = static_cast<Index>(keep.size());
  Matrix x(n, static_cast<Index>(x_cols.size()));
  Matrix cov(n, static_cast<Index>(cov_cols.size()));
  Vector y(n);
  for (Index i = 0; i < n; ++i) {
    const std::size_t r = keep[static_cast<std::size_t>(i)];
    const auto& row = table.rows[r];
    y[i] = parse_number(row[y_col], r, response);
    for (std::size_t k = 0; k < x_cols.size(); ++k) {
      x(i, static_cast<Index>(k)) = parse_number(row[x_cols[k]], r, table.header[x_cols[k]]);
    }
    for (std::size_t k = 0; k < cov_cols.size(); ++k) {
      cov(i, static_cast<Index>(k)) = parse_number(row[cov_cols[k]], r, table.header[cov_cols[k]]);
    }
  }
  return LoadedData{Dataset(std::move(x), std::move(y), feature_names), std::move(cov),
                    covariates, dropped, std::move(keep)};
}

ScaledFeatures scale_features(const Matrix& x) {
  ScaledFeatures out;
  out.x.resize(x.rows(), x.cols());
  for (Index j = 0; j < x.cols(); ++j) {
    const double lo = x.col(j).minCoeff();
    const double hi = x.col(j).maxCoeff();
    out.ranges.emplace_back(lo, hi);
    if (!(hi > lo)) {
      out.constant_columns.push_back(j);
      out.x.col(j).setZero();
    } else {
      const double span = hi - lo;
      for (Index i = 0; i < x.rows(); ++i) {
        out.x(i, j) = std::clamp(2.0 * (x(i, j) - lo) / span - 1.0, -1.0, 1.0);
      }
    }
    std::set<double> levels;
    for (Index i = 0; i < x.rows() && levels.size() <= 3; ++i) levels.insert(x(i, j));
    if (levels.size() <= 3 && !(levels.size() == 1)) out.low_level_columns.push_back(j);
  }
  return out;
}

Matrix unscale_features(const Matrix& scaled,
                        const std::vector<std::pair<double, double>>& ranges) {
  if (static_cast<Index>(ranges.size()) != scaled.cols()) {
    throw DimensionError("range count does not match column count");
  }
  Matrix x(scaled.rows(), scaled.cols());
  for (Index j = 0; j < scaled.cols(); ++j) {
    const auto [lo, hi] = ranges[static_cast<std::size_t>(j)];
    x.col(j) = ((scaled.col(j).array() + 1.0) * 0.5 * (hi - lo) + lo).matrix();
  }
  return x;
}

Vector adjust_covariates(const Vector& y, const Matrix& covariates) {
  if (covariates.rows() != y.size()) {
    throw DimensionError("covariate rows do not match response length");
  }
  if (covariates.cols() == 0) return (y.array() - y.mean()).matrix();
  std::vector<Index> all(static_cast<std::size_t>(covariates.cols()));
  for (Index k = 0; k < covariates.cols(); ++k) all[static_cast<std::size_t>(k)] = k;
  return ols_fit(covariates, y, all).residuals;
}

ScanResult scan(const Dataset& data, const ScanConfig& config) {
  config.null_config.validate();
  config.alt_config.validate();
  const auto d = static_cast<std::size_t>(data.d());
  std::vector<ScanRow> rows(d);

  auto run_feature = [&](std::size_t j) {
    ScanRow row;
    row.feature = static_cast<Index>(j);
    row.name = data.feature_name(row.feature);
    row.outcome = sqlr_test(data, HypothesisSpec({row.feature}), config.shape,
                            config.null_config, config.alt_config);
    try {
      const FTestResult f = f_test_feature(data, row.feature);
      row.p_ftest = f.p_value.value();
      row.ftest_degenerate = f.degenerate;
    } catch (const DataError&) {
      row.p_ftest.reset();  // n <= d + 1
    } catch (const DegenerateError&) {
      row.p_ftest.reset();  // rank-deficient design
    }
    rows[j] = std::move(row);
  };

  const unsigned threads = std::clamp<unsigned>(
      config.threads == 0 ? std::thread::hardware_concurrency() : config.threads, 1,
      static_cast<unsigned>(std::max<std::size_t>(d, 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t j = next++; j < d; j = next++) {
      try {
        run_feature(j);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = d;
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  std::stable_sort(rows.begin(), rows.end(), [](const ScanRow& a, const ScanRow& b) {
    return a.outcome.p_value.value() < b.outcome.p_value.value();
  });
  for (std::size_t k = 0; k < rows.size(); ++k) rows[k].rank = static_cast<int>(k + 1);
  return ScanResult{std::move(rows)};
}

}  // namespace sqlr
