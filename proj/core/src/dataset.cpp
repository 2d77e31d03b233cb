#include "sqlr/dataset.hpp"

#include "sqlr/errors.hpp"

#include <utility>

namespace sqlr {

Dataset::Dataset(Matrix x, Vector y, std::vector<std::string> feature_names)
    : x_(std::move(x)), y_(std::move(y)), names_(std::move(feature_names)) {
  if (x_.rows() == 0) throw DataError("dataset has no rows");
  if (x_.cols() == 0) throw DataError("dataset has no feature columns");
  if (x_.rows() != y_.size()) {
    throw DataError("X has " + std::to_string(x_.rows()) + " rows but Y has " +
                    std::to_string(y_.size()) + " entries");
  }
  if (!x_.allFinite()) throw DataError("X contains non-finite values");
  if (!y_.allFinite()) throw DataError("Y contains non-finite values");
  if (!names_.empty() && static_cast<Index>(names_.size()) != x_.cols()) {
    throw DataError("feature name count does not match column count");
  }
}

std::string Dataset::feature_name(Index j) const {
  if (!names_.empty()) return names_.at(static_cast<std::size_t>(j));
  return "x" + std::to_string(j + 1);
}

Dataset Dataset::select_columns(const std::vector<Index>& columns) const {
  Matrix sub(n(), static_cast<Index>(columns.size()));
  std::vector<std::string> names;
  for (std::size_t k = 0; k < columns.size(); ++k) {
    const Index c = columns[k];
    if (c < 0 || c >= d()) throw DimensionError("column index out of range");
    sub.col(static_cast<Index>(k)) = x_.col(c);
    if (!names_.empty()) names.push_back(names_[static_cast<std::size_t>(c)]);
  }
  return Dataset(std::move(sub), y_, std::move(names));
}

Dataset Dataset::with_response(Vector y) const {
  return Dataset(x_, std::move(y), names_);
}

Dataset Dataset::permute_rows(const std::vector<Index>& order) const {
  if (static_cast<Index>(order.size()) != n()) {
    throw DimensionError("row permutation has wrong length");
  }
  Matrix px(n(), d());
  Vector py(n());
  for (Index i = 0; i < n(); ++i) {
    px.row(i) = x_.row(order[static_cast<std::size_t>(i)]);
    py[i] = y_[order[static_cast<std::size_t>(i)]];
  }
  return Dataset(std::move(px), std::move(py), names_);
}

}  // namespace sqlr
