#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <string>
#include <vector>

namespace sqlr {

using Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Regression sample (X, Y): n rows, d input columns. Immutable once built.
class Dataset {
 public:
  // Throws DataError on n == 0, mismatched lengths, non-finite entries or a
  // name list whose length differs from d.
  Dataset(Matrix x, Vector y, std::vector<std::string> feature_names = {});

  Index n() const { return x_.rows(); }
  Index d() const { return x_.cols(); }
  const Matrix& x() const { return x_; }
  const Vector& y() const { return y_; }
  const std::vector<std::string>& feature_names() const { return names_; }

  // Name of column j; "x<j+1>" when no names were supplied.
  std::string feature_name(Index j) const;

  // Copy keeping only the listed columns, in the listed order.
  Dataset select_columns(const std::vector<Index>& columns) const;
  // Copy with the same X and a different response.
  Dataset with_response(Vector y) const;
  // Copy with rows reordered by `order` (a permutation of 0..n-1).
  Dataset permute_rows(const std::vector<Index>& order) const;

 private:
  Matrix x_;
  Vector y_;
  std::vector<std::string> names_;
};

}  // namespace sqlr
