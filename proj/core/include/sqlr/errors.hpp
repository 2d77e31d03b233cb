#pragma once

#include <stdexcept>
#include <string>

namespace sqlr {

// Shapes of a network, dataset or index set do not agree.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed or unusable input data (CSV content, missing columns, empty sets).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numerically degenerate situation: zero variance estimate, rank-deficient
// design, overflow of a bound.
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sqlr
