#pragma once

#include "sqlr/report.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace sqlr::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kDataError = 2, kDegenerate = 3 };

// Flags shared by `test`, `scan` and `simulate`.
struct FitOptions {
  long long width = 0;  // 0 = floor(sqrt(n))
  double v_budget = 1000.0;
  double m_budget = 1000.0;
  int null_iters = 3000;
  int alt_iters = 3000;
  double null_step = 0.1;
  double alt_step = 0.1 / 300.0;
  double init_scale = 0.5;
  double level = 0.05;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

struct DataOptions {
  std::string input;
  std::string response;
  std::vector<std::string> features;
  std::vector<std::string> covariates;
  bool no_scale = false;
};

struct OutputOptions {
  std::string format = "json";  // json | text
  std::string output;           // empty = stdout
};

struct SimulateOptions {
  std::vector<long long> sizes;
  int reps = 500;
  std::vector<int> features{1, 2, 3, 4, 5, 6};
  std::vector<std::string> methods{"sqlr", "ftest"};
};

struct AdjustOptions {
  std::string input;
  std::string response;
  std::vector<std::string> covariates;
  std::string output;
};

int run_test(const DataOptions& data, const FitOptions& fit, const OutputOptions& out,
             const std::vector<std::string>& argv);
int run_scan(const DataOptions& data, const FitOptions& fit, const OutputOptions& out,
             const std::vector<std::string>& argv);
int run_adjust(const AdjustOptions& opts, const std::vector<std::string>& argv);
int run_simulate(const SimulateOptions& sim, const FitOptions& fit, const OutputOptions& out,
                 const std::vector<std::string>& argv);

}  // namespace sqlr::cli
