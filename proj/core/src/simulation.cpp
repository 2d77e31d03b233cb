#include "sqlr/simulation.hpp"

#include "sqlr/errors.hpp"
#include "sqlr/ftest.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace sqlr {

double sim_regression_function(const Eigen::Ref<const Vector>& x) {
  if (x.size() < 5) throw DimensionError("simulation model needs at least 5 inputs");
  return 8.0 + x[0] * x[1] + std::exp(x[2] * x[3]) + 0.1 * x[4];
}

Dataset gen_data(const SimModel& model) {
  if (model.n < 1) throw std::invalid_argument("simulation needs n >= 1");
  if (model.d < 5) throw std::invalid_argument("simulation model needs d >= 5");
  if (!(model.noise_sd >= 0.0)) throw std::invalid_argument("noise_sd must be >= 0");
  Rng rng(model.seed);
  Matrix x(model.n, model.d);
  Vector y(model.n);
  for (Index i = 0; i < model.n; ++i) {
    for (Index j = 0; j < model.d; ++j) x(i, j) = rng.uniform(-1.0, 1.0);
    const double eps = rng.normal();
    y[i] = sim_regression_function(x.row(i).transpose()) + model.noise_sd * eps;
  }
  return Dataset(std::move(x), std::move(y));
}

std::string method_name(Method m) { return m == Method::Sqlr ? "SQLR" : "FTEST"; }

void McConfig::validate() const {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (reps < 1) throw std::invalid_argument("reps must be >= 1");
  if (first_rep < 0) throw std::invalid_argument("first_rep must be >= 0");
  if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("level must lie in (0, 1)");
  if (features.empty()) throw std::invalid_argument("no features requested");
  if (methods.empty()) throw std::invalid_argument("no methods requested");
  for (Index f : features) {
    if (f < 0 || f >= 6) throw std::invalid_argument("simulation features are 1..6");
  }
  null_config.validate();
  alt_config.validate();
}

std::uint64_t replication_seed(std::uint64_t base_seed, int rep) {
  return derive_seed(base_seed, static_cast<std::uint64_t>(rep));
}

std::uint64_t replication_train_seed(std::uint64_t rep_seed) {
  return derive_seed(rep_seed, 1);
}

namespace {

struct RepOutcome {
  // Indexed like McReport::cells.
  std::vector<bool> rejected;
  int clamps = 0;
  int nesting_violations = 0;
};

RepOutcome run_replication(const McConfig& cfg, int rep) {
  const std::uint64_t seed = replication_seed(cfg.base_seed, rep);
  const Dataset data = gen_data(SimModel{cfg.n, 6, 1.0, seed});
  TrainConfig null_cfg = cfg.null_config;
  TrainConfig alt_cfg = cfg.alt_config;
  null_cfg.seed = replication_train_seed(seed);
  alt_cfg.seed = null_cfg.seed;

  RepOutcome out;
  for (Method method : cfg.methods) {
    for (Index feature : cfg.features) {
      double p = 1.0;
      if (method == Method::Sqlr) {
        const TestOutcome t = sqlr_test(data, HypothesisSpec({feature}), cfg.shape,
                                        null_cfg, alt_cfg);
        p = t.p_value.value();
        if (t.clamped) ++out.clamps;
        if (t.loss_alt > t.loss_null) ++out.nesting_violations;
      } else {
        p = f_test_feature(data, feature).p_value.value();
      }
      out.rejected.push_back(p < cfg.level);
    }
  }
  return out;
}

}  // namespace

McReport run_mc(const McConfig& config) {
  config.validate();
  const auto reps = static_cast<std::size_t>(config.reps);
  std::vector<RepOutcome> outcomes(reps);

  unsigned threads = config.threads == 0 ? std::thread::hardware_concurrency() : config.threads;
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(reps));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t t = next++; t < reps; t = next++) {
      try {
        outcomes[t] = run_replication(config, config.first_rep + static_cast<int>(t));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = reps;
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  McReport report;
  report.level = config.level;
  report.base_seed = config.base_seed;
  for (Method method : config.methods) {
    for (Index feature : config.features) {
      report.cells.push_back(McCell{feature, config.n, method, 0, config.reps});
    }
  }
  for (const RepOutcome& o : outcomes) {
    for (std::size_t c = 0; c < report.cells.size(); ++c) {
      if (o.rejected[c]) ++report.cells[c].rejections;
    }
    report.clamp_count += o.clamps;
    report.nesting_violations += o.nesting_violations;
  }
  return report;
}

RateTable table_report(const std::vector<McReport>& reports) {
  if (reports.empty()) throw std::invalid_argument("no reports to tabulate");
  const double level = reports.front().level;
  std::map<std::tuple<Index, int, Index>, McCell> merged;  // (feature, method, n)
  for (const McReport& r : reports) {
    if (r.level != level) throw DataError("reports use different nominal levels");
    for (const McCell& cell : r.cells) {
      const auto key = std::make_tuple(cell.feature, static_cast<int>(cell.method), cell.n);
      const auto [it, inserted] = merged.emplace(key, cell);
      if (!inserted && !(it->second == cell)) {
        throw DataError("conflicting results for feature " + std::to_string(cell.feature + 1) +
                        ", n = " + std::to_string(cell.n));
      }
    }
  }

  std::set<Index> features;
  std::set<std::pair<int, Index>> columns;
  for (const auto& [key, cell] : merged) {
    features.insert(cell.feature);
    columns.emplace(static_cast<int>(cell.method), cell.n);
  }

  RateTable table;
  table.level = level;
  table.features.assign(features.begin(), features.end());
  for (const auto& [m, n] : columns) table.columns.emplace_back(static_cast<Method>(m), n);
  for (Index f : table.features) {
    std::vector<std::optional<double>> row;
    for (const auto& [m, n] : table.columns) {
      const auto it = merged.find(std::make_tuple(f, static_cast<int>(m), n));
      row.push_back(it == merged.end() ? std::nullopt : std::optional(it->second.rate()));
    }
    table.rates.push_back(std::move(row));
  }
  return table;
}

std::string RateTable::to_text() const {
  std::ostringstream os;
  char buf[32];
  os << "feature ";
  for (const auto& [m, n] : columns) {
    std::snprintf(buf, sizeof buf, " %6s", method_name(m).c_str());
    os << buf;
  }
  os << "\nn       ";
  for (const auto& col : columns) {
    std::snprintf(buf, sizeof buf, " %6lld", static_cast<long long>(col.second));
    os << buf;
  }
  os << '\n';
  for (std::size_t r = 0; r < features.size(); ++r) {
    std::snprintf(buf, sizeof buf, "X%-7lld", static_cast<long long>(features[r] + 1));
    os << buf;
    for (const auto& rate : rates[r]) {
      if (rate) {
        std::snprintf(buf, sizeof buf, " %6.3f", *rate);
      } else {
        std::snprintf(buf, sizeof buf, " %6s", "-");
      }
      os << buf;
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace sqlr
