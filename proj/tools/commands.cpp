#include "commands.hpp"

#include "sqlr/csv.hpp"
#include "sqlr/errors.hpp"
#include "sqlr/ftest.hpp"
#include "sqlr/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>

namespace sqlr::cli {

namespace {

using json = nlohmann::ordered_json;

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << text;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

SieveShape make_shape(const FitOptions& fit) {
  return SieveShape{static_cast<Index>(fit.width), fit.v_budget, fit.m_budget};
}

TrainConfig null_config(const FitOptions& fit) {
  return TrainConfig{fit.null_iters, fit.null_step, fit.seed, fit.init_scale, true};
}

TrainConfig alt_config(const FitOptions& fit) {
  return TrainConfig{fit.alt_iters, fit.alt_step, fit.seed, fit.init_scale, true};
}

json fit_config_json(const FitOptions& fit, Index n) {
  return json{{"width", make_shape(fit).resolve_width(n)},
              {"v_budget", fit.v_budget},
              {"m_budget", fit.m_budget},
              {"null_iters", fit.null_iters},
              {"alt_iters", fit.alt_iters},
              {"null_step", fit.null_step},
              {"alt_step", fit.alt_step},
              {"init_scale", fit.init_scale},
              {"level", fit.level},
              {"step_schedule", "c / ln(e + k)"}};
}

struct PreparedData {
  Dataset data;
  json preprocessing;
};

// CSV -> optional covariate residualization -> optional [-1, 1] scaling.
PreparedData prepare(const DataOptions& opts, const std::vector<std::string>& inputs) {
  LoadedData loaded = load_csv(opts.input, opts.response, inputs, opts.covariates);
  if (loaded.dropped_rows > 0) {
    std::cerr << "warning: dropped " << loaded.dropped_rows
              << " row(s) with missing values\n";
  }
  Vector y = loaded.data.y();
  if (loaded.covariates.cols() > 0) y = adjust_covariates(y, loaded.covariates);

  Matrix x = loaded.data.x();
  json scaling = json::array();
  if (!opts.no_scale) {
    ScaledFeatures scaled = scale_features(x);
    for (Index j : scaled.constant_columns) {
      std::cerr << "warning: column '" << loaded.data.feature_name(j)
                << "' is constant; mapped to 0\n";
    }
    for (Index j : scaled.low_level_columns) {
      std::cerr << "warning: column '" << loaded.data.feature_name(j)
                << "' has <= 3 distinct values; treated as numeric\n";
    }
    for (const auto& [lo, hi] : scaled.ranges) scaling.push_back({lo, hi});
    x = std::move(scaled.x);
  }
  json pre{{"rows_used", loaded.data.n()},
           {"rows_dropped", loaded.dropped_rows},
           {"covariates", opts.covariates},
           {"scaled", !opts.no_scale},
           {"feature_ranges", scaling}};
  return PreparedData{Dataset(std::move(x), std::move(y), loaded.data.feature_names()),
                      std::move(pre)};
}

RunManifest base_manifest(const std::vector<std::string>& argv, const FitOptions& fit) {
  RunManifest m;
  m.command_line = argv;
  m.seeds = json{{"base", fit.seed}, {"train", fit.seed}};
  return m;
}

}  // namespace

int run_test(const DataOptions& opts, const FitOptions& fit, const OutputOptions& out,
             const std::vector<std::string>& argv) {
  if (opts.features.empty()) throw std::invalid_argument("--features is required for test");
  // Model inputs: every non-response, non-covariate column.
  PreparedData prepared = prepare(opts, {});
  const Dataset& data = prepared.data;

  std::vector<Index> tested;
  for (const auto& name : opts.features) {
    const auto& names = data.feature_names();
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw DataError("tested feature '" + name + "' is not a model input");
    tested.push_back(static_cast<Index>(it - names.begin()));
  }
  const HypothesisSpec spec(tested);
  const TestOutcome outcome =
      sqlr_test(data, spec, make_shape(fit), null_config(fit), alt_config(fit));

  std::optional<double> p_f;
  if (tested.size() == 1) {
    try {
      p_f = f_test_feature(data, tested.front()).p_value.value();
    } catch (const DataError&) {
    } catch (const DegenerateError&) {
    }
  }

  RunManifest manifest = base_manifest(argv, fit);
  manifest.config = fit_config_json(fit, data.n());
  manifest.config["preprocessing"] = prepared.preprocessing;
  manifest.inputs.push_back(digest_file(opts.input));

  std::string label;
  for (std::size_t k = 0; k < opts.features.size(); ++k) {
    label += (k ? "," : "") + opts.features[k];
  }
  const bool reject = outcome.p_value.value() < fit.level;

  if (out.format == "text") {
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "features      %s\nn             %lld\nLR            %.6g\nsigma_hat^2   %.6g\n"
                  "LR/sigma^2    %.6g\np (SQLR)      %.4E\np (F-test)    %s\nreject at %.3g  %s\n",
                  label.c_str(), static_cast<long long>(data.n()), outcome.lr_stat,
                  outcome.sigma_hat_sq, outcome.scaled_stat, outcome.p_value.value(),
                  p_f ? format_double(*p_f).c_str() : "NA", fit.level, reject ? "yes" : "no");
    write_output(buf, out.output);
  } else {
    json row{{"feature", label},
             {"lr_stat", outcome.lr_stat},
             {"sigma_hat_sq", outcome.sigma_hat_sq},
             {"scaled_stat", outcome.scaled_stat},
             {"p_sqlr", outcome.p_value.value()},
             {"p_ftest", p_f ? json(*p_f) : json(nullptr)},
             {"clamped", outcome.clamped},
             {"loss_null", outcome.loss_null},
             {"loss_alt", outcome.loss_alt},
             {"reject", reject}};
    json doc{{"manifest", manifest.to_json()}, {"results", json::array({row})}};
    write_output(dump_json(doc), out.output);
  }
  return kOk;
}

int run_scan(const DataOptions& opts, const FitOptions& fit, const OutputOptions& out,
             const std::vector<std::string>& argv) {
  PreparedData prepared = prepare(opts, opts.features);
  ScanConfig config{make_shape(fit), null_config(fit), alt_config(fit), fit.threads};
  const ScanResult result = scan(prepared.data, config);

  if (out.format == "text") {
    write_output(scan_to_text(result), out.output);
    return kOk;
  }
  RunManifest manifest = base_manifest(argv, fit);
  manifest.config = fit_config_json(fit, prepared.data.n());
  manifest.config["preprocessing"] = prepared.preprocessing;
  manifest.inputs.push_back(digest_file(opts.input));
  write_output(dump_json(scan_to_json(result, manifest)), out.output);
  return kOk;
}

int run_adjust(const AdjustOptions& opts, const std::vector<std::string>& /*argv*/) {
  // Only the response and covariates are parsed; other columns pass through.
  const LoadedData loaded = load_csv(opts.input, opts.response, opts.covariates, {});
  if (loaded.dropped_rows > 0) {
    std::cerr << "warning: dropped " << loaded.dropped_rows
              << " row(s) with missing values\n";
  }
  const Vector residuals = adjust_covariates(loaded.data.y(), loaded.data.x());

  const CsvTable table = read_csv(opts.input);
  const std::size_t y_col = table.column(opts.response);
  CsvTable out_table;
  out_table.header = table.header;
  for (std::size_t i = 0; i < loaded.source_rows.size(); ++i) {
    auto row = table.rows[loaded.source_rows[i]];
    row[y_col] = format_double(residuals[static_cast<Index>(i)]);
    out_table.rows.push_back(std::move(row));
  }
  write_output(format_csv(out_table), opts.output);
  return kOk;
}

int run_simulate(const SimulateOptions& sim, const FitOptions& fit, const OutputOptions& out,
                 const std::vector<std::string>& argv) {
  if (sim.sizes.empty()) throw std::invalid_argument("--n is required");
  std::vector<Method> methods;
  for (const auto& m : sim.methods) {
    if (m == "sqlr") {
      methods.push_back(Method::Sqlr);
    } else if (m == "ftest") {
      methods.push_back(Method::FTest);
    } else {
      throw std::invalid_argument("unknown method '" + m + "' (expected sqlr or ftest)");
    }
  }
  std::vector<Index> features;
  for (int f : sim.features) features.push_back(static_cast<Index>(f) - 1);

  std::vector<McReport> reports;
  json widths = json::array();
  for (long long n : sim.sizes) {
    McConfig config;
    config.n = static_cast<Index>(n);
    config.reps = sim.reps;
    config.level = fit.level;
    config.features = features;
    config.base_seed = fit.seed;
    config.methods = methods;
    config.shape = make_shape(fit);
    config.null_config = null_config(fit);
    config.alt_config = alt_config(fit);
    config.threads = fit.threads;
    reports.push_back(run_mc(config));
    widths.push_back(config.shape.resolve_width(config.n));
  }

  if (out.format == "text") {
    write_output(table_report(reports).to_text(), out.output);
    return kOk;
  }
  RunManifest manifest;
  manifest.command_line = argv;
  manifest.config = fit_config_json(fit, 1);
  manifest.config["width"] = widths;
  manifest.config["sizes"] = sim.sizes;
  manifest.config["reps"] = sim.reps;
  manifest.config["features"] = sim.features;
  manifest.config["methods"] = sim.methods;
  manifest.seeds = json{{"base", fit.seed},
                        {"replication", "derive_seed(base, rep)"},
                        {"train", "derive_seed(replication_seed, 1)"}};
  write_output(dump_json(mc_to_json(reports, manifest)), out.output);
  return kOk;
}

}  // namespace sqlr::cli
