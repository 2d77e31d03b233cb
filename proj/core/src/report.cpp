#include "sqlr/report.hpp"

#include "sqlr/errors.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>

#ifndef SQLR_VERSION
#define SQLR_VERSION "0.0.0"
#endif

namespace sqlr {

using json = nlohmann::ordered_json;

const char* tool_version() { return SQLR_VERSION; }

json RunManifest::to_json() const {
  json inputs_json = json::array();
  for (const auto& in : inputs) inputs_json.push_back({{"path", in.path}, {"sha256", in.sha256}});
  return json{{"tool", kToolName},     {"version", tool_version()},
              {"command_line", command_line}, {"config", config},
              {"seeds", seeds},        {"inputs", inputs_json}};
}

std::string sha256_hex(std::string_view bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              &EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &length) != 1) {
    throw std::runtime_error("SHA-256 computation failed");
  }
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < length; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

InputDigest digest_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return InputDigest{path, sha256_hex(buffer.str())};
}

json scan_to_json(const ScanResult& result, const RunManifest& manifest) {
  json rows = json::array();
  for (const ScanRow& r : result.rows) {
    const TestOutcome& o = r.outcome;
    rows.push_back({{"rank", r.rank},
                    {"feature", r.name},
                    {"column", r.feature + 1},
                    {"lr_stat", o.lr_stat},
                    {"sigma_hat_sq", o.sigma_hat_sq},
                    {"scaled_stat", o.scaled_stat},
                    {"p_sqlr", o.p_value.value()},
                    {"p_ftest", r.p_ftest ? json(*r.p_ftest) : json(nullptr)},
                    {"clamped", o.clamped},
                    {"loss_null", o.loss_null},
                    {"loss_alt", o.loss_alt}});
  }
  return json{{"manifest", manifest.to_json()}, {"results", rows}};
}

json mc_to_json(const std::vector<McReport>& reports, const RunManifest& manifest) {
  json rows = json::array();
  int clamps = 0;
  int violations = 0;
  for (const McReport& report : reports) {
    for (const McCell& c : report.cells) {
      rows.push_back({{"feature", "X" + std::to_string(c.feature + 1)},
                      {"n", c.n},
                      {"method", method_name(c.method)},
                      {"rejections", c.rejections},
                      {"reps", c.reps},
                      {"rate", c.rate()},
                      {"level", report.level}});
    }
    clamps += report.clamp_count;
    violations += report.nesting_violations;
  }
  return json{{"manifest", manifest.to_json()},
              {"results", rows},
              {"diagnostics", {{"clamp_count", clamps}, {"nesting_violations", violations}}}};
}

std::string scan_to_text(const ScanResult& result) {
  std::vector<const ScanRow*> by_f;
  for (const auto& r : result.rows) by_f.push_back(&r);
  std::stable_sort(by_f.begin(), by_f.end(), [](const ScanRow* a, const ScanRow* b) {
    const double pa = a->p_ftest.value_or(2.0);
    const double pb = b->p_ftest.value_or(2.0);
    return pa != pb ? pa < pb : a->feature < b->feature;
  });

  std::size_t width = 7;
  for (const auto& r : result.rows) width = std::max(width, r.name.size());
  const int w = static_cast<int>(width);

  std::ostringstream os;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-*s  %-10s | %-*s  %-10s  %s\n", w, "F-test", "P-value", w,
                "SQLR", "P-value", "LR");
  os << buf;
  os << std::string(static_cast<std::size_t>(2 * w + 40), '-') << '\n';
  for (std::size_t k = 0; k < result.rows.size(); ++k) {
    const ScanRow& left = *by_f[k];
    const ScanRow& right = result.rows[k];
    char pf[32];
    if (left.p_ftest) {
      std::snprintf(pf, sizeof pf, "%.2E", *left.p_ftest);
    } else {
      std::snprintf(pf, sizeof pf, "%s", "NA");
    }
    std::snprintf(buf, sizeof buf, "%-*s  %-10s | %-*s  %-10.2E  %.4g\n", w, left.name.c_str(), pf,
                  w, right.name.c_str(), right.outcome.p_value.value(), right.outcome.lr_stat);
    os << buf;
  }
  return os.str();
}

std::string dump_json(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace sqlr
