#pragma once

#include "sqlr/pipeline.hpp"
#include "sqlr/simulation.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace sqlr {

inline constexpr const char* kToolName = "sqlr";
const char* tool_version();

struct InputDigest {
  std::string path;
  std::string sha256;  // lowercase hex
};

// Everything needed to re-run a command bit for bit. Contains no clock or
// host information, so equal runs serialize identically.
struct RunManifest {
  std::vector<std::string> command_line;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  nlohmann::ordered_json seeds = nlohmann::ordered_json::object();
  std::vector<InputDigest> inputs;

  nlohmann::ordered_json to_json() const;
};

std::string sha256_hex(std::string_view bytes);
// Throws DataError when the file cannot be read.
InputDigest digest_file(const std::string& path);

// {manifest, results: [{feature, lr_stat, sigma_hat_sq, p_sqlr, p_ftest,
// clamped, ...}]}
nlohmann::ordered_json scan_to_json(const ScanResult& result, const RunManifest& manifest);
// {manifest, results: [{feature, n, method, rejections, reps, rate}],
//  diagnostics}
nlohmann::ordered_json mc_to_json(const std::vector<McReport>& reports,
                                  const RunManifest& manifest);

// Two side-by-side rankings, F-test on the left and SQLR on the right.
std::string scan_to_text(const ScanResult& result);

// Doubles are written by nlohmann's shortest round-trip formatter; two
// spaces of indentation and a trailing newline.
std::string dump_json(const nlohmann::ordered_json& doc);

}  // namespace sqlr
