#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "qtf/qolct.hpp"
#include "qtf/uncertainty.hpp"

namespace qtf::cli {

inline const std::vector<std::string> kFamilies = {"energy",   "boundedness",    "donoho-stark", "pitt",
                                                   "log-up",   "moyal",          "reconstruction",
                                                   "hardy",    "beurling",       "plancherel",   "roundtrip"};

struct SignalSpec {
  std::string kind = "gaussian";  // gaussian | chirp-gaussian
  double alpha = 1.0;
  double rate1 = 0.0, rate2 = 0.0, freq1 = 0.0, freq2 = 0.0;

  std::string label() const;
};

struct ParamPair {
  OlctParams a1, a2;
};

struct RunConfig {
  std::size_t n = 64;
  double extent = 8.0;
  std::size_t stride = 1;
  std::vector<ParamPair> params;
  std::vector<SignalSpec> signals;
  double window_alpha = 2.0;
  std::vector<double> eps = {0.0, 0.1, 0.25};
  std::vector<double> pitt_alpha = {0.0, 0.25, 0.5, 1.0, 1.5};
  double log_up_h = 1e-3;
  std::vector<double> hardy_alpha = {0.25, 0.5, 1.0, 2.0};
  std::size_t hardy_n = 128;
  double hardy_extent = 8.0;
  std::size_t beurling_n = 32;
  double beurling_extent = 4.0;
  std::vector<double> beurling_d = {2.0, 4.0};
  std::vector<std::string> only;  // empty: every family

  static RunConfig defaults();
  bool wants(const std::string& family) const;
};

/// Overlays the fields present in `doc` on `base`. Throws ParameterError for
/// unknown keys, bad types or values outside their domain.
RunConfig parse_config(const nlohmann::json& doc, RunConfig base = RunConfig::defaults());

/// Throws ParameterError if any field is out of range.
void validate(const RunConfig& cfg);

/// Runs every selected family; `progress` gets one line per finished group.
std::vector<InequalityResult> run_verify(const RunConfig& cfg, std::ostream* progress = nullptr);

}  // namespace qtf::cli
