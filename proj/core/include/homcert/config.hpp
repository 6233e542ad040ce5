#pragma once

#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "homcert/keyrate.hpp"

namespace homcert {

/// HOM test-bench settings: effective intensity of the interference test
/// (distinct from the QKD signal intensities) and numerical knobs.
struct HomConfig {
  double mu_hom = 0.1;
  int n_max = 20;
  int quadrature_points = 2048;
};

struct ScanConfig {
  double d_min_km = 0.0;
  double d_max_km = 150.0;
  double step_km = 1.0;
};

/// Resolved run configuration; JSON fields mirror the member names, CLI
/// flags override JSON values.
struct RunConfig {
  keyrate::ChannelModel channel;
  HomConfig hom;
  keyrate::GridSpec grid;
  ScanConfig scan;
  keyrate::ErrorCorrectionVariant variant = keyrate::ErrorCorrectionVariant::paper;
  bool worst_case_visibility = false;
  /// Optional six-entry per-pair visibility map
  /// (keys x01, z01, xz00, xz01, xz10, xz11).
  std::optional<std::map<std::string, double>> visibilities;

  void validate() const;

  static RunConfig from_json(const nlohmann::json& j);
  static RunConfig load(const std::string& path);
  nlohmann::json to_json() const;
};

const char* to_string(keyrate::ErrorCorrectionVariant variant);
keyrate::ErrorCorrectionVariant variant_from_string(const std::string& name);

/// Fixed-width serialization used for all emitted numbers: 12 significant
/// digits, locale-independent.
std::string format_number(double value);

}  // namespace homcert
