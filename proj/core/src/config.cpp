#include "homcert/config.hpp"

#include <array>
#include <cstdio>
#include <fstream>

namespace homcert {

namespace {

const std::array<std::string, 6> kVisibilityKeys = {"x01", "z01", "xz00", "xz01", "xz10", "xz11"};

template <typename T>
void read_field(const nlohmann::json& j, const char* key, T& out) {
  if (j.contains(key)) {
    out = j.at(key).get<T>();
  }
}

}  // namespace

void RunConfig::validate() const {
  channel.validate();
  grid.validate();
  if (!(hom.mu_hom > 0.0)) {
    throw ValidationError("config: hom.mu_hom must be > 0");
  }
  if (hom.n_max < 2) {
    throw ValidationError("config: hom.n_max must be >= 2");
  }
  if (hom.quadrature_points < 16) {
    throw ValidationError("config: hom.quadrature_points must be >= 16");
  }
  if (scan.d_min_km < 0.0 || scan.d_max_km < scan.d_min_km || !(scan.step_km > 0.0)) {
    throw ValidationError("config: scan requires 0 <= d_min <= d_max and step > 0");
  }
  if (visibilities) {
    if (visibilities->size() != kVisibilityKeys.size()) {
      throw ValidationError("config: visibilities must have exactly the six keys "
                            "x01, z01, xz00, xz01, xz10, xz11");
    }
    for (const auto& key : kVisibilityKeys) {
      auto it = visibilities->find(key);
      if (it == visibilities->end()) {
        throw ValidationError("config: visibilities missing key " + key);
      }
      if (!(it->second >= 0.0 && it->second <= 0.5)) {
        throw ValidationError("config: visibility " + key + " must be in [0, 0.5]");
      }
    }
  }
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
  RunConfig c;
  if (j.contains("channel")) {
    const auto& ch = j.at("channel");
    read_field(ch, "alpha_db_per_km", c.channel.alpha_db_per_km);
    read_field(ch, "bob_loss_db", c.channel.bob_loss_db);
    read_field(ch, "detector_efficiency", c.channel.detector_efficiency);
    read_field(ch, "optical_error", c.channel.optical_error);
    read_field(ch, "dark_count_prob", c.channel.dark_count_prob);
    read_field(ch, "f_ec", c.channel.f_ec);
    read_field(ch, "e0", c.channel.e0);
  }
  if (j.contains("hom")) {
    const auto& h = j.at("hom");
    read_field(h, "mu_hom", c.hom.mu_hom);
    read_field(h, "n_max", c.hom.n_max);
    read_field(h, "quadrature_points", c.hom.quadrature_points);
  }
  if (j.contains("grid")) {
    const auto& g = j.at("grid");
    read_field(g, "i_s_max", c.grid.i_s_max);
    read_field(g, "step", c.grid.step);
  }
  if (j.contains("scan")) {
    const auto& s = j.at("scan");
    read_field(s, "d_min_km", c.scan.d_min_km);
    read_field(s, "d_max_km", c.scan.d_max_km);
    read_field(s, "step_km", c.scan.step_km);
  }
  if (j.contains("error_correction_variant")) {
    c.variant = variant_from_string(j.at("error_correction_variant").get<std::string>());
  }
  read_field(j, "worst_case_visibility", c.worst_case_visibility);
  if (j.contains("visibilities")) {
    c.visibilities = j.at("visibilities").get<std::map<std::string, double>>();
  }
  return c;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("config: cannot open " + path);
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("config: failed to parse " + path + ": " + e.what());
  }
  return from_json(j);
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j;
  j["channel"] = {
      {"alpha_db_per_km", channel.alpha_db_per_km},
      {"bob_loss_db", channel.bob_loss_db},
      {"detector_efficiency", channel.detector_efficiency},
      {"optical_error", channel.optical_error},
      {"dark_count_prob", channel.dark_count_prob},
      {"f_ec", channel.f_ec},
      {"e0", channel.e0},
  };
  j["hom"] = {
      {"mu_hom", hom.mu_hom},
      {"n_max", hom.n_max},
      {"quadrature_points", hom.quadrature_points},
  };
  j["grid"] = {{"i_s_max", grid.i_s_max}, {"step", grid.step}};
  j["scan"] = {
      {"d_min_km", scan.d_min_km},
      {"d_max_km", scan.d_max_km},
      {"step_km", scan.step_km},
  };
  j["error_correction_variant"] = to_string(variant);
  j["worst_case_visibility"] = worst_case_visibility;
  if (visibilities) {
    j["visibilities"] = *visibilities;
  }
  return j;
}

const char* to_string(keyrate::ErrorCorrectionVariant variant) {
  return variant == keyrate::ErrorCorrectionVariant::paper ? "paper" : "additive";
}

keyrate::ErrorCorrectionVariant variant_from_string(const std::string& name) {
  if (name == "paper") return keyrate::ErrorCorrectionVariant::paper;
  if (name == "additive") return keyrate::ErrorCorrectionVariant::additive;
  throw ValidationError("config: unknown error_correction_variant '" + name +
                        "' (expected 'paper' or 'additive')");
}

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

}  // namespace homcert
