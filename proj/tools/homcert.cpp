// homcert: certification CLI for HOM-visibility based side-channel bounds
// and decoy-state BB84 key rates.
//
// Subcommands:
//   hom-curve  visibility-vs-overlap curves (CSV)
//   imbalance  basis-imbalance bound from measured visibilities (JSON)
//   keyrate    distance scan of the optimized key rate (CSV)
//   certify    one-shot verdict for a measured visibility (JSON)

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "homcert/config.hpp"
#include "homcert/fock.hpp"
#include "homcert/keyrate.hpp"
#include "homcert/leakage.hpp"

namespace {

using homcert::RunConfig;
using homcert::format_number;
namespace fock = homcert::fock;
namespace keyrate = homcert::keyrate;
namespace leakage = homcert::leakage;

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

// Round to 12 significant digits so serialized values match format_number.
double round12(double v) { return std::stod(format_number(v)); }

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    throw homcert::ValidationError("cannot open output file " + out_path);
  }
  out << text;
}

std::string config_comment(const RunConfig& config) {
  return "# config: " + config.to_json().dump() + "\n";
}

std::vector<double> uniform_grid(double lo, double hi, int points) {
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i) {
    g[i] = points == 1 ? lo : lo + (hi - lo) * i / (points - 1);
  }
  return g;
}

std::vector<double> scan_distances(const homcert::ScanConfig& scan) {
  std::vector<double> d;
  for (double x = scan.d_min_km; x <= scan.d_max_km + 1e-9; x += scan.step_km) {
    d.push_back(x);
  }
  return d;
}

double delta_from_visibility(const RunConfig& config, double v) {
  return leakage::imbalance_uniform(config.hom.mu_hom, v).delta;
}

// ---------------------------------------------------------------------------
// hom-curve

int cmd_hom_curve(const RunConfig& config, const std::vector<double>& mu_list, int points,
                  const std::string& out_path) {
  config.validate();
  const auto gamma_grid = uniform_grid(0.0, 1.0, points);
  const auto rows = fock::hom_curve(mu_list, gamma_grid, fock::Truncation(config.hom.n_max));

  std::ostringstream csv;
  csv << config_comment(config);
  csv << "mu,gamma,v_sp,v_prwcp,trunc_error\n";
  for (const auto& r : rows) {
    csv << format_number(r.mu) << ',' << format_number(r.gamma) << ',' << format_number(r.v_sp)
        << ',' << format_number(r.v_prwcp) << ',' << format_number(r.trunc_error) << '\n';
  }
  write_output(csv.str(), out_path);
  return 0;
}

// ---------------------------------------------------------------------------
// imbalance

nlohmann::json imbalance_report(const RunConfig& config, std::optional<double> visibility,
                                double sigma) {
  const double mu = config.hom.mu_hom;
  auto resolve = [&](double shift) -> std::pair<leakage::ImbalanceBound, nlohmann::json> {
    nlohmann::json fids;
    if (visibility) {
      const double v = *visibility - shift;
      const double f = leakage::fidelity_sqrt_from_visibility(mu, v).sqrt_f;
      for (const char* key : {"x01", "z01", "xz00", "xz01", "xz10", "xz11"}) {
        fids[key] = round12(f);
      }
      return {leakage::imbalance_uniform(mu, v), fids};
    }
    if (!config.visibilities) {
      throw homcert::ValidationError(
          "imbalance: provide --visibility or a six-entry 'visibilities' map in the config");
    }
    const auto& vm = *config.visibilities;
    auto f = [&](const std::string& key) {
      return leakage::fidelity_sqrt_from_visibility(mu, vm.at(key) - shift).sqrt_f;
    };
    leakage::PairwiseFidelities pairs(f("x01"), f("z01"),
                                      {f("xz00"), f("xz01"), f("xz10"), f("xz11")});
    for (const char* key : {"x01", "z01", "xz00", "xz01", "xz10", "xz11"}) {
      fids[key] = round12(f(key));
    }
    return {leakage::imbalance_bound(pairs), fids};
  };

  auto block = [&](double shift) {
    auto [bound, fids] = resolve(shift);
    nlohmann::json b;
    b["delta"] = round12(bound.delta);
    b["angle_sum"] = round12(bound.angle_sum);
    b["clamped"] = bound.clamped;
    b["per_pair_fidelities"] = fids;
    return b;
  };

  nlohmann::json report;
  report["nominal"] = block(0.0);
  if (sigma > 0.0) {
    report["worst_case"] = block(sigma);
  }
  const auto& headline =
      (config.worst_case_visibility && sigma > 0.0) ? report["worst_case"] : report["nominal"];
  report["delta"] = headline["delta"];
  report["angle_sum"] = headline["angle_sum"];
  report["clamped"] = headline["clamped"];
  report["per_pair_fidelities"] = headline["per_pair_fidelities"];
  report["config"] = config.to_json();
  return report;
}

int cmd_imbalance(const RunConfig& config, std::optional<double> visibility, double sigma,
                  const std::string& out_path) {
  config.validate();
  write_output(imbalance_report(config, visibility, sigma).dump(2) + "\n", out_path);
  return 0;
}

// ---------------------------------------------------------------------------
// keyrate

int cmd_keyrate(const RunConfig& config, std::optional<double> visibility,
                std::optional<double> delta_opt, const std::string& out_path) {
  config.validate();
  double delta = 0.0;
  if (delta_opt) {
    delta = *delta_opt;
  } else if (visibility) {
    delta = delta_from_visibility(config, *visibility);
  } else {
    throw homcert::ValidationError("keyrate: provide --visibility or --delta");
  }
  if (!(delta >= 0.0 && delta <= 0.5)) {
    throw homcert::ValidationError("keyrate: delta must be in [0, 0.5]");
  }

  const auto distances = scan_distances(config.scan);
  const auto points = keyrate::distance_scan(config.channel, delta, distances, config.grid,
                                             config.variant);
  std::ostringstream csv;
  csv << config_comment(config);
  csv << "distance_km,K,I_s,I_d,Y1L,e1U,delta_prime,e1_corrected\n";
  for (const auto& p : points) {
    csv << format_number(p.distance_km) << ',' << format_number(p.key_rate) << ','
        << format_number(p.signal_intensity) << ',' << format_number(p.decoy_intensity) << ','
        << format_number(p.y1_lower) << ',' << format_number(p.e1_upper) << ','
        << format_number(p.delta_prime) << ',' << format_number(p.e1_corrected) << '\n';
  }
  write_output(csv.str(), out_path);
  return 0;
}

// ---------------------------------------------------------------------------
// certify

nlohmann::json point_json(const keyrate::KeyRatePoint& p) {
  nlohmann::json j;
  j["distance_km"] = round12(p.distance_km);
  j["key_rate"] = round12(p.key_rate);
  j["I_s"] = round12(p.signal_intensity);
  j["I_d"] = round12(p.decoy_intensity);
  j["Y1L"] = round12(p.y1_lower);
  j["e1U"] = round12(p.e1_upper);
  j["delta_prime"] = round12(p.delta_prime);
  j["e1_corrected"] = round12(p.e1_corrected);
  return j;
}

nlohmann::json certify_verdict(const RunConfig& config, double delta,
                               keyrate::ErrorCorrectionVariant variant) {
  nlohmann::json v;
  double max_distance = -1.0;
  for (double d : scan_distances(config.scan)) {
    const auto p = keyrate::optimize_key_rate(d, config.channel, delta, config.grid, variant);
    if (p.key_rate > 0.0) {
      max_distance = d;
    }
  }
  v["positive_key"] = max_distance >= 0.0;
  v["max_distance_km"] = max_distance >= 0.0 ? nlohmann::json(round12(max_distance))
                                             : nlohmann::json(nullptr);
  nlohmann::json at;
  for (double d : {0.0, 25.0, 50.0}) {
    at[format_number(d)] =
        point_json(keyrate::optimize_key_rate(d, config.channel, delta, config.grid, variant));
  }
  v["optimal_intensities_at_km"] = at;
  return v;
}

int cmd_certify(const RunConfig& config, double visibility, double sigma,
                const std::string& out_path) {
  config.validate();

  auto assessment = [&](double v) {
    nlohmann::json a;
    a["visibility"] = round12(v);
    const double delta = delta_from_visibility(config, v);
    a["delta"] = round12(delta);
    a["variants"]["paper"] =
        certify_verdict(config, delta, keyrate::ErrorCorrectionVariant::paper);
    a["variants"]["additive"] =
        certify_verdict(config, delta, keyrate::ErrorCorrectionVariant::additive);
    return a;
  };

  nlohmann::json report;
  report["nominal"] = assessment(visibility);
  if (sigma > 0.0) {
    report["worst_case"] = assessment(visibility - sigma);
  }
  const auto& headline =
      (config.worst_case_visibility && sigma > 0.0) ? report["worst_case"] : report["nominal"];
  report["delta"] = headline["delta"];
  report["max_distance_km"] =
      headline["variants"][homcert::to_string(config.variant)]["max_distance_km"];
  report["positive_key"] = headline["variants"][homcert::to_string(config.variant)]["positive_key"];
  report["config"] = config.to_json();
  write_output(report.dump(2) + "\n", out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"HOM-visibility side-channel certification for decoy-state BB84"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string variant_name;
  std::optional<double> mu_flag;
  std::optional<double> visibility;
  std::optional<double> delta_flag;
  double sigma = 0.0;
  std::optional<int> nmax_flag;
  std::optional<double> dmin_flag, dmax_flag, step_flag;
  bool worst_case = false;
  std::vector<double> mu_list;
  int points = 51;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON config file (CLI flags take precedence)");
    cmd->add_option("--out", out_path, "output path (default: stdout)");
    cmd->add_option("--variant", variant_name, "error-correction variant")
        ->check(CLI::IsMember({"paper", "additive"}));
    cmd->add_option("--nmax", nmax_flag, "Fock truncation (total photon number)");
    cmd->add_option("--mu", mu_flag, "HOM-test effective mean photon number");
  };

  auto* hom = app.add_subcommand("hom-curve", "visibility vs mode overlap (CSV)");
  add_common(hom);
  hom->add_option("--mu-list", mu_list, "mean photon numbers, one curve each");
  hom->add_option("--points", points, "gamma grid size")->check(CLI::PositiveNumber);

  auto* imb = app.add_subcommand("imbalance", "basis-imbalance bound (JSON)");
  add_common(imb);
  imb->add_option("--visibility", visibility, "common HOM visibility for all six pairs");
  imb->add_option("--sigma", sigma, "visibility error bar");
  imb->add_flag("--worst-case", worst_case, "headline the v - sigma verdict");

  auto* key = app.add_subcommand("keyrate", "optimized key rate vs distance (CSV)");
  add_common(key);
  key->add_option("--visibility", visibility, "common HOM visibility");
  key->add_option("--delta", delta_flag, "explicit basis imbalance");
  key->add_option("--dmin", dmin_flag, "scan start, km");
  key->add_option("--dmax", dmax_flag, "scan end, km");
  key->add_option("--step", step_flag, "scan step, km");

  auto* cert = app.add_subcommand("certify", "one-shot certification verdict (JSON)");
  add_common(cert);
  cert->add_option("--visibility", visibility, "measured HOM visibility")->required();
  cert->add_option("--sigma", sigma, "visibility error bar");
  cert->add_flag("--worst-case", worst_case, "headline the v - sigma verdict");
  cert->add_option("--dmin", dmin_flag, "scan start, km");
  cert->add_option("--dmax", dmax_flag, "scan end, km");
  cert->add_option("--step", step_flag, "scan step, km");

  try {
    app.parse(argc, argv);

    RunConfig config = config_path.empty() ? RunConfig{} : RunConfig::load(config_path);
    if (mu_flag) config.hom.mu_hom = *mu_flag;
    if (nmax_flag) config.hom.n_max = *nmax_flag;
    if (!variant_name.empty()) config.variant = homcert::variant_from_string(variant_name);
    if (dmin_flag) config.scan.d_min_km = *dmin_flag;
    if (dmax_flag) config.scan.d_max_km = *dmax_flag;
    if (step_flag) config.scan.step_km = *step_flag;
    if (worst_case) config.worst_case_visibility = true;

    if (hom->parsed()) {
      if (mu_list.empty()) mu_list = {0.025, 0.1, 0.25, 1.0};
      return cmd_hom_curve(config, mu_list, points, out_path);
    }
    if (imb->parsed()) {
      return cmd_imbalance(config, visibility, sigma, out_path);
    }
    if (key->parsed()) {
      return cmd_keyrate(config, visibility, delta_flag, out_path);
    }
    return cmd_certify(config, *visibility, sigma, out_path);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  } catch (const homcert::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const homcert::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}
