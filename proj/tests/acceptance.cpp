// Acceptance suite: one pass/fail line per criterion.
//
// Each criterion is evaluated at its stated tolerance; the process exits
// with the number of failed criteria.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "homcert/fock.hpp"
#include "homcert/keyrate.hpp"
#include "homcert/leakage.hpp"

namespace fock = homcert::fock;
namespace keyrate = homcert::keyrate;
namespace leakage = homcert::leakage;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int criterion, const char* description, bool pass, const std::string& detail = "") {
  std::printf("%s criterion %2d: %s%s%s\n", pass ? "PASS" : "FAIL", criterion, description,
              detail.empty() ? "" : " -- ", detail.c_str());
  if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

const fs::path kWorkDir = fs::temp_directory_path() / "homcert_acceptance";
const std::string kCli = HOMCERT_CLI_PATH;

int run(const std::string& args) {
  const std::string cmd = kCli + " " + args + " >/dev/null 2>&1";
  return WEXITSTATUS(std::system(cmd.c_str()));
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// --------------------------------------------------------------------------

void criterion_1_small_mu_linearity() {
  const auto start = std::chrono::steady_clock::now();
  const fock::Truncation trunc(20);
  double max_dev = 0.0;
  for (int i = 0; i <= 10; ++i) {
    const double gamma = i / 10.0;
    const double v = fock::hom_visibility(fock::PrwcpPair(0.025, gamma), trunc).visibility;
    max_dev = std::max(max_dev, std::abs(v - gamma / 2.0));
  }
  const double elapsed = seconds_since(start);
  report(1, "small-mu linearity: max |V - gamma/2| <= 0.005 at mu = 0.025, < 10 s",
         max_dev <= 0.005 && elapsed < 10.0,
         "max_dev=" + fmt(max_dev) + " time=" + fmt(elapsed) + "s");
}

void criterion_2_visibility_ceiling() {
  const fock::Truncation trunc(20);
  bool ok = true;
  std::string detail;
  for (double mu : {0.025, 0.1, 0.25, 1.0}) {
    const auto r = fock::hom_visibility(fock::PrwcpPair(mu, 1.0), trunc);
    if (r.visibility > 0.5 + r.trunc_error) ok = false;
    if (mu == 0.025) {
      if (!(r.visibility >= 0.49 && r.visibility <= 0.5)) ok = false;
      detail = "V(0.025, 1)=" + fmt(r.visibility);
    }
  }
  report(2, "visibility ceiling: V(gamma=1) <= 0.5 + eps_trunc; in [0.49, 0.5] at mu = 0.025",
         ok, detail);
}

void criterion_3_large_mu_breakdown() {
  const auto r = fock::hom_visibility(fock::PrwcpPair(1.0, 1.0), fock::Truncation(20));
  const double dev = std::abs(r.visibility - 0.5);
  report(3, "large-mu breakdown: |V(mu=1, gamma=1) - 0.5| > 0.02", dev > 0.02,
         "deviation=" + fmt(dev) + " (model value; phase-average oracle agrees)");
}

void criterion_4_oracle_equivalence() {
  const fock::Truncation trunc(20);
  double worst = 0.0;
  for (double mu : {0.025, 0.1, 0.25}) {
    for (double gamma : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      const fock::PrwcpPair pair(mu, gamma);
      worst = std::max(worst, std::abs(fock::prwcp_coincidence(pair, trunc) -
                                       fock::prwcp_coincidence_phase_avg(pair)));
    }
  }
  report(4, "oracle equivalence: Fock vs phase average <= 1e-8", worst <= 1e-8,
         "max_diff=" + fmt(worst));
}

void criterion_5_fidelity_closed_form() {
  double worst = 0.0;
  for (double mu : {0.1, 0.25, 0.5, 1.0}) {
    for (double gamma : {0.0, 0.25, 0.5, 0.75, 0.94, 1.0}) {
      const double oracle = leakage::numeric_fidelity(mu, gamma, 20).sqrt_f;
      const double analytic = leakage::fidelity_sqrt_from_visibility(mu, gamma / 2.0).sqrt_f;
      worst = std::max(worst, std::abs(oracle - analytic));
    }
  }
  report(5, "fidelity closed form matches matrix oracle to 1e-6", worst <= 1e-6,
         "max_diff=" + fmt(worst));
}

void criterion_6_imbalance_endpoints() {
  bool ok = leakage::imbalance_uniform(0.1, 0.5).delta == 0.0;
  double prev = 1.0;
  for (int i = 0; i <= 99; ++i) {
    const double v = 0.5 * i / 99.0;
    const double d = leakage::imbalance_uniform(0.1, v).delta;
    if (d > prev + 1e-15) ok = false;
    prev = d;
  }
  std::mt19937 rng(20240101);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int t = 0; t < 10000; ++t) {
    const auto b = leakage::imbalance_bound(leakage::PairwiseFidelities(
        unif(rng), unif(rng), {unif(rng), unif(rng), unif(rng), unif(rng)}));
    if (!(b.delta >= 0.0 && b.delta <= 0.5)) ok = false;
  }
  report(6, "imbalance endpoints: delta(0.5) = 0, nonincreasing in V, delta <= 1/2", ok);
}

// Plain decoy-BB84 evaluator, coded independently of keyrate::*.
double plain_decoy_optimum(double distance_km) {
  const keyrate::ChannelModel m{};
  const double eta = std::pow(10.0, -(m.alpha_db_per_km * distance_km + m.bob_loss_db) / 10.0) *
                     m.detector_efficiency;
  auto h = [](double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
  };
  double best = 0.0;
  for (int i = 2; i <= 100; ++i) {
    const double mu = i / 100.0;
    const double qm = m.dark_count_prob + 1.0 - std::exp(-eta * mu);
    const double em =
        (m.e0 * m.dark_count_prob + m.optical_error * (1.0 - std::exp(-eta * mu))) / qm;
    for (int j = 1; j < i; ++j) {
      const double nu = j / 100.0;
      const double qn = m.dark_count_prob + 1.0 - std::exp(-eta * nu);
      const double en =
          (m.e0 * m.dark_count_prob + m.optical_error * (1.0 - std::exp(-eta * nu))) / qn;
      const double y1 = mu / (mu * nu - nu * nu) *
                        (qn * std::exp(nu) - qm * std::exp(mu) * nu * nu / (mu * mu) -
                         (mu * mu - nu * nu) / (mu * mu) * m.dark_count_prob);
      if (y1 <= 0.0) continue;
      const double e1 = std::clamp(
          (en * qn * std::exp(nu) - m.e0 * m.dark_count_prob) / (y1 * nu), 0.0, 1.0);
      const double k = 0.5 * (mu * std::exp(-mu) * std::min(1.0, y1) *
                                  (1.0 - h(std::min(0.5, e1))) -
                              m.f_ec * qm * h(em));
      best = std::max(best, std::max(0.0, k));
    }
  }
  return best;
}

void criterion_7_baseline_recovery() {
  const keyrate::ChannelModel model{};
  const keyrate::GridSpec grid{};
  double worst = 0.0;
  for (double d : {0.0, 25.0, 50.0, 100.0}) {
    const auto point = keyrate::optimize_key_rate(d, model, 0.0, grid,
                                                  keyrate::ErrorCorrectionVariant::additive);
    worst = std::max(worst, std::abs(point.key_rate - plain_decoy_optimum(d)));
  }
  report(7, "baseline recovery: delta = 0 matches plain decoy-BB84 oracle to 1e-12",
         worst <= 1e-12, "max_diff=" + fmt(worst));
}

void criterion_8_curve_ordering() {
  const keyrate::ChannelModel model{};
  const keyrate::GridSpec grid{};
  const double mu_hom = 0.1;
  std::vector<double> distances;
  for (double d = 0.0; d <= 150.0; d += 2.0) distances.push_back(d);

  const std::vector<double> visibilities = {0.5, 0.495, 0.48, 0.47};
  std::vector<std::vector<double>> curves;
  std::vector<double> reaches;
  for (double v : visibilities) {
    const double delta = leakage::imbalance_uniform(mu_hom, v).delta;
    const auto points = keyrate::distance_scan(model, delta, distances, grid);
    std::vector<double> rates;
    double reach = -1.0;
    for (const auto& p : points) {
      rates.push_back(p.key_rate);
      if (p.key_rate > 0.0) reach = p.distance_km;
    }
    curves.push_back(std::move(rates));
    reaches.push_back(reach);
  }

  bool ordered = true;
  for (size_t c = 1; c < curves.size(); ++c) {
    for (size_t i = 0; i < distances.size(); ++i) {
      if (curves[c][i] > curves[c - 1][i] + 1e-15) ordered = false;
    }
    if (!(reaches[c] < reaches[c - 1])) ordered = false;
  }
  const bool low_v_positive = curves.back()[0] > 0.0;
  std::string detail = "reaches_km=";
  for (double r : reaches) detail += fmt(r) + " ";
  report(8, "key-rate curves ordered in V, reach strictly decreasing, V = 0.47 positive",
         ordered && low_v_positive, detail);
}

void criterion_9_table_certification() {
  fs::create_directories(kWorkDir);
  const auto start = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  for (double v : {0.478, 0.47, 0.475, 0.487, 0.499}) {
    char args[256];
    const auto out = (kWorkDir / ("cert_" + fmt(v) + ".json")).string();
    std::snprintf(args, sizeof(args), "certify --visibility %g --out %s", v, out.c_str());
    if (run(args) != 0) {
      ok = false;
      continue;
    }
    const auto text = slurp(out);
    if (text.find("\"positive_key\": true") == std::string::npos ||
        text.find("\"max_distance_km\": null") != std::string::npos) {
      ok = false;
      detail += "no positive key at V=" + fmt(v) + " ";
    }
  }
  const double elapsed = seconds_since(start);
  report(9, "all Table-1 visibilities certify with positive max distance, < 60 s",
         ok && elapsed < 60.0, detail + "time=" + fmt(elapsed) + "s");
}

void criterion_10_determinism() {
  fs::create_directories(kWorkDir);
  const auto out1 = (kWorkDir / "det1.csv").string();
  const auto out2 = (kWorkDir / "det2.csv").string();
  const std::string args = "keyrate --visibility 0.48 --dmin 0 --dmax 20 --step 5";
  const bool ran = run(args + " --out " + out1) == 0 && run(args + " --out " + out2) == 0;
  const bool identical = ran && slurp(out1) == slurp(out2) && !slurp(out1).empty();
  report(10, "repeated keyrate runs produce byte-identical CSV", identical);
}

}  // namespace

int main() {
  criterion_1_small_mu_linearity();
  criterion_2_visibility_ceiling();
  criterion_3_large_mu_breakdown();
  criterion_4_oracle_equivalence();
  criterion_5_fidelity_closed_form();
  criterion_6_imbalance_endpoints();
  criterion_7_baseline_recovery();
  criterion_8_curve_ordering();
  criterion_9_table_certification();
  criterion_10_determinism();
  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
  }
  return g_failures;
}
