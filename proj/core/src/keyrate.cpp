#include "homcert/keyrate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace homcert::keyrate {

void ChannelModel::validate() const {
  auto prob = [](double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw ValidationError(std::string("ChannelModel: ") + name + " must be in [0,1]");
    }
  };
  prob(detector_efficiency, "detector_efficiency");
  prob(optical_error, "optical_error");
  prob(dark_count_prob, "dark_count_prob");
  prob(e0, "e0");
  if (!(detector_efficiency > 0.0)) {
    throw ValidationError("ChannelModel: detector_efficiency must be > 0");
  }
  if (alpha_db_per_km < 0.0 || bob_loss_db < 0.0) {
    throw ValidationError("ChannelModel: losses must be >= 0");
  }
  if (f_ec < 1.0) {
    throw ValidationError("ChannelModel: f_ec must be >= 1");
  }
}

Intensities::Intensities(double signal_, double decoy_) : signal(signal_), decoy(decoy_) {
  if (!(decoy > 0.0 && decoy < signal)) {
    throw ValidationError("Intensities: require 0 < decoy < signal");
  }
}

void GridSpec::validate() const {
  if (!(step > 0.0) || !(i_s_max > 0.0) || step > i_s_max) {
    throw ValidationError("GridSpec: require 0 < step <= i_s_max");
  }
}

std::pair<double, double> channel_transmittance(double distance_km, const ChannelModel& model) {
  if (distance_km < 0.0) {
    throw ValidationError("channel_transmittance: distance must be >= 0");
  }
  const double eta_channel = std::pow(10.0, -model.alpha_db_per_km * distance_km / 10.0);
  const double eta_bob = std::pow(10.0, -model.bob_loss_db / 10.0) * model.detector_efficiency;
  return {eta_channel, eta_bob};
}

std::pair<double, double> gain_qber(double intensity, double eta_total, const ChannelModel& model) {
  if (intensity < 0.0) {
    throw ValidationError("gain_qber: intensity must be >= 0");
  }
  const double detected = 1.0 - std::exp(-eta_total * intensity);
  const double q = model.dark_count_prob + detected;
  if (q <= 0.0) {
    return {0.0, model.e0};
  }
  const double e = (model.e0 * model.dark_count_prob + model.optical_error * detected) / q;
  return {q, e};
}

DecoyBounds decoy_bounds(const ChannelStats& stats, const Intensities& intensities) {
  const double mu = intensities.signal;
  const double nu = intensities.decoy;
  const double y0 = stats.y0;
  const double y1_raw =
      (mu / (mu * nu - nu * nu)) *
      (stats.q_decoy * std::exp(nu) - stats.q_signal * std::exp(mu) * nu * nu / (mu * mu) -
       (mu * mu - nu * nu) / (mu * mu) * y0);
  const bool feasible = y1_raw > 0.0;
  const double y1 = std::clamp(y1_raw, 0.0, 1.0);
  double e1 = 1.0;
  if (feasible) {
    e1 = (stats.e_decoy * stats.q_decoy * std::exp(nu) - stats.e0 * y0) / (y1_raw * nu);
    e1 = std::clamp(e1, 0.0, 1.0);
  }
  return DecoyBounds{y1, e1, stats.q_signal, stats.e_signal, feasible};
}

double corrected_delta(double delta, double y1_channel_lower) {
  if (!(delta >= 0.0 && delta <= 0.5)) {
    throw ValidationError("corrected_delta: delta must be in [0, 0.5]");
  }
  if (y1_channel_lower > 1.0) {
    throw ValidationError("corrected_delta: yield must be <= 1");
  }
  if (!(y1_channel_lower > 0.0)) {
    return 0.5;
  }
  return std::min(0.5, delta / y1_channel_lower);
}

double corrected_e1(double e1_upper, double delta_prime, ErrorCorrectionVariant variant) {
  if (!(e1_upper >= 0.0 && e1_upper <= 1.0)) {
    throw ValidationError("corrected_e1: e1_upper must be in [0,1]");
  }
  if (!(delta_prime >= 0.0 && delta_prime <= 0.5)) {
    throw ValidationError("corrected_e1: delta_prime must be in [0, 0.5]");
  }
  double e = 4.0 * (1.0 - delta_prime) * delta_prime * (1.0 - 2.0 * e1_upper) +
             4.0 * (1.0 - 2.0 * delta_prime) *
                 std::sqrt(delta_prime * (1.0 - delta_prime) * e1_upper * (1.0 - e1_upper));
  if (variant == ErrorCorrectionVariant::additive) {
    e += e1_upper;
  }
  return std::clamp(e, 0.0, 0.5);
}

double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw ValidationError("binary_entropy: argument must be in [0,1]");
  }
  if (x == 0.0 || x == 1.0) {
    return 0.0;
  }
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

KeyRatePoint key_rate(double distance_km, const Intensities& intensities,
                      const ChannelModel& model, double delta, ErrorCorrectionVariant variant) {
  model.validate();
  const auto [eta_channel, eta_bob] = channel_transmittance(distance_km, model);
  const double eta = eta_channel * eta_bob;
  const auto [qs, es] = gain_qber(intensities.signal, eta, model);
  const auto [qd, ed] = gain_qber(intensities.decoy, eta, model);
  const ChannelStats stats{qs, es, qd, ed, model.dark_count_prob, model.e0};
  const auto bounds = decoy_bounds(stats, intensities);

  KeyRatePoint point{distance_km, intensities.signal, intensities.decoy,
                     bounds.y1_lower, bounds.e1_upper, 0.5, 0.5, 0.0};
  if (!bounds.feasible) {
    return point;
  }
  const double y1_channel = std::min(1.0, bounds.y1_lower / eta_bob);
  point.delta_prime = corrected_delta(delta, y1_channel);
  point.e1_corrected = corrected_e1(bounds.e1_upper, point.delta_prime, variant);

  const double p1 = intensities.signal * std::exp(-intensities.signal);
  const double rate = 0.5 * (p1 * bounds.y1_lower * (1.0 - binary_entropy(point.e1_corrected)) -
                             model.f_ec * qs * binary_entropy(es));
  point.key_rate = std::max(0.0, rate);
  return point;
}

KeyRatePoint optimize_key_rate(double distance_km, const ChannelModel& model, double delta,
                               const GridSpec& grid, ErrorCorrectionVariant variant) {
  grid.validate();
  const int n_steps = static_cast<int>(std::floor(grid.i_s_max / grid.step + 1e-9));
  KeyRatePoint best{distance_km, 0.0, 0.0, 0.0, 1.0, 0.5, 0.5, 0.0};
  bool found = false;
  for (int i = 2; i <= n_steps; ++i) {
    const double i_s = i * grid.step;
    for (int j = 1; j < i; ++j) {
      const double i_d = j * grid.step;
      const auto point = key_rate(distance_km, Intensities(i_s, i_d), model, delta, variant);
      // Ascending iteration keeps the smallest (I_s, I_d) on ties.
      if (!found || point.key_rate > best.key_rate) {
        best = point;
        found = true;
      }
    }
  }
  return best;
}

std::vector<KeyRatePoint> distance_scan(const ChannelModel& model, double delta,
                                        std::span<const double> distances_km,
                                        const GridSpec& grid, ErrorCorrectionVariant variant) {
  if (distances_km.empty()) {
    throw ValidationError("distance_scan: distance list must be nonempty");
  }
  std::vector<KeyRatePoint> points;
  points.reserve(distances_km.size());
  for (double d : distances_km) {
    points.push_back(optimize_key_rate(d, model, delta, grid, variant));
  }
  return points;
}

}  // namespace homcert::keyrate
