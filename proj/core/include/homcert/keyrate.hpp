#pragma once

#include <span>
#include <utility>
#include <vector>

#include "homcert/errors.hpp"

namespace homcert::keyrate {

/// Fiber/receiver loss, error and dark-count parameters of the simulated link.
struct ChannelModel {
  double alpha_db_per_km = 0.2;     ///< fiber attenuation
  double bob_loss_db = 3.0;         ///< receiver insertion loss
  double detector_efficiency = 0.25;
  double optical_error = 0.01;      ///< misalignment error probability e_det
  double dark_count_prob = 1e-5;    ///< Y0, per gate
  double f_ec = 1.2;                ///< error-correction inefficiency
  double e0 = 0.5;                  ///< error rate of dark counts

  void validate() const;
};

/// Signal/decoy intensities; the second decoy is fixed at vacuum.
struct Intensities {
  double signal;
  double decoy;

  Intensities(double signal_, double decoy_);
};

/// Channel statistics feeding the decoy estimate.
struct ChannelStats {
  double q_signal;
  double e_signal;
  double q_decoy;
  double e_decoy;
  double y0;        ///< vacuum yield
  double e0 = 0.5;  ///< dark-count error rate
};

struct DecoyBounds {
  double y1_lower;   ///< Y1 lower bound, clipped to [0,1]
  double e1_upper;   ///< e1 upper bound, clipped to [0,1]
  double q_signal;
  double e_signal;
  bool feasible;     ///< false when the raw Y1 bound is <= 0
};

enum class ErrorCorrectionVariant {
  paper,     ///< printed correction formula, no additive e1 term
  additive,  ///< printed formula plus the additive e1 term
};

/// Exhaustive intensity search grid; values are multiples of `step` in
/// (0, i_s_max] for the signal and (0, I_s) for the decoy.
struct GridSpec {
  double i_s_max = 1.0;
  double step = 0.01;

  void validate() const;
};

struct KeyRatePoint {
  double distance_km;
  double signal_intensity;
  double decoy_intensity;
  double y1_lower;
  double e1_upper;
  double delta_prime;
  double e1_corrected;
  double key_rate;  ///< bits per pulse, floored at 0
};

/// (eta_channel, eta_bob); total transmittance is their product.
std::pair<double, double> channel_transmittance(double distance_km, const ChannelModel& model);

/// Asymptotic gain and QBER of a pulse of the given intensity:
/// Q = Y0 + 1 - e^{-eta I}, E Q = e0 Y0 + e_det (1 - e^{-eta I}).
std::pair<double, double> gain_qber(double intensity, double eta_total, const ChannelModel& model);

/// Vacuum+weak decoy bounds on the single-photon yield and error.
DecoyBounds decoy_bounds(const ChannelStats& stats, const Intensities& intensities);

/// Lossless-channel correction: delta' = min(1/2, delta / y1_channel_lower),
/// where the yield is referenced to the channel only (Bob's calibrated
/// losses divided out).
double corrected_delta(double delta, double y1_channel_lower);

/// Side-channel-corrected single-photon error bound, clipped to [0, 1/2].
double corrected_e1(double e1_upper, double delta_prime,
                    ErrorCorrectionVariant variant = ErrorCorrectionVariant::paper);

/// Binary Shannon entropy in bits, h(0) = h(1) = 0.
double binary_entropy(double x);

/// Full pipeline at fixed intensities: channel, gains, decoy bounds,
/// delta', corrected error, key rate.
KeyRatePoint key_rate(double distance_km, const Intensities& intensities,
                      const ChannelModel& model, double delta,
                      ErrorCorrectionVariant variant = ErrorCorrectionVariant::paper);

/// Deterministic grid search over (I_s, I_d); ties break to the smallest
/// signal then decoy intensity.
KeyRatePoint optimize_key_rate(double distance_km, const ChannelModel& model, double delta,
                               const GridSpec& grid,
                               ErrorCorrectionVariant variant = ErrorCorrectionVariant::paper);

/// Per-distance optimized key rates.
std::vector<KeyRatePoint> distance_scan(const ChannelModel& model, double delta,
                                        std::span<const double> distances_km,
                                        const GridSpec& grid,
                                        ErrorCorrectionVariant variant = ErrorCorrectionVariant::paper);

}  // namespace homcert::keyrate
