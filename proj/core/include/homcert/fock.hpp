#pragma once

#include <span>
#include <vector>

#include "homcert/errors.hpp"

namespace homcert::fock {

/// Two equal-intensity phase-randomized weak coherent pulses with a
/// mode-overlap parameter gamma. gamma equals the single-photon HOM
/// visibility in the pure-overlap model.
struct PrwcpPair {
  double mu;     ///< effective mean photon number per pulse, > 0
  double gamma;  ///< mode overlap, in [0, 1]

  PrwcpPair(double mu_, double gamma_);
};

/// Photon-number truncation: states with total photon number n + m > n_max
/// are dropped from the Fock expansion.
struct Truncation {
  int n_max = 20;

  explicit Truncation(int n_max_ = 20);
};

struct HomResult {
  double p_cc;             ///< coincidence probability at the given gamma
  double p_cc_orthogonal;  ///< coincidence probability at gamma = 0
  double visibility;       ///< (p_cc_orthogonal - p_cc) / p_cc_orthogonal
  double trunc_error;      ///< joint Poisson tail mass beyond n_max
};

/// Diagonal Fock weights of a phase-randomized coherent state:
/// rho_nn = exp(-mu) mu^n / n!, for n = 0..n_max.
std::vector<double> poisson_weights(double mu, int n_max);

/// Joint tail mass 1 - sum_{n+m <= n_max} rho_nn(mu) rho_mm(mu); the
/// certified truncation error of the two-pulse expansion.
double poisson_tail_mass(double mu, int n_max);

/// Coincidence probability for Fock inputs |n> and an m-photon state with
/// mode overlap gamma, on a 50:50 beamsplitter with ideal threshold
/// detectors. Uses P_cc = 1 - 2 P(one port empty) for n + m >= 1.
double fock_coincidence(int n, int m, double gamma);

/// Poisson-weighted coincidence probability over the truncated Fock grid.
double prwcp_coincidence(const PrwcpPair& pair, Truncation trunc);

/// Truncation-free oracle: classical phase average
/// (1/2pi) Int (1 - e^{-I3(phi)}) (1 - e^{-I4(phi)}) dphi
/// with I3 = mu (1 + sqrt(gamma) cos phi), I4 = mu (1 - sqrt(gamma) cos phi),
/// on a uniform periodic rule.
double prwcp_coincidence_phase_avg(const PrwcpPair& pair, int quadrature_points = 2048);

/// HOM visibility of a PRWCP pair relative to the orthogonal-mode baseline.
HomResult hom_visibility(const PrwcpPair& pair, Truncation trunc);

/// Analytic small-mu limit: V = gamma / 2.
double visibility_small_mu(double gamma);

struct HomCurveRow {
  double mu;
  double gamma;
  double v_sp;      ///< single-photon visibility (= gamma)
  double v_prwcp;   ///< PRWCP visibility from the Fock expansion
  double trunc_error;
};

/// Row-major visibility table over mu_list x gamma_grid.
std::vector<HomCurveRow> hom_curve(std::span<const double> mu_list,
                                   std::span<const double> gamma_grid,
                                   Truncation trunc);

}  // namespace homcert::fock
