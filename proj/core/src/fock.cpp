#include "homcert/fock.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace homcert::fock {

PrwcpPair::PrwcpPair(double mu_, double gamma_) : mu(mu_), gamma(gamma_) {
  if (!(mu > 0.0)) {
    throw ValidationError("PrwcpPair: mu must be > 0, got " + std::to_string(mu_));
  }
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw ValidationError("PrwcpPair: gamma must be in [0,1], got " + std::to_string(gamma_));
  }
}

Truncation::Truncation(int n_max_) : n_max(n_max_) {
  if (n_max < 2) {
    throw ValidationError("Truncation: n_max must be >= 2, got " + std::to_string(n_max_));
  }
}

std::vector<double> poisson_weights(double mu, int n_max) {
  if (!(mu > 0.0)) {
    throw ValidationError("poisson_weights: mu must be > 0");
  }
  if (n_max < 0) {
    throw ValidationError("poisson_weights: n_max must be >= 0");
  }
  std::vector<double> w(static_cast<size_t>(n_max) + 1);
  w[0] = std::exp(-mu);
  for (int n = 1; n <= n_max; ++n) {
    w[n] = w[n - 1] * mu / n;
  }
  return w;
}

double poisson_tail_mass(double mu, int n_max) {
  const auto w = poisson_weights(mu, n_max);
  double kept = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    for (int m = 0; n + m <= n_max; ++m) {
      kept += w[n] * w[m];
    }
  }
  return std::max(0.0, 1.0 - kept);
}

namespace {

// P(all photons exit one port) for inputs (a1+)^n (sqrt(g) a1+ + sqrt(1-g) aperp+)^m |0>,
// normalized, on a 50:50 beamsplitter:
//   2^-(n+m) sum_k C(m,k)^2 g^k (1-g)^(m-k) (n+k)! (m-k)! / (n! m!)
double one_port_empty_prob(int n, int m, double gamma) {
  const double delta = 1.0 - gamma;
  double sum = 0.0;
  for (int k = 0; k <= m; ++k) {
    const double log_fact = 2.0 * (std::lgamma(m + 1.0) - std::lgamma(k + 1.0) -
                                   std::lgamma(m - k + 1.0)) +
                            std::lgamma(n + k + 1.0) + std::lgamma(m - k + 1.0) -
                            std::lgamma(n + 1.0) - std::lgamma(m + 1.0);
    sum += std::pow(gamma, k) * std::pow(delta, m - k) * std::exp(log_fact);
  }
  return std::ldexp(sum, -(n + m));
}

}  // namespace

double fock_coincidence(int n, int m, double gamma) {
  if (n < 0 || m < 0) {
    throw ValidationError("fock_coincidence: photon numbers must be >= 0");
  }
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw ValidationError("fock_coincidence: gamma must be in [0,1]");
  }
  if (n + m == 0) {
    return 0.0;
  }
  // Port symmetry: the two all-in-one-port events are disjoint and equiprobable.
  const double p = 1.0 - 2.0 * one_port_empty_prob(n, m, gamma);
  return std::max(0.0, p);
}

double prwcp_coincidence(const PrwcpPair& pair, Truncation trunc) {
  const auto w = poisson_weights(pair.mu, trunc.n_max);
  double sum = 0.0;
  for (int n = 0; n <= trunc.n_max; ++n) {
    for (int m = 0; n + m <= trunc.n_max; ++m) {
      if (n + m < 2) continue;  // no coincidence below two photons
      sum += w[n] * w[m] * fock_coincidence(n, m, pair.gamma);
    }
  }
  return sum;
}

double prwcp_coincidence_phase_avg(const PrwcpPair& pair, int quadrature_points) {
  if (quadrature_points < 16) {
    throw ValidationError("prwcp_coincidence_phase_avg: need at least 16 quadrature points");
  }
  const double amp = pair.mu * std::sqrt(pair.gamma);
  double sum = 0.0;
  for (int i = 0; i < quadrature_points; ++i) {
    const double phi = 2.0 * std::numbers::pi * i / quadrature_points;
    const double c = amp * std::cos(phi);
    sum += (1.0 - std::exp(-(pair.mu + c))) * (1.0 - std::exp(-(pair.mu - c)));
  }
  return sum / quadrature_points;
}

HomResult hom_visibility(const PrwcpPair& pair, Truncation trunc) {
  const PrwcpPair orthogonal(pair.mu, 0.0);
  const double p0 = prwcp_coincidence(orthogonal, trunc);
  if (!(p0 > 0.0)) {
    throw NumericalError("hom_visibility: orthogonal coincidence probability underflowed at mu = " +
                         std::to_string(pair.mu));
  }
  const double p = prwcp_coincidence(pair, trunc);
  return HomResult{
      .p_cc = p,
      .p_cc_orthogonal = p0,
      .visibility = (p0 - p) / p0,
      .trunc_error = poisson_tail_mass(pair.mu, trunc.n_max),
  };
}

double visibility_small_mu(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw ValidationError("visibility_small_mu: gamma must be in [0,1]");
  }
  return gamma / 2.0;
}

std::vector<HomCurveRow> hom_curve(std::span<const double> mu_list,
                                   std::span<const double> gamma_grid,
                                   Truncation trunc) {
  if (mu_list.empty() || gamma_grid.empty()) {
    throw ValidationError("hom_curve: mu_list and gamma_grid must be nonempty");
  }
  std::vector<HomCurveRow> rows;
  rows.reserve(mu_list.size() * gamma_grid.size());
  for (double mu : mu_list) {
    for (double gamma : gamma_grid) {
      const auto r = hom_visibility(PrwcpPair(mu, gamma), trunc);
      rows.push_back(HomCurveRow{mu, gamma, gamma, r.visibility, r.trunc_error});
    }
  }
  return rows;
}

}  // namespace homcert::fock
