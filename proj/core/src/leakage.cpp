#include "homcert/leakage.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "homcert/fock.hpp"

namespace homcert::leakage {

FidelityValue::FidelityValue(double sqrt_f_) : sqrt_f(sqrt_f_) {
  if (!(sqrt_f >= 0.0 && sqrt_f <= 1.0)) {
    throw ValidationError("FidelityValue: sqrt_f must be in [0,1], got " + std::to_string(sqrt_f_));
  }
}

PairwiseFidelities::PairwiseFidelities(double within_x_, double within_z_,
                                       std::array<double, 4> cross_)
    : within_x(within_x_), within_z(within_z_), cross(cross_) {
  auto check = [](double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw ValidationError(std::string("PairwiseFidelities: ") + name + " must be in [0,1]");
    }
  };
  check(within_x, "within_x");
  check(within_z, "within_z");
  for (double c : cross) check(c, "cross");
}

FidelityValue fidelity_sqrt_from_visibility(double mu, double v) {
  if (!(mu > 0.0)) {
    throw ValidationError("fidelity_sqrt_from_visibility: mu must be > 0");
  }
  if (!(v >= 0.0 && v <= 0.5)) {
    throw ValidationError("fidelity_sqrt_from_visibility: visibility must be in [0, 0.5]");
  }
  return FidelityValue(std::exp(mu * (std::sqrt(2.0 * v) - 1.0)));
}

namespace {

// Symmetric PSD square root with eigenvalue flooring at 0.
Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace

FidelityValue numeric_fidelity(double mu, double gamma, int n_max, double tail_bound) {
  if (!(mu > 0.0)) {
    throw ValidationError("numeric_fidelity: mu must be > 0");
  }
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw ValidationError("numeric_fidelity: gamma must be in [0,1]");
  }
  if (n_max < 2) {
    throw ValidationError("numeric_fidelity: n_max must be >= 2");
  }
  const auto weights = fock::poisson_weights(mu, n_max);
  double kept = 0.0;
  for (double w : weights) kept += w;
  if (1.0 - kept > tail_bound) {
    throw NumericalError("numeric_fidelity: truncation tail mass " + std::to_string(1.0 - kept) +
                         " exceeds bound " + std::to_string(tail_bound));
  }

  // Two-mode basis |k, j> with k + j <= n_max; k photons in the reference
  // mode, j in the orthogonal complement.
  std::vector<std::pair<int, int>> basis;
  std::vector<std::vector<int>> index(n_max + 1, std::vector<int>(n_max + 1, -1));
  for (int k = 0; k <= n_max; ++k) {
    for (int j = 0; k + j <= n_max; ++j) {
      index[k][j] = static_cast<int>(basis.size());
      basis.emplace_back(k, j);
    }
  }
  const int dim = static_cast<int>(basis.size());
  const double delta = 1.0 - gamma;

  Eigen::MatrixXd rho1 = Eigen::MatrixXd::Zero(dim, dim);
  for (int n = 0; n <= n_max; ++n) {
    rho1(index[n][0], index[n][0]) = weights[n];
  }

  Eigen::MatrixXd rho2 = Eigen::MatrixXd::Zero(dim, dim);
  for (int n = 0; n <= n_max; ++n) {
    // |psi_n> = sum_k sqrt(C(n,k)) gamma^(k/2) delta^((n-k)/2) |k, n-k>
    Eigen::VectorXd psi = Eigen::VectorXd::Zero(dim);
    double binom = 1.0;
    for (int k = 0; k <= n; ++k) {
      psi(index[k][n - k]) =
          std::sqrt(binom * std::pow(gamma, k) * std::pow(delta, n - k));
      binom = binom * (n - k) / (k + 1.0);
    }
    rho2 += weights[n] * psi * psi.transpose();
  }

  const Eigen::MatrixXd s1 = psd_sqrt(rho1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s1 * rho2 * s1);
  double sqrt_f = 0.0;
  for (int i = 0; i < dim; ++i) {
    const double ev = es.eigenvalues()(i);
    if (ev > 0.0) sqrt_f += std::sqrt(ev);
  }
  return FidelityValue(std::min(1.0, sqrt_f));
}

double bures_angle(FidelityValue f) {
  return std::acos(f.sqrt_f);
}

ImbalanceBound imbalance_bound(const PairwiseFidelities& pairs) {
  const double max_cross = *std::max_element(pairs.cross.begin(), pairs.cross.end());
  const double angle_sum = std::acos(max_cross) +
                           std::acos((1.0 + pairs.within_x) / 2.0) +
                           std::acos((1.0 + pairs.within_z) / 2.0);
  const double c = std::cos(angle_sum);
  return ImbalanceBound{
      .delta = std::min(0.5, 0.5 - 0.5 * c),
      .angle_sum = angle_sum,
      .clamped = c < 0.0,
  };
}

ImbalanceBound imbalance_uniform(double mu, double v) {
  const double f = fidelity_sqrt_from_visibility(mu, v).sqrt_f;
  return imbalance_bound(PairwiseFidelities(f, f, {f, f, f, f}));
}

}  // namespace homcert::leakage
