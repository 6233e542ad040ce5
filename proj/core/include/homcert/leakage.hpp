#pragma once

#include <array>

#include "homcert/errors.hpp"

namespace homcert::leakage {

/// Square root of an Uhlmann fidelity, in [0, 1].
struct FidelityValue {
  double sqrt_f;

  explicit FidelityValue(double sqrt_f_);
};

/// The six per-pulse-pair fidelities feeding the imbalance bound:
/// within-basis values for X and Z, and the four cross-basis values.
struct PairwiseFidelities {
  double within_x;              ///< sqrtF between the two X-basis bits
  double within_z;              ///< sqrtF between the two Z-basis bits
  std::array<double, 4> cross;  ///< sqrtF(x_i, z_j) for (i,j) in {00,01,10,11}

  PairwiseFidelities(double within_x_, double within_z_, std::array<double, 4> cross_);
};

struct ImbalanceBound {
  double delta;      ///< upper bound on basis imbalance, in [0, 1/2]
  double angle_sum;  ///< total Bures angle before the cosine, radians
  bool clamped;      ///< true when the raw bound exceeded 1/2
};

/// sqrtF = exp(mu (sqrt(2 v) - 1)) for two equal-intensity PRWCPs with HOM
/// visibility v.
FidelityValue fidelity_sqrt_from_visibility(double mu, double v);

/// Matrix oracle: builds the truncated two-mode density matrices of the
/// pure-overlap model and evaluates sqrtF = Tr sqrt(sqrt(rho1) rho2 sqrt(rho1))
/// by eigendecomposition. Fails if the truncation tail mass exceeds tail_bound.
FidelityValue numeric_fidelity(double mu, double gamma, int n_max, double tail_bound = 1e-9);

/// Bures angle arccos(sqrtF), in [0, pi/2].
double bures_angle(FidelityValue f);

/// Bures-angle triangle bound on the basis imbalance from six pairwise
/// fidelities. Clamps to 1/2 when the angle sum passes pi/2.
ImbalanceBound imbalance_bound(const PairwiseFidelities& pairs);

/// Convenience wrapper: all six fidelities taken from a single common
/// visibility at the given HOM-test intensity.
ImbalanceBound imbalance_uniform(double mu, double v);

}  // namespace homcert::leakage
