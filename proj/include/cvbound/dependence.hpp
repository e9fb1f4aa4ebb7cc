#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cvbound/errors.hpp"

namespace cvbound {

/// Sample autocovariances of the gap process and the normalized
/// autocovariance time V = sum_{l>=1} |gamma_l| / gamma_0 that inflates the
/// dependent-data Chebyshev bound.
struct DependenceProfile {
  std::vector<double> gamma;  // gamma_l for l = 0..K-1
  double gamma0 = 0.0;
  double V = 0.0;
  bool degenerate = false;  // constant series: gamma0 = 0, V forced to 0
};

/// Biased (1/K-denominator) autocovariance estimates; guarantees
/// |gamma_l| <= gamma_0 so V can never go negative.
DependenceProfile autocovariance_profile(std::span<const double> series);

/// Pr(|mean - E| <= eps) >= 1 - gamma0 (1 + 2V) / (eps^2 n), clamped at 0.
double chebyshev_lower_bound(double gamma0, double V, std::size_t n, double eps);

/// Decay model for beta-mixing coefficients; never estimated from data.
struct MixingModel {
  enum class Kind { exponential, algebraic, table };
  Kind kind = Kind::exponential;
  double beta0 = 0.0;
  double r = 0.0;
  std::vector<double> values;  // table kind: beta_a = values[a-1]

  bool operator==(const MixingModel&) const = default;

  static MixingModel exponential(double beta0, double r);  // beta_a = beta0 * r^a
  static MixingModel algebraic(double beta0, double r);    // beta_a = beta0 * a^-r
  static MixingModel table(std::vector<double> values);
  static MixingModel none() { return exponential(0.0, 0.5); }  // i.i.d. degenerate
};

double mixing_beta(const MixingModel& model, std::size_t a);

}  // namespace cvbound
