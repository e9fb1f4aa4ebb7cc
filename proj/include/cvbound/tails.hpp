#pragma once

#include <optional>
#include <span>

#include "cvbound/data_model.hpp"
#include "cvbound/risk.hpp"

namespace cvbound {

enum class TailClass { bounded, subgaussian, subexponential };

const char* tail_class_name(TailClass tc);

struct TailConfig {
  double nu = 2.0;           // tail exponent in [1, 2]
  double xi = 1.0;           // variance-proxy ratio, conservative when > 1
  double bernstein_c = 1.0;  // absolute constant of the subexponential inequality
  double orlicz_tol = 1e-6;  // bisection tolerance, relative to the sample scale
  double orlicz_u_cap = 1e8; // give up (NoFiniteNorm) past cap * scale
};

/// Tail summary of the fold deviations rho_j plus the variance proxies the
/// bound branches consume. psi2/psi1 are the estimated Orlicz norms of the
/// rho sample; sigma_tilde is sqrt(sup_b var-hat of the centered loss).
struct TailProfile {
  double nu = 2.0;
  double psi2_norm = 0.0;
  double psi1_norm = 0.0;
  double sigma_tilde = 0.0;
  double xi = 1.0;
  double envelope = 0.0;
  bool envelope_certified = false;
  TailClass tail_class = TailClass::subgaussian;

  double psi_norm() const { return nu >= 1.5 ? psi2_norm : psi1_norm; }
};

/// Sample version of the Orlicz-Psi_nu norm: the smallest u (bisection, to
/// tol * max|z|) with mean_i exp(|z_i|^nu / u^nu) <= 2. Zero samples give 0.
double estimate_orlicz_norm(std::span<const double> samples, double nu, double tol,
                            double u_cap = 1e8);

TailProfile build_tail_profile(const RhoSample& rho, const LossMatrix& lm,
                               const TailConfig& cfg = {});

}  // namespace cvbound
