#include "cvbound/tails.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cvbound {

const char* tail_class_name(TailClass tc) {
  switch (tc) {
    case TailClass::bounded: return "bounded";
    case TailClass::subgaussian: return "subgaussian";
    case TailClass::subexponential: return "subexponential";
  }
  return "?";
}

namespace {

// True when mean_i exp(|z_i|^nu / u^nu) > 2. Bails out early once the partial
// sum already exceeds 2n, which also sidesteps overflow for tiny u.
bool mean_exp_above_two(std::span<const double> z, double nu, double u) {
  const double limit = 2.0 * static_cast<double>(z.size());
  double sum = 0.0;
  for (double zi : z) {
    const double e = std::pow(std::abs(zi) / u, nu);
    if (e > 700.0) return true;
    sum += std::exp(e);
    if (sum > limit) return true;
  }
  return false;
}

}  // namespace

double estimate_orlicz_norm(std::span<const double> samples, double nu, double tol,
                            double u_cap) {
  if (samples.empty()) fail(Errc::BadParams, "Orlicz norm of an empty sample");
  if (nu < 1.0 || nu > 2.0) fail(Errc::BadParams, "nu must lie in [1, 2]");
  if (tol <= 0.0) fail(Errc::BadParams, "tolerance must be positive");

  double scale = 0.0;
  for (double z : samples) {
    if (!std::isfinite(z)) fail(Errc::BadParams, "non-finite sample");
    scale = std::max(scale, std::abs(z));
  }
  if (scale == 0.0) return 0.0;

  double hi = scale;
  while (mean_exp_above_two(samples, nu, hi)) {
    hi *= 2.0;
    if (hi > u_cap * scale) {
      fail(Errc::NoFiniteNorm, "sample mean exceeds 2 up to the u cap; tail heavier than Psi_nu");
    }
  }
  double lo = 0.0;
  const double tol_abs = tol * scale;
  while (hi - lo > tol_abs) {
    const double mid = 0.5 * (lo + hi);
    if (mean_exp_above_two(samples, nu, mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

TailProfile build_tail_profile(const RhoSample& rho, const LossMatrix& lm,
                               const TailConfig& cfg) {
  if (rho.rho.size() < 2) fail(Errc::BadParams, "need K >= 2 fold deviations");
  if (cfg.xi <= 0.0) fail(Errc::BadParams, "xi must be positive");

  TailProfile tp;
  tp.nu = cfg.nu;
  tp.xi = cfg.xi;
  tp.envelope = lm.envelope();
  tp.envelope_certified = lm.envelope_certified();

  const double inf = std::numeric_limits<double>::infinity();
  try {
    tp.psi2_norm = estimate_orlicz_norm(rho.rho, 2.0, cfg.orlicz_tol, cfg.orlicz_u_cap);
  } catch (const Error& e) {
    if (e.code() != Errc::NoFiniteNorm) throw;
    tp.psi2_norm = inf;
  }
  // Psi_1 failure is terminal: no Theorem-1 branch applies.
  tp.psi1_norm = estimate_orlicz_norm(rho.rho, 1.0, cfg.orlicz_tol, cfg.orlicz_u_cap);

  // sigma_tilde^2 = sup over hypotheses of the plug-in variance of the
  // centered per-point loss.
  double max_var = 0.0;
  const std::size_t n = lm.rows();
  for (std::size_t j = 0; j < lm.cols(); ++j) {
    const auto col = lm.column(j);
    double mean = 0.0;
    for (double v : col) mean += v;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double v : col) var += (v - mean) * (v - mean);
    var /= static_cast<double>(n);
    max_var = std::max(max_var, var);
  }
  tp.sigma_tilde = std::sqrt(max_var);

  // A finite sample always has a finite Psi-norm estimate, so the configured
  // nu carries the user's tail assumption: nu < 2 renounces the subgaussian
  // branch. A certified envelope still wins.
  if (tp.envelope_certified) {
    tp.tail_class = TailClass::bounded;
  } else if (cfg.nu >= 2.0 && std::isfinite(tp.psi2_norm)) {
    tp.tail_class = TailClass::subgaussian;
  } else {
    tp.tail_class = TailClass::subexponential;
  }
  return tp;
}

}  // namespace cvbound
