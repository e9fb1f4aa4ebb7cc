#include "cvbound/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace cvbound {

const char* bound_mode_name(BoundMode mode) {
  switch (mode) {
    case BoundMode::iid_one_round: return "iid_one_round";
    case BoundMode::iid_convoluted: return "iid_convoluted";
    case BoundMode::mixing_one_round: return "mixing_one_round";
    case BoundMode::mixing_convoluted: return "mixing_convoluted";
  }
  return "?";
}

BoundMode bound_mode_from_name(const std::string& name) {
  if (name == "iid_one_round") return BoundMode::iid_one_round;
  if (name == "iid_convoluted") return BoundMode::iid_convoluted;
  if (name == "mixing_one_round") return BoundMode::mixing_one_round;
  if (name == "mixing_convoluted") return BoundMode::mixing_convoluted;
  fail(Errc::ConfigError, "unknown bound mode '" + name + "'");
}

const char* branch_name(VarsigmaBranch b) {
  switch (b) {
    case VarsigmaBranch::bounded: return "bounded";
    case VarsigmaBranch::subgaussian: return "subgaussian";
    case VarsigmaBranch::subexp_small_varpi: return "subexp_small_varpi";
    case VarsigmaBranch::subexp_large_varpi: return "subexp_large_varpi";
    case VarsigmaBranch::mixing: return "mixing";
  }
  return "?";
}

void BoundConfig::validate() const {
  if (!(varpi > 0.0 && varpi <= 1.0)) fail(Errc::ConfigError, "varpi must lie in (0, 1]");
  if (!(confidence_floor >= 0.0 && confidence_floor < 1.0)) {
    fail(Errc::ConfigError, "confidence_floor must lie in [0, 1)");
  }
  if (c <= 0.0) fail(Errc::ConfigError, "c must be positive");
  if (nu < 1.0 || nu > 2.0) fail(Errc::ConfigError, "nu must lie in [1, 2]");
}

namespace {

// Shared by the public entry point and the bound assemblers; `fold` is the
// conservative fold size floor(n/K).
std::pair<double, VarsigmaBranch> varsigma_for_fold(const TailProfile& profile, double fold,
                                                    double varpi, double c) {
  if (profile.tail_class == TailClass::bounded) {
    const double value = 2.0 * profile.envelope * std::sqrt(std::log(1.0 / varpi) / fold);
    return {value, VarsigmaBranch::bounded};
  }
  if (profile.tail_class == TailClass::subgaussian) {
    const double value =
        2.0 * profile.xi * profile.sigma_tilde * std::sqrt(std::log(1.0 / varpi) / fold);
    return {value, VarsigmaBranch::subgaussian};
  }
  if (profile.tail_class == TailClass::subexponential) {
    if (!std::isfinite(profile.psi1_norm)) {
      fail(Errc::NoBranch, "Psi_1 norm unavailable; no Theorem-1 branch applies");
    }
    const double log_root = std::log(2.0 / varpi) / c;  // log of the c-th root of 2/varpi
    if (varpi < 2.0 * std::exp(-2.0 * c)) {
      return {profile.psi1_norm * log_root, VarsigmaBranch::subexp_small_varpi};
    }
    return {profile.psi1_norm * std::sqrt(2.0 * log_root), VarsigmaBranch::subexp_large_varpi};
  }
  fail(Errc::NoBranch, "tail class undetermined");
}

}  // namespace

std::pair<double, VarsigmaBranch> varsigma_iid(const TailProfile& profile, std::size_t n,
                                               std::size_t K, double varpi, double c) {
  if (!(varpi > 0.0 && varpi <= 1.0)) fail(Errc::BadParams, "varpi must lie in (0, 1]");
  if (K < 2 || K > n) fail(Errc::BadK, "K outside [2, n]");
  return varsigma_for_fold(profile, static_cast<double>(n / K), varpi, c);
}

BoundResult one_round_bound_iid(const RiskSummary& rs, const RademacherEstimate& rc_fold,
                                const TailProfile& profile, const BoundConfig& cfg,
                                std::size_t q) {
  cfg.validate();
  if (q >= rs.K) fail(Errc::BadParams, "round index out of range");

  BoundResult out;
  auto [vs, branch] =
      varsigma_for_fold(profile, static_cast<double>(rs.n_s), cfg.varpi, cfg.c);
  out.varsigma = vs;
  out.branch = branch;
  out.rc_term = 2.0 * rc_fold.value;
  out.confidence = 1.0 - cfg.varpi;
  out.rhs.resize(rs.m);
  for (std::size_t j = 0; j < rs.m; ++j) out.rhs[j] = rs.train(q, j) + out.rc_term + vs;
  return out;
}

std::pair<double, KappaCase> kappa_convoluted(const TailProfile& profile,
                                              const DependenceProfile& dep, std::size_t K,
                                              double varpi, double c) {
  if (K < 2) fail(Errc::BadK, "K must be at least 2");
  if (!(varpi > 0.0 && varpi <= 1.0)) fail(Errc::BadParams, "varpi must lie in (0, 1]");
  const double lift = 1.0 + 2.0 * dep.V;

  if (profile.tail_class == TailClass::bounded || profile.tail_class == TailClass::subgaussian) {
    if (varpi == 1.0) {
      fail(Errc::UndefinedAtVarpiOne, "Psi_2 kappa undefined at varpi = 1 (log(1/varpi) = 0)");
    }
    const double kappa = lift / (2.0 * profile.xi * profile.xi * static_cast<double>(K) *
                                 std::log(1.0 / varpi));
    return {kappa, KappaCase::psi2};
  }

  if (!std::isfinite(profile.psi1_norm)) {
    fail(Errc::NoBranch, "Psi_1 norm unavailable; no convoluted case applies");
  }
  const double log_root = std::log(2.0 / varpi) / c;
  if (varpi >= 2.0 * std::exp(-2.0 * c)) {
    return {6.0 * lift / (static_cast<double>(K) * log_root), KappaCase::psi1_large_varpi};
  }
  return {12.0 * lift / (static_cast<double>(K) * log_root * log_root),
          KappaCase::psi1_small_varpi};
}

namespace {

void apply_confidence_floor(BoundResult& out, double floor) {
  if (out.feasible && out.confidence < floor) {
    out.feasible = false;
    out.reason = "confidence " + std::to_string(out.confidence) + " below floor " +
                 std::to_string(floor);
    out.rhs.clear();
  }
}

}  // namespace

BoundResult convoluted_bound_iid(const RiskSummary& rs, const RademacherEstimate& rc_one_round,
                                 const TailProfile& profile, const DependenceProfile& dep,
                                 const BoundConfig& cfg) {
  cfg.validate();
  BoundResult out;
  auto [vs, branch] =
      varsigma_for_fold(profile, static_cast<double>(rs.n_s), cfg.varpi, cfg.c);
  out.varsigma = vs;
  out.branch = branch;
  auto [kp, kcase] = kappa_convoluted(profile, dep, rs.K, cfg.varpi, cfg.c);
  out.kappa = kp;
  out.kappa_case = kcase;
  out.confidence = std::max(0.0, 1.0 - kp);
  out.rc_term = 2.0 * rc_one_round.value;
  if (kp >= 1.0) {
    out.feasible = false;
    out.reason = "kappa = " + std::to_string(kp) + " >= 1";
    return out;
  }
  out.rhs.resize(rs.m);
  for (std::size_t j = 0; j < rs.m; ++j) out.rhs[j] = rs.avg_train[j] + out.rc_term + vs;
  apply_confidence_floor(out, cfg.confidence_floor);
  return out;
}

namespace {

double mixing_penalty(double M, double varpi_prime, std::size_t mu) {
  return M * std::sqrt(std::log(4.0 / varpi_prime) / (2.0 * static_cast<double>(mu)));
}

double varpi_prime_of(const BlockLayout& layout, const MixingModel& mixing, double varpi) {
  const double beta_t = mixing_beta(mixing, layout.a_t);
  const double beta_s = mixing_beta(mixing, layout.a_s);
  return varpi - static_cast<double>(layout.mu - 1) * (beta_t + beta_s);
}

}  // namespace

BoundResult one_round_bound_mixing(const RiskSummary& rs, const BlockRc& rc_blocks,
                                   const BlockLayout& layout, const MixingModel& mixing, double M,
                                   double varpi, std::size_t q) {
  if (!(varpi > 0.0 && varpi <= 1.0)) fail(Errc::BadParams, "varpi must lie in (0, 1]");
  if (q >= rs.K) fail(Errc::BadParams, "round index out of range");
  if (!(M >= 0.0) || !std::isfinite(M)) {
    fail(Errc::UnboundedClass, "block bounds need a finite certified envelope");
  }

  BoundResult out;
  out.branch = VarsigmaBranch::mixing;
  out.rc_term = 2.0 * rc_blocks.estimate.value;
  out.rc_from_test_side = rc_blocks.from_test_side;
  out.confidence = 1.0 - varpi;
  const double vp = varpi_prime_of(layout, mixing, varpi);
  out.varpi_prime = vp;
  if (vp <= 0.0) {
    fail(Errc::InfeasibleMixing, "varpi' = " + std::to_string(vp) +
                                     " <= 0: the mixing correction swallows varpi");
  }
  out.varsigma = mixing_penalty(M, vp, layout.mu);
  out.rhs.resize(rs.m);
  for (std::size_t j = 0; j < rs.m; ++j) out.rhs[j] = rs.train(q, j) + out.varsigma + out.rc_term;
  return out;
}

BoundResult convoluted_bound_mixing(const RiskSummary& rs, const BlockRc& rc_blocks,
                                    const DependenceProfile& dep, const BlockLayout& layout,
                                    const MixingModel& mixing, double M, const BoundConfig& cfg) {
  cfg.validate();
  if (!(M >= 0.0) || !std::isfinite(M)) {
    fail(Errc::UnboundedClass, "block bounds need a finite certified envelope");
  }

  BoundResult out;
  out.branch = VarsigmaBranch::mixing;
  out.rc_term = 2.0 * rc_blocks.estimate.value;
  out.rc_from_test_side = rc_blocks.from_test_side;
  const double vp = varpi_prime_of(layout, mixing, cfg.varpi);
  out.varpi_prime = vp;
  const double lift = 1.0 + 2.0 * dep.V;
  const double k_over_mu = static_cast<double>(rs.K) / static_cast<double>(layout.mu);
  const double window_hi = 4.0 * std::exp(-2.0 * lift / k_over_mu);
  if (vp <= 0.0 || vp > window_hi) {
    fail(Errc::InfeasibleWindow, "varpi' = " + std::to_string(vp) +
                                     " outside (0, " + std::to_string(window_hi) + "]");
  }
  const double kappa = kappa_mixing(dep.V, rs.K, layout.mu, vp);
  out.kappa = kappa;
  out.kappa_case = KappaCase::mixing;
  out.confidence = std::max(0.0, 1.0 - kappa);
  if (kappa >= 1.0) {
    out.feasible = false;
    out.reason = "kappa = " + std::to_string(kappa) + " >= 1";
    return out;
  }
  out.varsigma = mixing_penalty(M, vp, layout.mu);
  out.rhs.resize(rs.m);
  for (std::size_t j = 0; j < rs.m; ++j) {
    out.rhs[j] = rs.avg_train[j] + out.rc_term + out.varsigma;
  }
  apply_confidence_floor(out, cfg.confidence_floor);
  return out;
}

double kappa_mixing(double V, std::size_t K, std::size_t mu, double varpi_prime) {
  if (!(V >= 0.0)) fail(Errc::BadParams, "V must be non-negative");
  if (K < 2 || mu < 2) fail(Errc::BadParams, "need K >= 2 and mu >= 2");
  if (!(varpi_prime > 0.0 && varpi_prime < 4.0)) {
    fail(Errc::BadParams, "varpi' must lie in (0, 4) for a positive log(4/varpi')");
  }
  return 2.0 * (1.0 + 2.0 * V) /
         (std::log(4.0 / varpi_prime) * static_cast<double>(K) / static_cast<double>(mu));
}

RatioCheck lemma_a1_ratio(const DependenceProfile& dep, double psi1_rho, std::size_t K,
                          double slack) {
  if (K < 2) fail(Errc::BadK, "K must be at least 2");
  if (!(psi1_rho > 0.0)) fail(Errc::ZeroNorm, "Psi_1 norm of rho must be positive");
  RatioCheck rc;
  rc.ratio = dep.gamma0 / (psi1_rho * psi1_rho);
  rc.bound = 8.0 + 4.0 / static_cast<double>(K - 1);
  rc.holds = rc.ratio <= rc.bound * (1.0 + slack);
  return rc;
}

}  // namespace cvbound
