#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cvbound/bounds.hpp"
#include "cvbound/dependence.hpp"
#include "cvbound/stats.hpp"

namespace cvbound {

struct SelectionConfig {
  BoundConfig bound{};
  TailConfig tail{};
  std::size_t rc_draws = 1024;
  // mixing modes only
  std::size_t mu = 2;
  MixingModel mixing = MixingModel::none();
  // stops the default K grid; LOO (K = n) is always appended
  std::size_t k_cap = 50;
};

/// One row of the K-scan: everything the bound evaluation produced for this
/// fold count, feasible or not.
struct CurvePoint {
  std::size_t K = 0;
  std::string branch;
  double sigma_term = 0.0;  // tail scale entering varsigma (M, xi*sigma, or the Psi1 norm)
  double rc = 0.0;          // the RC estimate (the bound adds 2x this)
  double varsigma = 0.0;
  double kappa = 0.0;
  double confidence = 0.0;
  double gamma0 = 0.0;
  double v_hat = 0.0;
  double rhs_min = 0.0;
  std::size_t argmin_b = 0;
  bool feasible = false;
  std::string reason;
};

struct SelectionResult {
  std::size_t k_star = 0;
  std::size_t b_star = 0;
  double rhs_star = 0.0;
  double confidence_star = 0.0;
  std::vector<CurvePoint> curve;
  std::uint64_t master_seed = 0;
};

/// Fold counts scanned by default: every K in [2, min(n, k_cap)] plus
/// leave-one-out. An explicit range overrides this.
std::vector<std::size_t> make_k_grid(std::size_t n, std::size_t k_cap,
                                     std::optional<std::pair<std::size_t, std::size_t>> range);

/// Scans K, evaluates the convoluted bound per fold count, and returns the
/// feasible (K*, b*) with minimal rhs; ties break toward smaller K then
/// smaller hypothesis index. Throws NoFeasibleK (with per-K reasons) when
/// nothing survives.
SelectionResult select_k(const LossMatrix& lm, const SelectionConfig& cfg,
                         const std::vector<std::size_t>& k_grid, std::uint64_t master_seed);

enum class StabilityVerdict { stable, unstable, inconclusive };

const char* stability_verdict_name(StabilityVerdict v);

struct StabilityEstimate {
  double exceedance = 0.0;
  WilsonInterval wilson{};
  StabilityVerdict verdict = StabilityVerdict::inconclusive;
};

struct StabilityReport {
  StabilityEstimate one_round;  // Pr{ sup_b |R_nt - R_ns| >= beta } in a round
  StabilityEstimate average;    // the K-round-average variant
  std::size_t trials = 0;
};

/// Monte Carlo estimate of both stability probabilities over fresh re-splits
/// of the sample (resampling source); verdicts compare the Wilson interval
/// against varpi. Throws InsufficientTrials when the interval stays wider
/// than width_cap.
StabilityReport check_stability(const LossMatrix& lm, std::size_t K, double beta, double varpi,
                                std::size_t trials, std::uint64_t master_seed,
                                double width_cap = 0.5);

}  // namespace cvbound
