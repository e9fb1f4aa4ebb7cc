#include "cvbound/selection.hpp"

#include <algorithm>
#include <cmath>

#include "cvbound/complexity.hpp"
#include "cvbound/risk.hpp"
#include "cvbound/rng.hpp"

namespace cvbound {

std::vector<std::size_t> make_k_grid(std::size_t n, std::size_t k_cap,
                                     std::optional<std::pair<std::size_t, std::size_t>> range) {
  std::vector<std::size_t> grid;
  if (range) {
    auto [lo, hi] = *range;
    if (lo < 2 || hi > n || lo > hi) fail(Errc::BadK, "K range outside [2, n]");
    for (std::size_t k = lo; k <= hi; ++k) grid.push_back(k);
  } else {
    const std::size_t hi = std::min(n, k_cap);
    for (std::size_t k = 2; k <= hi; ++k) grid.push_back(k);
    if (n > hi && n >= 2) grid.push_back(n);  // leave-one-out, the informative extreme
  }
  return grid;
}

namespace {

double sigma_term_of(const TailProfile& profile, VarsigmaBranch branch) {
  switch (branch) {
    case VarsigmaBranch::bounded:
    case VarsigmaBranch::mixing:
      return profile.envelope;
    case VarsigmaBranch::subgaussian:
      return profile.xi * profile.sigma_tilde;
    case VarsigmaBranch::subexp_small_varpi:
    case VarsigmaBranch::subexp_large_varpi:
      return profile.psi1_norm;
  }
  return 0.0;
}

struct Evaluated {
  CurvePoint point;
  std::vector<double> rhs;
};

// One point of the K-scan; infeasibility (error or flag) lands in the point's
// reason instead of escaping.
Evaluated evaluate_k(const LossMatrix& lm, const SelectionConfig& cfg, std::size_t K,
                     std::uint64_t seed) {
  Evaluated ev;
  ev.point.K = K;
  ev.point.feasible = false;

  const bool mixing_mode = cfg.bound.mode == BoundMode::mixing_convoluted;
  try {
    const FoldAssignment fa = mixing_mode ? blocked_kfold(lm.rows(), K, cfg.mu)
                                          : random_kfold(lm.rows(), K, rng::derive_seed(seed, 0));
    const RiskSummary rs = compute_risks(lm, fa);
    const RhoSample rho = compute_rho(lm, fa, RhoReference::full_sample);
    const TailProfile profile = build_tail_profile(rho, lm, cfg.tail);
    const DependenceProfile dep = autocovariance_profile(rs.T);
    ev.point.gamma0 = dep.gamma0;
    ev.point.v_hat = dep.V;

    BoundResult res;
    if (mixing_mode) {
      if (!lm.envelope_certified()) {
        fail(Errc::UnboundedClass, "mixing bounds need a certified envelope");
      }
      double sum = 0.0, varsum = 0.0;
      std::size_t test_wins = 0;
      BlockRc rcb;
      for (std::size_t q = 0; q < fa.K; ++q) {
        const BlockRc one = max_block_rc(lm, fa, q, cfg.rc_draws, rng::derive_seed(seed, q + 1));
        sum += one.estimate.value;
        varsum += one.estimate.std_err * one.estimate.std_err;
        if (one.from_test_side) ++test_wins;
      }
      rcb.estimate.value = sum / static_cast<double>(fa.K);
      rcb.estimate.std_err = std::sqrt(varsum) / static_cast<double>(fa.K);
      rcb.from_test_side = 2 * test_wins >= fa.K;
      res = convoluted_bound_mixing(rs, rcb, dep, fa.layouts[0], cfg.mixing, lm.envelope(),
                                    cfg.bound);
      ev.point.rc = rcb.estimate.value;
    } else {
      const RademacherEstimate rc = one_round_rc(lm, fa, cfg.rc_draws, rng::derive_seed(seed, 1));
      res = convoluted_bound_iid(rs, rc, profile, dep, cfg.bound);
      ev.point.rc = rc.value;
    }

    ev.point.branch = branch_name(res.branch);
    ev.point.sigma_term = sigma_term_of(profile, res.branch);
    ev.point.varsigma = res.varsigma;
    ev.point.kappa = res.kappa.value_or(0.0);
    ev.point.confidence = res.confidence;
    if (!res.feasible) {
      ev.point.reason = res.reason;
      return ev;
    }

    std::size_t argmin = 0;
    for (std::size_t j = 1; j < res.rhs.size(); ++j) {
      if (res.rhs[j] < res.rhs[argmin]) argmin = j;
    }
    ev.point.feasible = true;
    ev.point.rhs_min = res.rhs[argmin];
    ev.point.argmin_b = argmin;
    ev.rhs = std::move(res.rhs);
  } catch (const Error& e) {
    ev.point.reason = e.what();
  }
  return ev;
}

}  // namespace

SelectionResult select_k(const LossMatrix& lm, const SelectionConfig& cfg,
                         const std::vector<std::size_t>& k_grid, std::uint64_t master_seed) {
  cfg.bound.validate();
  if (cfg.bound.mode != BoundMode::iid_convoluted &&
      cfg.bound.mode != BoundMode::mixing_convoluted) {
    fail(Errc::ConfigError, "selection minimizes a convoluted bound; pick a convoluted mode");
  }
  if (k_grid.empty()) fail(Errc::BadK, "empty K grid");

  SelectionResult result;
  result.master_seed = master_seed;
  bool found = false;
  for (std::size_t K : k_grid) {
    Evaluated ev = evaluate_k(lm, cfg, K, rng::derive_seed(master_seed, K));
    if (ev.point.feasible) {
      // Strict less keeps ties at the smaller K (grid is scanned ascending)
      // and the smaller hypothesis index (argmin scan is left to right).
      if (!found || ev.point.rhs_min < result.rhs_star) {
        found = true;
        result.k_star = K;
        result.b_star = ev.point.argmin_b;
        result.rhs_star = ev.point.rhs_min;
        result.confidence_star = ev.point.confidence;
      }
    }
    result.curve.push_back(std::move(ev.point));
  }

  if (!found) {
    std::string detail = "no feasible K in the scanned grid;";
    for (const auto& pt : result.curve) {
      detail += " K=" + std::to_string(pt.K) + ": " + pt.reason + ";";
    }
    fail(Errc::NoFeasibleK, detail);
  }
  return result;
}

const char* stability_verdict_name(StabilityVerdict v) {
  switch (v) {
    case StabilityVerdict::stable: return "stable";
    case StabilityVerdict::unstable: return "unstable";
    case StabilityVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

StabilityReport check_stability(const LossMatrix& lm, std::size_t K, double beta, double varpi,
                                std::size_t trials, std::uint64_t master_seed, double width_cap) {
  if (trials < 1) fail(Errc::InsufficientTrials, "need at least one trial");
  if (!(beta >= 0.0)) fail(Errc::BadParams, "beta must be non-negative");
  if (!(varpi > 0.0 && varpi <= 1.0)) fail(Errc::BadParams, "varpi must lie in (0, 1]");

  std::size_t one_round_hits = 0, average_hits = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const FoldAssignment fa = random_kfold(lm.rows(), K, rng::derive_seed(master_seed, t));
    const RiskSummary rs = compute_risks(lm, fa);
    if (rs.U[0] >= beta) ++one_round_hits;
    double avg_gap = 0.0;
    for (std::size_t j = 0; j < rs.m; ++j) {
      avg_gap = std::max(avg_gap, std::abs(rs.avg_train[j] - rs.avg_test[j]));
    }
    if (avg_gap >= beta) ++average_hits;
  }

  auto summarize = [&](std::size_t hits) {
    StabilityEstimate est;
    est.exceedance = static_cast<double>(hits) / static_cast<double>(trials);
    est.wilson = wilson_interval(hits, trials);
    if (est.wilson.width() > width_cap) {
      fail(Errc::InsufficientTrials,
           "Wilson interval width " + std::to_string(est.wilson.width()) + " exceeds cap " +
               std::to_string(width_cap) + "; raise --trials");
    }
    if (est.wilson.high <= varpi) {
      est.verdict = StabilityVerdict::stable;
    } else if (est.wilson.low > varpi) {
      est.verdict = StabilityVerdict::unstable;
    } else {
      est.verdict = StabilityVerdict::inconclusive;
    }
    return est;
  };

  StabilityReport rep;
  rep.trials = trials;
  rep.one_round = summarize(one_round_hits);
  rep.average = summarize(average_hits);
  return rep;
}

}  // namespace cvbound
