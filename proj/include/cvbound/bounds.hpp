#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cvbound/complexity.hpp"
#include "cvbound/dependence.hpp"
#include "cvbound/folds.hpp"
#include "cvbound/risk.hpp"
#include "cvbound/tails.hpp"

namespace cvbound {

enum class BoundMode { iid_one_round, iid_convoluted, mixing_one_round, mixing_convoluted };

const char* bound_mode_name(BoundMode mode);
BoundMode bound_mode_from_name(const std::string& name);

struct BoundConfig {
  double varpi = 0.1;            // failure mass, in (0, 1]
  double confidence_floor = 0.0; // reject results whose (1-kappa)+ falls below
  double c = 1.0;                // Bernstein absolute constant
  double nu = 2.0;
  BoundMode mode = BoundMode::iid_convoluted;

  void validate() const;
};

// Which confidence-penalty formula fired.
enum class VarsigmaBranch {
  bounded,
  subgaussian,
  subexp_small_varpi,
  subexp_large_varpi,
  mixing,  // the M sqrt(log(4/varpi')/(2 mu)) penalty of the block bounds
};

const char* branch_name(VarsigmaBranch b);

enum class KappaCase { psi2, psi1_large_varpi, psi1_small_varpi, mixing };

/// One evaluated bound. When infeasible, `rhs` is empty and `reason` says why.
struct BoundResult {
  double varsigma = 0.0;
  double rc_term = 0.0;              // the 2*RC value added to the training error
  std::vector<double> rhs;           // per hypothesis
  std::optional<double> kappa;       // convoluted modes
  double confidence = 0.0;           // 1 - varpi, or (1 - kappa)+
  VarsigmaBranch branch = VarsigmaBranch::bounded;
  std::optional<KappaCase> kappa_case;
  bool feasible = true;
  std::optional<double> varpi_prime;  // mixing modes
  bool rc_from_test_side = true;      // mixing modes: which S_0 family won the max
  std::string reason;                 // set when infeasible
};

/// Theorem-1 confidence penalty; branch priority bounded > subgaussian >
/// subexponential, the subexponential sub-branch picked by comparing varpi
/// with 2 exp(-2c).
std::pair<double, VarsigmaBranch> varsigma_iid(const TailProfile& profile, std::size_t n,
                                               std::size_t K, double varpi, double c);

/// One-round i.i.d. bound for round q:
/// rhs_j = train_err[q][j] + 2 RC_{n/K} + varsigma, confidence 1 - varpi.
BoundResult one_round_bound_iid(const RiskSummary& rs, const RademacherEstimate& rc_fold,
                                const TailProfile& profile, const BoundConfig& cfg,
                                std::size_t q = 0);

/// Theorem-2 failure mass. Psi2 case (bounded or subgaussian rho):
/// (1+2V)/(2 xi^2 K log(1/varpi)); Psi1 case per the subexponential split.
std::pair<double, KappaCase> kappa_convoluted(const TailProfile& profile,
                                              const DependenceProfile& dep, std::size_t K,
                                              double varpi, double c);

/// Average-over-rounds i.i.d. bound:
/// rhs_j = avg_train[j] + 2 RC(Lambda, n, K) + varsigma, confidence (1-kappa)+.
BoundResult convoluted_bound_iid(const RiskSummary& rs, const RademacherEstimate& rc_one_round,
                                 const TailProfile& profile, const DependenceProfile& dep,
                                 const BoundConfig& cfg);

/// One-round block bound for round q of a beta-mixing series. Needs a
/// certified envelope; throws InfeasibleMixing when varpi' = varpi -
/// (mu-1)(beta_at + beta_as) is not positive.
BoundResult one_round_bound_mixing(const RiskSummary& rs, const BlockRc& rc_blocks,
                                   const BlockLayout& layout, const MixingModel& mixing, double M,
                                   double varpi, std::size_t q = 0);

/// Theorem-5 failure mass as a function of varpi' directly:
/// 2 (1 + 2V) / (log(4/varpi') K/mu).
double kappa_mixing(double V, std::size_t K, std::size_t mu, double varpi_prime);

/// Convoluted block bound; varpi' must fall inside
/// (0, 4 exp(-2(1+2V)/(K/mu))] and kappa = 2(1+2V)/(log(4/varpi') K/mu).
BoundResult convoluted_bound_mixing(const RiskSummary& rs, const BlockRc& rc_blocks,
                                    const DependenceProfile& dep, const BlockLayout& layout,
                                    const MixingModel& mixing, double M, const BoundConfig& cfg);

/// gamma0[T_q] / |rho|_Psi1^2 against its structural cap 8 + 4/(K-1); the
/// slack absorbs estimation noise in both plug-ins.
struct RatioCheck {
  double ratio = 0.0;
  double bound = 0.0;
  bool holds = false;
};
RatioCheck lemma_a1_ratio(const DependenceProfile& dep, double psi1_rho, std::size_t K,
                          double slack = 0.25);

}  // namespace cvbound
