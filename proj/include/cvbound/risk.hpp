#pragma once

#include <cstddef>
#include <vector>

#include "cvbound/data_model.hpp"
#include "cvbound/folds.hpp"

namespace cvbound {

/// Per-round training/test errors plus the gap process that drives the
/// convoluted bounds: U_q = sup_b |test - train| and T_q = U_q - mean(U).
struct RiskSummary {
  std::size_t K = 0;
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t n_s = 0;  // conservative fold size floor(n/K) used by the bounds
  std::vector<double> train_err;  // K x m, row-major
  std::vector<double> test_err;   // K x m, row-major
  std::vector<double> avg_train;  // per hypothesis
  std::vector<double> avg_test;   // per hypothesis
  std::vector<double> U;          // per round
  std::vector<double> T;          // per round, sums to 0
  double EU_hat = 0.0;

  double train(std::size_t q, std::size_t j) const { return train_err[q * m + j]; }
  double test(std::size_t q, std::size_t j) const { return test_err[q * m + j]; }
};

RiskSummary compute_risks(const LossMatrix& lm, const FoldAssignment& fa);

enum class RhoReference { population, full_sample };

/// rho_j = sup_b |fold-j mean loss - reference risk(b)|, one entry per fold.
struct RhoSample {
  std::vector<double> rho;
  RhoReference reference = RhoReference::full_sample;
};

/// The population reference needs a per-hypothesis true-risk vector (only the
/// simulator has one); the analyzer substitutes the full-sample mean.
RhoSample compute_rho(const LossMatrix& lm, const FoldAssignment& fa, RhoReference reference,
                      const std::vector<double>* true_risk = nullptr);

}  // namespace cvbound
