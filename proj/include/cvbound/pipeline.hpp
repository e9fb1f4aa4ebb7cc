#pragma once

#include <string>

#include "cvbound/config.hpp"
#include "cvbound/selection.hpp"
#include "cvbound/simulate.hpp"

namespace cvbound {

struct AnalyzeOutput {
  SelectionResult selection;
  std::string bound_curve_csv;
  std::string risks_csv;       // empty when risks were not requested
  std::string selection_json;
};

/// Full analysis on an in-memory loss matrix: K-scan, selection, rendered
/// output files. `with_risks` additionally renders the per-round risk table
/// at the selected K*.
AnalyzeOutput analyze(const LossMatrix& lm, const ModelClass& model, const RunConfig& cfg,
                      bool with_risks);

/// Loads the dataset, builds the loss matrix and writes bound_curve.csv,
/// selection.json (and risks.csv when requested) into cfg.output_dir.
AnalyzeOutput run_analyze(const RunConfig& cfg, bool with_risks = true);

struct VerifyOptions {
  std::string theorem = "1";  // 1, 2, 4, 5, lemma1, lemmaA1, yu
  std::size_t trials = 2000;
  std::uint64_t seed = 0;
  std::size_t n = 0;       // 0 picks the per-theorem default
  std::size_t m = 8;
  std::size_t K = 0;       // 0 picks the per-theorem default
  std::size_t mu = 0;      // 0 picks the per-theorem default
  double varpi = 0.1;
  std::size_t rc_draws = 256;
};

/// Dispatches to the Monte Carlo verification harness; the returned string is
/// the JSON report {theorem, params, trials, violations, wilson_low,
/// wilson_high, pass, detail}.
std::string run_verify(const VerifyOptions& opts, bool* passed = nullptr);

/// FoldAssignment rendered as JSON (the `split` subcommand and audit trail).
std::string fold_assignment_json(const FoldAssignment& fa);

/// Output directory resolution: config value, then $CVBOUND_OUT, then "out".
std::string resolve_output_dir(const RunConfig& cfg);

}  // namespace cvbound
