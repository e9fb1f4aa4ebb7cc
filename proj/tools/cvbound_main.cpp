// cvbound: stability bounds for K-fold cross-validation and the choice of K.
//
// Subcommands:
//   analyze  K-scan, bound curve, selection and per-round risks from a CSV
//   select   like analyze without the risk table
//   verify   Monte Carlo verification of the implemented inequalities
//   split    dump a fold assignment as JSON
//   rc       standalone Rademacher complexity estimate

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "cvbound/complexity.hpp"
#include "cvbound/csv.hpp"
#include "cvbound/pipeline.hpp"
#include "cvbound/rng.hpp"

namespace {

// Exit codes: 0 success / feasible, 1 input or config error, 2 no feasible K,
// 3 verification ran but failed.
constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitNoFeasibleK = 2;
constexpr int kExitVerifyFailed = 3;

struct Overrides {
  std::optional<double> varpi;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> rc_draws;
  std::optional<std::size_t> k_min, k_max;
  std::optional<std::size_t> mu;
  std::optional<std::string> mode;
  std::optional<std::string> output_dir;
  std::optional<double> xi, c, nu;
};

void add_override_flags(CLI::App* cmd, Overrides& ov) {
  cmd->add_option("--varpi", ov.varpi, "failure mass in (0, 1]");
  cmd->add_option("--seed", ov.seed, "master RNG seed");
  cmd->add_option("--rc-draws", ov.rc_draws, "Monte Carlo sign draws per RC estimate");
  cmd->add_option("--k-min", ov.k_min, "smallest fold count scanned");
  cmd->add_option("--k-max", ov.k_max, "largest fold count scanned");
  cmd->add_option("--mu", ov.mu, "block pairs per segment (mixing modes)");
  cmd->add_option("--mode", ov.mode,
                  "iid_one_round | iid_convoluted | mixing_one_round | mixing_convoluted");
  cmd->add_option("--output-dir", ov.output_dir, "where the result files go");
  cmd->add_option("--xi", ov.xi, "variance-proxy ratio");
  cmd->add_option("--c", ov.c, "Bernstein absolute constant");
  cmd->add_option("--nu", ov.nu, "tail exponent in [1, 2]");
}

cvbound::RunConfig apply_overrides(cvbound::RunConfig cfg, const Overrides& ov) {
  if (ov.varpi) cfg.varpi = *ov.varpi;
  if (ov.seed) cfg.seed = *ov.seed;
  if (ov.rc_draws) cfg.rc_draws = *ov.rc_draws;
  if (ov.k_min || ov.k_max) {
    std::size_t lo = ov.k_min.value_or(cfg.k_range ? cfg.k_range->first : 2);
    std::size_t hi = ov.k_max.value_or(cfg.k_range ? cfg.k_range->second : lo);
    if (hi < lo) hi = lo;
    cfg.k_range = std::make_pair(lo, hi);
  }
  if (ov.mu) cfg.mu = *ov.mu;
  if (ov.mode) cfg.mode = cvbound::bound_mode_from_name(*ov.mode);
  if (ov.output_dir) cfg.output_dir = *ov.output_dir;
  if (ov.xi) cfg.xi = *ov.xi;
  if (ov.c) cfg.c = *ov.c;
  if (ov.nu) cfg.nu = *ov.nu;
  cfg.validate();
  return cfg;
}

int exit_code_for(const cvbound::Error& e) {
  return e.code() == cvbound::Errc::NoFeasibleK ? kExitNoFeasibleK : kExitInputError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stability bounds for K-fold cross-validation"};
  app.require_subcommand(1);

  std::string config_path;
  Overrides ov;

  auto* cmd_analyze = app.add_subcommand("analyze", "bound curve + selection + risk table");
  cmd_analyze->add_option("--config", config_path, "JSON run configuration")->required();
  add_override_flags(cmd_analyze, ov);

  auto* cmd_select = app.add_subcommand("select", "bound curve + selection");
  cmd_select->add_option("--config", config_path, "JSON run configuration")->required();
  add_override_flags(cmd_select, ov);

  auto* cmd_verify = app.add_subcommand("verify", "Monte Carlo inequality verification");
  cvbound::VerifyOptions vopts;
  std::string report_path;
  cmd_verify->add_option("--theorem", vopts.theorem, "1 | 2 | 4 | 5 | lemma1 | lemmaA1 | yu")
      ->required();
  cmd_verify->add_option("--trials", vopts.trials, "replications (>= 500)");
  cmd_verify->add_option("--seed", vopts.seed, "master RNG seed");
  cmd_verify->add_option("--n", vopts.n, "sample size (theorem-specific default)");
  cmd_verify->add_option("--m", vopts.m, "hypothesis count");
  cmd_verify->add_option("--k", vopts.K, "fold count");
  cmd_verify->add_option("--mu", vopts.mu, "block pairs");
  cmd_verify->add_option("--varpi", vopts.varpi, "failure mass");
  cmd_verify->add_option("--rc-draws", vopts.rc_draws, "sign draws per RC estimate");
  cmd_verify->add_option("--report", report_path, "also write the JSON report here");

  auto* cmd_split = app.add_subcommand("split", "dump a fold assignment as JSON");
  std::size_t split_n = 0, split_k = 2, split_mu = 2;
  std::uint64_t split_seed = 0;
  std::string split_scheme = "random";
  cmd_split->add_option("--n", split_n, "sample count")->required();
  cmd_split->add_option("--k", split_k, "fold count")->required();
  cmd_split->add_option("--seed", split_seed, "RNG seed (random scheme)");
  cmd_split->add_option("--scheme", split_scheme, "random | blocked");
  cmd_split->add_option("--mu", split_mu, "block pairs (blocked scheme)");

  auto* cmd_rc = app.add_subcommand("rc", "Rademacher complexity of the loss class");
  std::size_t rc_fold_size = 0;
  cmd_rc->add_option("--config", config_path, "JSON run configuration")->required();
  cmd_rc->add_option("--fold-size", rc_fold_size, "per-fold RC over this fold size (0: full)");
  add_override_flags(cmd_rc, ov);

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_analyze->parsed() || cmd_select->parsed()) {
      const auto cfg = apply_overrides(cvbound::load_config(config_path), ov);
      const bool with_risks = cmd_analyze->parsed();
      const auto out = cvbound::run_analyze(cfg, with_risks);
      std::cout << out.selection_json;
      return kExitOk;
    }

    if (cmd_verify->parsed()) {
      bool passed = false;
      const std::string report = cvbound::run_verify(vopts, &passed);
      std::cout << report;
      if (!report_path.empty()) cvbound::write_text_file(report_path, report);
      return passed ? kExitOk : kExitVerifyFailed;
    }

    if (cmd_split->parsed()) {
      const auto fa = split_scheme == "blocked"
                          ? cvbound::blocked_kfold(split_n, split_k, split_mu)
                          : cvbound::random_kfold(split_n, split_k, split_seed);
      std::cout << cvbound::fold_assignment_json(fa);
      return kExitOk;
    }

    if (cmd_rc->parsed()) {
      const auto cfg = apply_overrides(cvbound::load_config(config_path), ov);
      const auto data = cvbound::read_dataset_csv(cfg.dataset_path);
      const auto model = cfg.make_model_class();
      const auto lm = cvbound::LossMatrix::build(data, cfg.loss, model);
      cvbound::RademacherEstimate est;
      if (rc_fold_size > 0) {
        est = cvbound::per_fold_rc(lm, rc_fold_size, cfg.rc_draws, cfg.seed);
      } else {
        std::vector<std::size_t> all(lm.rows());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        est = cvbound::rademacher_complexity(lm, all, cfg.rc_draws, cfg.seed);
      }
      nlohmann::json j{{"value", est.value},
                       {"std_err", est.std_err},
                       {"draws", est.draws},
                       {"l", est.l},
                       {"exact", est.exact},
                       {"master_seed", cfg.seed}};
      std::cout << j.dump(2) << "\n";
      return kExitOk;
    }
  } catch (const cvbound::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
