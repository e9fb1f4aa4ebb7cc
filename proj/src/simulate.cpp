#include "cvbound/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cvbound/complexity.hpp"
#include "cvbound/risk.hpp"
#include "cvbound/rng.hpp"
#include "cvbound/stats.hpp"

namespace cvbound {

namespace {

// Offsets spreading the ar1 loss transforms over [-1, 1].
std::vector<double> transform_offsets(std::size_t m) {
  std::vector<double> c(m, 0.0);
  if (m > 1) {
    for (std::size_t j = 0; j < m; ++j) {
      c[j] = -1.0 + 2.0 * static_cast<double>(j) / static_cast<double>(m - 1);
    }
  }
  return c;
}

double truncated_normal_mean(double mean, double sd) {
  return mean * normal_cdf(mean / sd) + sd * normal_pdf(mean / sd);
}

}  // namespace

Generator Generator::bounded_uniform(double M) {
  if (!(M > 0.0)) fail(Errc::BadParams, "bounded_uniform needs M > 0");
  return Generator(Kind::bounded_uniform, M, 0.0);
}

Generator Generator::gaussian_loss(double mean, double sd) {
  if (!(sd > 0.0)) fail(Errc::BadParams, "gaussian_loss needs sd > 0");
  return Generator(Kind::gaussian_loss, mean, sd);
}

Generator Generator::exponential_loss(double rate) {
  if (!(rate > 0.0)) fail(Errc::BadParams, "exponential_loss needs rate > 0");
  return Generator(Kind::exponential_loss, rate, 0.0);
}

Generator Generator::ar1(double phi, double noise_sd) {
  if (!(std::abs(phi) < 1.0)) fail(Errc::BadParams, "ar1 needs |phi| < 1 for stationarity");
  if (!(noise_sd > 0.0)) fail(Errc::BadParams, "ar1 needs noise_sd > 0");
  return Generator(Kind::ar1, phi, noise_sd);
}

Generator Generator::linear_model(std::vector<double> b_true, double noise_sd) {
  if (b_true.empty()) fail(Errc::BadParams, "linear_model needs a non-empty coefficient vector");
  if (!(noise_sd > 0.0)) fail(Errc::BadParams, "linear_model needs noise_sd > 0");
  Generator g(Kind::linear_model, noise_sd, 0.0);
  g.b_true_ = std::move(b_true);
  return g;
}

LossMatrix Generator::make_losses(std::size_t n, std::size_t m, std::uint64_t seed) const {
  if (n < 1 || m < 1) fail(Errc::BadParams, "need n >= 1 and m >= 1");
  auto eng = rng::engine(seed);
  std::vector<double> values(n * m);
  switch (kind_) {
    case Kind::bounded_uniform:
      for (double& v : values) v = params_[0] * rng::uniform01(eng);
      break;
    case Kind::gaussian_loss:
      for (double& v : values) v = std::max(0.0, params_[0] + params_[1] * rng::normal(eng));
      break;
    case Kind::exponential_loss:
      for (double& v : values) v = rng::exponential(eng, params_[0]);
      break;
    default:
      fail(Errc::BadParams, "generator kind does not produce i.i.d. loss streams");
  }
  const bool certified = kind_ == Kind::bounded_uniform;
  std::optional<double> env;
  if (certified) env = params_[0];
  return LossMatrix::from_values(std::move(values), n, m, env, certified);
}

std::vector<double> Generator::make_series(std::size_t n, std::uint64_t seed) const {
  if (kind_ != Kind::ar1) fail(Errc::BadParams, "only the ar1 generator produces series");
  if (n < 1) fail(Errc::BadParams, "need n >= 1");
  const double phi = params_[0];
  const double sd = params_[1];
  const double sigma0 = sd / std::sqrt(1.0 - phi * phi);
  auto eng = rng::engine(seed);
  std::vector<double> x(n);
  x[0] = sigma0 * rng::normal(eng);
  for (std::size_t t = 1; t < n; ++t) x[t] = phi * x[t - 1] + sd * rng::normal(eng);
  return x;
}

LossMatrix Generator::make_mixing_losses(std::size_t n, std::size_t m,
                                         std::uint64_t seed) const {
  if (kind_ != Kind::ar1) fail(Errc::BadParams, "mixing losses come from the ar1 generator");
  if (m < 1) fail(Errc::BadParams, "need m >= 1");
  const double phi = params_[0];
  const double sd = params_[1];
  const double sigma0 = sd / std::sqrt(1.0 - phi * phi);
  const auto series = make_series(n, seed);
  const auto offsets = transform_offsets(m);
  std::vector<double> values(n * m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      values[i * m + j] = normal_cdf(series[i] / sigma0 - offsets[j]);
    }
  }
  return LossMatrix::from_values(std::move(values), n, m, 1.0, true);
}

Dataset Generator::make_dataset(std::size_t n, std::uint64_t seed) const {
  if (kind_ != Kind::linear_model) fail(Errc::BadParams, "only linear_model produces datasets");
  const std::size_t p = b_true_.size();
  auto eng = rng::engine(seed);
  std::vector<double> x(n * p), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double pred = 0.0;
    for (std::size_t k = 0; k < p; ++k) {
      x[i * p + k] = rng::normal(eng);
      pred += b_true_[k] * x[i * p + k];
    }
    y[i] = pred + params_[0] * rng::normal(eng);
  }
  return Dataset::validated(std::move(y), std::move(x), p);
}

std::vector<double> Generator::true_risks(std::size_t m) const {
  std::vector<double> r(m);
  switch (kind_) {
    case Kind::bounded_uniform:
      std::fill(r.begin(), r.end(), params_[0] / 2.0);
      break;
    case Kind::gaussian_loss:
      std::fill(r.begin(), r.end(), truncated_normal_mean(params_[0], params_[1]));
      break;
    case Kind::exponential_loss:
      std::fill(r.begin(), r.end(), 1.0 / params_[0]);
      break;
    case Kind::ar1: {
      // E Phi(Z - c) = Phi(-c / sqrt(2)) for Z standard normal.
      const auto offsets = transform_offsets(m);
      for (std::size_t j = 0; j < m; ++j) r[j] = normal_cdf(-offsets[j] / std::sqrt(2.0));
      break;
    }
    case Kind::linear_model:
      fail(Errc::BadParams, "linear_model risks depend on the hypothesis; use true_risk_linear");
  }
  return r;
}

double Generator::true_risk_linear(const std::vector<double>& b) const {
  if (kind_ != Kind::linear_model) fail(Errc::BadParams, "not a linear_model generator");
  if (b.size() != b_true_.size()) fail(Errc::BadParams, "hypothesis dimension mismatch");
  double d2 = 0.0;
  for (std::size_t k = 0; k < b.size(); ++k) {
    const double d = b[k] - b_true_[k];
    d2 += d * d;
  }
  return d2 + params_[0] * params_[0];
}

double Generator::true_gamma(std::size_t l) const {
  if (kind_ != Kind::ar1) fail(Errc::BadParams, "autocovariances only exist for ar1");
  const double phi = params_[0];
  const double sd = params_[1];
  return std::pow(phi, static_cast<double>(l)) * sd * sd / (1.0 - phi * phi);
}

double Generator::true_autocov_time(std::size_t n) const {
  if (kind_ != Kind::ar1) fail(Errc::BadParams, "autocovariances only exist for ar1");
  const double phi = std::abs(params_[0]);
  double v = 0.0;
  for (std::size_t l = 1; l < n; ++l) v += std::pow(phi, static_cast<double>(l));
  return v;
}

void Generator::self_check(std::size_t draws, std::uint64_t seed) const {
  auto eng = rng::engine(seed);
  auto check_mean = [&](double expected, double sd_bound, double got, const char* what) {
    const double tol = 4.0 * sd_bound / std::sqrt(static_cast<double>(draws));
    if (std::abs(got - expected) > tol) {
      fail(Errc::BadParams, std::string("self check failed for ") + what + ": got " +
                                std::to_string(got) + ", expected " + std::to_string(expected) +
                                " +- " + std::to_string(tol));
    }
  };

  switch (kind_) {
    case Kind::bounded_uniform: {
      double s = 0.0;
      for (std::size_t i = 0; i < draws; ++i) s += params_[0] * rng::uniform01(eng);
      check_mean(params_[0] / 2.0, params_[0] / std::sqrt(12.0),
                 s / static_cast<double>(draws), "uniform mean");
      break;
    }
    case Kind::gaussian_loss: {
      double s = 0.0;
      for (std::size_t i = 0; i < draws; ++i) {
        s += std::max(0.0, params_[0] + params_[1] * rng::normal(eng));
      }
      check_mean(truncated_normal_mean(params_[0], params_[1]), params_[1],
                 s / static_cast<double>(draws), "truncated normal mean");
      break;
    }
    case Kind::exponential_loss: {
      double s = 0.0;
      for (std::size_t i = 0; i < draws; ++i) s += rng::exponential(eng, params_[0]);
      check_mean(1.0 / params_[0], 1.0 / params_[0], s / static_cast<double>(draws),
                 "exponential mean");
      break;
    }
    case Kind::ar1: {
      const auto x = make_series(draws, rng::splitmix64(seed));
      double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(draws);
      const double g0 = true_gamma(0);
      // var of a sample autocovariance is O(gamma0^2 / n); 8 covers the
      // Bartlett factor for |phi| <= 0.8.
      const double sd_bound = g0 * std::sqrt(8.0);
      for (std::size_t l = 0; l <= 4; ++l) {
        double g = 0.0;
        for (std::size_t t = 0; t + l < x.size(); ++t) g += (x[t] - mean) * (x[t + l] - mean);
        g /= static_cast<double>(x.size());
        check_mean(true_gamma(l), sd_bound, g, "ar1 autocovariance");
      }
      break;
    }
    case Kind::linear_model: {
      double s = 0.0;
      const std::size_t p = b_true_.size();
      std::vector<double> probe(b_true_);
      probe[0] += 1.0;  // a hypothesis off by one unit in the first coordinate
      for (std::size_t i = 0; i < draws; ++i) {
        double pred_true = 0.0, pred_probe = 0.0;
        for (std::size_t k = 0; k < p; ++k) {
          const double xv = rng::normal(eng);
          pred_true += b_true_[k] * xv;
          pred_probe += probe[k] * xv;
        }
        const double yv = pred_true + params_[0] * rng::normal(eng);
        const double d = yv - pred_probe;
        s += d * d;
      }
      const double expected = true_risk_linear(probe);
      check_mean(expected, expected * std::sqrt(2.0), s / static_cast<double>(draws),
                 "linear model risk");
      break;
    }
  }
}

double tv_normal(double mu1, double v1, double mu2, double v2) {
  const double s1 = std::sqrt(v1), s2 = std::sqrt(v2);
  auto cdf1 = [&](double z) { return normal_cdf((z - mu1) / s1); };
  auto cdf2 = [&](double z) { return normal_cdf((z - mu2) / s2); };

  std::vector<double> roots;
  if (std::abs(v1 - v2) < 1e-14 * std::max(v1, v2)) {
    if (std::abs(mu1 - mu2) < 1e-15) return 0.0;
    roots.push_back(0.5 * (mu1 + mu2));
  } else {
    const double A = 0.5 / v2 - 0.5 / v1;
    const double B = mu1 / v1 - mu2 / v2;
    const double C = mu2 * mu2 / (2.0 * v2) - mu1 * mu1 / (2.0 * v1) - 0.5 * std::log(v1 / v2);
    const double disc = B * B - 4.0 * A * C;
    if (disc > 0.0) {
      const double sq = std::sqrt(disc);
      roots.push_back((-B - sq) / (2.0 * A));
      roots.push_back((-B + sq) / (2.0 * A));
      std::sort(roots.begin(), roots.end());
    }
  }

  // 0.5 * sum over sign-constant intervals of |dF1 - dF2|.
  double tv = 0.0;
  double prev1 = 0.0, prev2 = 0.0;
  for (double r : roots) {
    const double c1 = cdf1(r), c2 = cdf2(r);
    tv += std::abs((c1 - prev1) - (c2 - prev2));
    prev1 = c1;
    prev2 = c2;
  }
  tv += std::abs((1.0 - prev1) - (1.0 - prev2));
  return 0.5 * tv;
}

double ar1_beta_mixing(double phi, std::size_t a) {
  if (!(std::abs(phi) < 1.0)) fail(Errc::BadParams, "need |phi| < 1");
  if (a < 1) fail(Errc::BadParams, "gap must be at least 1");
  const double r = std::pow(phi, static_cast<double>(a));
  if (std::abs(r) < 1e-12) return 0.0;

  // Markov chain: beta(a) = E_w TV(N(r w, 1 - r^2), N(0, 1)), w ~ N(0, 1).
  // Composite Simpson over [-10, 10].
  const std::size_t steps = 2000;  // even
  const double lo = -10.0, hi = 10.0;
  const double h = (hi - lo) / static_cast<double>(steps);
  auto f = [&](double w) { return normal_pdf(w) * tv_normal(r * w, 1.0 - r * r, 0.0, 1.0); };
  double sum = f(lo) + f(hi);
  for (std::size_t i = 1; i < steps; ++i) {
    sum += f(lo + h * static_cast<double>(i)) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  return std::clamp(sum * h / 3.0, 0.0, 1.0);
}

MixingModel ar1_mixing_table(double phi, std::size_t max_a) {
  std::vector<double> values(max_a);
  for (std::size_t a = 1; a <= max_a; ++a) values[a - 1] = ar1_beta_mixing(phi, a);
  return MixingModel::table(std::move(values));
}

std::vector<std::vector<double>> independent_blocks_redraw(const Generator& gen,
                                                           const std::vector<IndexRange>& blocks,
                                                           std::uint64_t seed) {
  std::vector<std::vector<double>> out;
  out.reserve(blocks.size());
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    out.push_back(gen.make_series(blocks[i].size(), rng::derive_seed(seed, i)));
  }
  return out;
}

namespace {

// Average of per-round max-family block complexities, side = majority winner.
BlockRc averaged_block_rc(const LossMatrix& lm, const FoldAssignment& fa, std::size_t draws,
                          std::uint64_t seed) {
  double sum = 0.0, varsum = 0.0;
  std::size_t test_side_wins = 0;
  bool exact = true;
  std::size_t min_l = SIZE_MAX, min_draws = SIZE_MAX;
  for (std::size_t q = 0; q < fa.K; ++q) {
    const BlockRc rc = max_block_rc(lm, fa, q, draws, rng::derive_seed(seed, q));
    sum += rc.estimate.value;
    varsum += rc.estimate.std_err * rc.estimate.std_err;
    exact = exact && rc.estimate.exact;
    min_l = std::min(min_l, rc.estimate.l);
    min_draws = std::min(min_draws, rc.estimate.draws);
    if (rc.from_test_side) ++test_side_wins;
  }
  BlockRc out;
  out.estimate.value = sum / static_cast<double>(fa.K);
  out.estimate.std_err = std::sqrt(varsum) / static_cast<double>(fa.K);
  out.estimate.exact = exact;
  out.estimate.l = min_l;
  out.estimate.draws = min_draws;
  out.from_test_side = 2 * test_side_wins >= fa.K;
  return out;
}

bool any_exceeds(const std::vector<double>& value, const std::vector<double>& limit) {
  for (std::size_t j = 0; j < value.size(); ++j) {
    if (value[j] > limit[j]) return true;
  }
  return false;
}

}  // namespace

CoverageReport coverage_trial(const Generator& gen, const CoverageConfig& cfg, std::size_t K,
                              std::size_t trials, std::uint64_t master_seed) {
  if (trials < 1) fail(Errc::InsufficientTrials, "need at least one trial");
  const bool block_mode = cfg.theorem == "4" || cfg.theorem == "5";
  if (!block_mode && cfg.theorem != "1" && cfg.theorem != "2") {
    fail(Errc::BadParams, "coverage_trial handles theorems 1, 2, 4 and 5");
  }

  CoverageReport rep;
  rep.theorem = cfg.theorem;
  rep.trials = trials;

  BoundConfig bc;
  bc.varpi = cfg.varpi;
  bc.c = cfg.tail.bernstein_c;
  bc.nu = cfg.tail.nu;

  MixingModel mixing = MixingModel::none();
  if (block_mode) {
    if (gen.kind() != Generator::Kind::ar1) {
      fail(Errc::BadParams, "block-bound coverage needs the ar1 generator");
    }
    const FoldAssignment probe = blocked_kfold(cfg.n, K, cfg.mu);
    std::size_t max_a = 0;
    for (const auto& bl : probe.layouts) max_a = std::max({max_a, bl.a_t, bl.a_s});
    mixing = ar1_mixing_table(gen.param(0), max_a);
  }

  double kappa_sum = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::uint64_t s = rng::derive_seed(master_seed, t);
    bool violated = false;

    try {
      if (!block_mode) {
        const LossMatrix lm = gen.make_losses(cfg.n, cfg.m, rng::derive_seed(s, 0));
        const FoldAssignment fa = random_kfold(cfg.n, K, rng::derive_seed(s, 1));
        const RiskSummary rs = compute_risks(lm, fa);
        const auto oracle = gen.true_risks(cfg.m);
        const RhoSample rho = compute_rho(lm, fa, RhoReference::population, &oracle);
        const TailProfile profile = build_tail_profile(rho, lm, cfg.tail);

        if (cfg.theorem == "1") {
          const auto rc = per_fold_rc(lm, fa.n_s, cfg.rc_draws, rng::derive_seed(s, 2));
          const BoundResult res = one_round_bound_iid(rs, rc, profile, bc, cfg.round);
          if (!res.feasible) { ++rep.infeasible; continue; }
          std::vector<double> test(rs.m);
          for (std::size_t j = 0; j < rs.m; ++j) test[j] = rs.test(cfg.round, j);
          violated = any_exceeds(test, res.rhs);
        } else {
          const auto rc = one_round_rc(lm, fa, cfg.rc_draws, rng::derive_seed(s, 2));
          const DependenceProfile dep = autocovariance_profile(rs.T);
          const BoundResult res = convoluted_bound_iid(rs, rc, profile, dep, bc);
          if (!res.feasible) { ++rep.infeasible; continue; }
          kappa_sum += *res.kappa;
          violated = any_exceeds(rs.avg_test, res.rhs);
        }
      } else {
        const LossMatrix lm = gen.make_mixing_losses(cfg.n, cfg.m, rng::derive_seed(s, 0));
        const FoldAssignment fa = blocked_kfold(cfg.n, K, cfg.mu);
        const RiskSummary rs = compute_risks(lm, fa);

        if (cfg.theorem == "4") {
          const BlockRc rcb = max_block_rc(lm, fa, cfg.round, cfg.rc_draws,
                                           rng::derive_seed(s, 2));
          const BoundResult res = one_round_bound_mixing(rs, rcb, fa.layouts[cfg.round], mixing,
                                                         lm.envelope(), cfg.varpi, cfg.round);
          if (!res.feasible) { ++rep.infeasible; continue; }
          std::vector<double> test(rs.m);
          for (std::size_t j = 0; j < rs.m; ++j) test[j] = rs.test(cfg.round, j);
          violated = any_exceeds(test, res.rhs);
        } else {
          const BlockRc rcb = averaged_block_rc(lm, fa, cfg.rc_draws, rng::derive_seed(s, 2));
          const DependenceProfile dep = autocovariance_profile(rs.T);
          const BoundResult res = convoluted_bound_mixing(rs, rcb, dep, fa.layouts[0], mixing,
                                                          lm.envelope(), bc);
          if (!res.feasible) { ++rep.infeasible; continue; }
          kappa_sum += *res.kappa;
          violated = any_exceeds(rs.avg_test, res.rhs);
        }
      }
    } catch (const Error& e) {
      // Infeasible configurations assert nothing; they are reported, never
      // counted as violations.
      if (e.code() == Errc::InfeasibleWindow || e.code() == Errc::InfeasibleMixing ||
          e.code() == Errc::UndefinedAtVarpiOne) {
        ++rep.infeasible;
        continue;
      }
      throw;
    }

    ++rep.feasible;
    if (violated) ++rep.violations;
  }

  rep.exceedance =
      rep.feasible == 0 ? 0.0
                        : static_cast<double>(rep.violations) / static_cast<double>(rep.feasible);
  const bool kappa_mode = cfg.theorem == "2" || cfg.theorem == "5";
  rep.threshold = kappa_mode
                      ? (rep.feasible == 0 ? 0.0 : kappa_sum / static_cast<double>(rep.feasible))
                      : cfg.varpi;
  const auto wi = wilson_interval(rep.violations, rep.feasible);
  rep.wilson_low = wi.low;
  rep.wilson_high = wi.high;
  rep.pass = rep.feasible > 0 &&
             rep.exceedance <= rep.threshold + 2.0 * proportion_std_err(rep.violations,
                                                                        rep.feasible);
  return rep;
}

Lemma1Report lemma1_coverage(double phi, std::size_t n, const std::vector<double>& eps_grid,
                             std::size_t replications, std::uint64_t seed) {
  if (eps_grid.empty()) fail(Errc::BadParams, "empty epsilon grid");
  const Generator gen = Generator::ar1(phi, 1.0);
  const double gamma0 = gen.true_gamma(0);
  const double V = gen.true_autocov_time(n);

  std::vector<double> means(replications);
  for (std::size_t r = 0; r < replications; ++r) {
    const auto x = gen.make_series(n, rng::derive_seed(seed, r));
    means[r] = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  }

  Lemma1Report rep;
  rep.eps = eps_grid;
  rep.replications = replications;
  rep.pass = true;
  for (double eps : eps_grid) {
    std::size_t hits = 0;
    for (double mbar : means) {
      if (std::abs(mbar) <= eps) ++hits;
    }
    const double empirical = static_cast<double>(hits) / static_cast<double>(replications);
    const double bound = chebyshev_lower_bound(gamma0, V, n, eps);
    rep.empirical.push_back(empirical);
    rep.bound.push_back(bound);
    if (empirical < bound - 2.0 * proportion_std_err(hits, replications)) rep.pass = false;
  }
  return rep;
}

RatioReport lemma_a1_trial(std::size_t n, std::size_t m, std::size_t K,
                           std::size_t replications, double slack, std::uint64_t seed) {
  const Generator gen = Generator::exponential_loss(1.0);
  const auto oracle = gen.true_risks(m);
  RatioReport rep;
  rep.replications = replications;
  for (std::size_t r = 0; r < replications; ++r) {
    const std::uint64_t s = rng::derive_seed(seed, r);
    const LossMatrix lm = gen.make_losses(n, m, rng::derive_seed(s, 0));
    const FoldAssignment fa = random_kfold(n, K, rng::derive_seed(s, 1));
    const RiskSummary rs = compute_risks(lm, fa);
    const RhoSample rho = compute_rho(lm, fa, RhoReference::population, &oracle);
    const double psi1 = estimate_orlicz_norm(rho.rho, 1.0, 1e-6);
    const DependenceProfile dep = autocovariance_profile(rs.T);
    if (lemma_a1_ratio(dep, psi1, K, slack).holds) ++rep.holding;
  }
  rep.fraction = static_cast<double>(rep.holding) / static_cast<double>(replications);
  rep.pass = rep.fraction >= rep.required;
  return rep;
}

BlockApproxReport block_approximation_check(double phi, std::size_t a, std::size_t mu,
                                            std::size_t replications, std::uint64_t seed) {
  const Generator gen = Generator::ar1(phi, 1.0);
  const std::size_t segment = 2 * a * mu;
  const BlockLayout layout = block_layout(segment, segment, mu);

  auto block_mean_positive = [&](const std::vector<double>& block) {
    const double s = std::accumulate(block.begin(), block.end(), 0.0);
    return s > 0.0;
  };

  // h = 1{every S_0 block mean positive}; correlated blocks push its mean
  // above the independent-blocks value.
  std::size_t dep_hits = 0, ind_hits = 0;
  for (std::size_t r = 0; r < replications; ++r) {
    const auto series = gen.make_series(segment, rng::derive_seed(seed, 2 * r));
    bool all_pos = true;
    for (const auto& range : layout.test0) {
      std::vector<double> block(series.begin() + range.begin, series.begin() + range.end);
      if (!block_mean_positive(block)) { all_pos = false; break; }
    }
    if (all_pos) ++dep_hits;

    const auto redraw = independent_blocks_redraw(gen, layout.test0,
                                                  rng::derive_seed(seed, 2 * r + 1));
    all_pos = true;
    for (const auto& block : redraw) {
      if (!block_mean_positive(block)) { all_pos = false; break; }
    }
    if (all_pos) ++ind_hits;
  }

  BlockApproxReport rep;
  rep.replications = replications;
  rep.dependent_mean = static_cast<double>(dep_hits) / static_cast<double>(replications);
  rep.independent_mean = static_cast<double>(ind_hits) / static_cast<double>(replications);
  rep.difference = std::abs(rep.dependent_mean - rep.independent_mean);
  rep.beta_a = ar1_beta_mixing(phi, a);
  rep.bound = static_cast<double>(mu - 1) * rep.beta_a;
  const double se_dep = proportion_std_err(dep_hits, replications);
  const double se_ind = proportion_std_err(ind_hits, replications);
  rep.std_err = std::sqrt(se_dep * se_dep + se_ind * se_ind);
  rep.pass = rep.difference <= rep.bound + 3.0 * rep.std_err;
  return rep;
}

}  // namespace cvbound
