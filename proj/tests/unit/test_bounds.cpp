#include <doctest.h>

#include <cmath>

#include "cvbound/bounds.hpp"

using namespace cvbound;

namespace {

TailProfile bounded_profile(double M) {
  TailProfile tp;
  tp.envelope = M;
  tp.envelope_certified = true;
  tp.tail_class = TailClass::bounded;
  return tp;
}

TailProfile subgaussian_profile(double xi, double sigma_tilde) {
  TailProfile tp;
  tp.xi = xi;
  tp.sigma_tilde = sigma_tilde;
  tp.tail_class = TailClass::subgaussian;
  return tp;
}

TailProfile subexp_profile(double psi1) {
  TailProfile tp;
  tp.psi1_norm = psi1;
  tp.tail_class = TailClass::subexponential;
  return tp;
}

RiskSummary fake_summary(std::size_t K, std::size_t n, std::vector<double> train_row,
                         std::vector<double> avg_train) {
  RiskSummary rs;
  rs.K = K;
  rs.m = train_row.size();
  rs.n = n;
  rs.n_s = n / K;
  rs.train_err.resize(K * rs.m);
  rs.test_err.assign(K * rs.m, 0.0);
  for (std::size_t j = 0; j < rs.m; ++j) rs.train_err[j] = train_row[j];
  rs.avg_train = std::move(avg_train);
  rs.avg_test.assign(rs.m, 0.0);
  rs.U.assign(K, 0.0);
  rs.T.assign(K, 0.0);
  return rs;
}

}  // namespace

TEST_CASE("varsigma branch formulas") {
  // bounded: 2 M sqrt(log(1/varpi) / (n/K))
  auto [v1, b1] = varsigma_iid(bounded_profile(1.0), 100, 10, std::exp(-1.0), 1.0);
  CHECK(b1 == VarsigmaBranch::bounded);
  CHECK(v1 == doctest::Approx(2.0 * std::sqrt(0.1)).epsilon(1e-9));

  auto [v2, b2] = varsigma_iid(subgaussian_profile(1.0, 0.0), 100, 10, 0.5, 1.0);
  CHECK(b2 == VarsigmaBranch::subgaussian);
  CHECK(v2 == 0.0);

  // psi1 = 2, c = 1, varpi = 1: 2 exp(-2) < 1 puts us in the large branch
  auto [v3, b3] = varsigma_iid(subexp_profile(2.0), 100, 10, 1.0, 1.0);
  CHECK(b3 == VarsigmaBranch::subexp_large_varpi);
  CHECK(v3 == doctest::Approx(2.0 * std::sqrt(2.0 * std::log(2.0))).epsilon(1e-9));

  // small-varpi branch: psi1 * (1/c) log(2/varpi)
  const double small = 0.1;  // 2 exp(-2) ~ 0.2707 > 0.1
  auto [v4, b4] = varsigma_iid(subexp_profile(2.0), 100, 10, small, 1.0);
  CHECK(b4 == VarsigmaBranch::subexp_small_varpi);
  CHECK(v4 == doctest::Approx(2.0 * std::log(2.0 / small)).epsilon(1e-9));

  // branch boundary is continuous
  const double boundary = 2.0 * std::exp(-2.0);
  auto [vs_small, bs] = varsigma_iid(subexp_profile(1.0), 100, 10, boundary * (1 - 1e-12), 1.0);
  auto [vs_large, bl] = varsigma_iid(subexp_profile(1.0), 100, 10, boundary, 1.0);
  CHECK(bs == VarsigmaBranch::subexp_small_varpi);
  CHECK(bl == VarsigmaBranch::subexp_large_varpi);
  CHECK(vs_small == doctest::Approx(vs_large).epsilon(1e-6));
}

TEST_CASE("one-round iid bound assembles train + 2RC + varsigma") {
  auto rs = fake_summary(10, 100, {0.40}, {0.40});
  RademacherEstimate rc;
  rc.value = 0.10;
  rc.l = 10;
  BoundConfig cfg;
  cfg.varpi = std::exp(-1.0);
  const auto res = one_round_bound_iid(rs, rc, bounded_profile(1.0), cfg, 0);
  CHECK(res.rhs.size() == 1);
  CHECK(res.rhs[0] == doctest::Approx(0.40 + 0.20 + 0.6324555).epsilon(1e-6));
  CHECK(res.confidence == doctest::Approx(1.0 - std::exp(-1.0)));
  CHECK(res.feasible);

  // zero-loss degenerate: rhs collapses to 0
  auto rs0 = fake_summary(10, 100, {0.0}, {0.0});
  RademacherEstimate rc0;
  rc0.value = 0.0;
  const auto res0 = one_round_bound_iid(rs0, rc0, bounded_profile(0.0), cfg, 0);
  CHECK(res0.rhs[0] == 0.0);
}

TEST_CASE("kappa formulas") {
  DependenceProfile dep;
  dep.V = 0.0;

  auto [k1, c1] = kappa_convoluted(subgaussian_profile(1.0, 0.1), dep, 10, std::exp(-1.0), 1.0);
  CHECK(c1 == KappaCase::psi2);
  CHECK(k1 == doctest::Approx(0.05).epsilon(1e-12));

  auto [k2, c2] = kappa_convoluted(subexp_profile(1.0), dep, 12, 1.0, 1.0);
  CHECK(c2 == KappaCase::psi1_large_varpi);
  CHECK(k2 == doctest::Approx(6.0 / (12.0 * std::log(2.0))).epsilon(1e-12));

  auto [k3, c3] = kappa_convoluted(subexp_profile(1.0), dep, 12, 0.05, 1.0);
  CHECK(c3 == KappaCase::psi1_small_varpi);
  const double lr = std::log(2.0 / 0.05);
  CHECK(k3 == doctest::Approx(12.0 / (12.0 * lr * lr)).epsilon(1e-12));

  CHECK_THROWS_AS(kappa_convoluted(subgaussian_profile(1.0, 0.1), dep, 10, 1.0, 1.0), Error);
}

TEST_CASE("convoluted iid bound holds trivially for constant losses") {
  const auto lm = LossMatrix::from_values(std::vector<double>(12, 2.0), 12, 1, 2.0, true);
  const auto fa = random_kfold(12, 3, 5);
  const auto rs = compute_risks(lm, fa);
  const auto rho = compute_rho(lm, fa, RhoReference::full_sample);
  const auto profile = build_tail_profile(rho, lm);
  const auto dep = autocovariance_profile(rs.T);
  const auto rc = one_round_rc(lm, fa, 16, 1);
  BoundConfig cfg;
  cfg.varpi = 0.1;
  const auto res = convoluted_bound_iid(rs, rc, profile, dep, cfg);
  REQUIRE(res.feasible);
  CHECK(rs.avg_test[0] <= res.rhs[0]);
}

TEST_CASE("kappa at or above one is infeasible, not an error") {
  DependenceProfile dep;
  dep.V = 100.0;  // forces kappa >= 1 at small K
  auto rs = fake_summary(2, 20, {0.1}, {0.1});
  RademacherEstimate rc;
  rc.value = 0.0;
  BoundConfig cfg;
  cfg.varpi = 0.5;
  const auto res = convoluted_bound_iid(rs, rc, subgaussian_profile(1.0, 0.1), dep, cfg);
  CHECK_FALSE(res.feasible);
  CHECK(res.rhs.empty());
  CHECK(res.confidence == 0.0);
}

TEST_CASE("confidence floor rejects weak bounds") {
  DependenceProfile dep;
  dep.V = 0.0;
  auto rs = fake_summary(10, 100, {0.1}, {0.1});
  RademacherEstimate rc;
  rc.value = 0.0;
  BoundConfig cfg;
  cfg.varpi = std::exp(-1.0);  // kappa = 0.05, confidence 0.95
  cfg.confidence_floor = 0.99;
  const auto res = convoluted_bound_iid(rs, rc, subgaussian_profile(1.0, 0.1), dep, cfg);
  CHECK_FALSE(res.feasible);
}

TEST_CASE("one-round mixing bound") {
  const auto layout = block_layout(8, 8, 2);
  auto rs = fake_summary(2, 16, {0.3}, {0.3});
  BlockRc rcb;
  rcb.estimate.value = 0.05;
  rcb.from_test_side = true;

  // beta = 0 degenerates to the iid-style penalty sqrt(log(4/varpi) / (2 mu))
  const auto res = one_round_bound_mixing(rs, rcb, layout, MixingModel::none(), 1.0, 0.5, 0);
  CHECK(res.varpi_prime == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(res.varsigma == doctest::Approx(std::sqrt(std::log(8.0) / 4.0)).epsilon(1e-9));
  CHECK(res.rhs[0] == doctest::Approx(0.3 + 0.1 + std::sqrt(std::log(8.0) / 4.0)).epsilon(1e-9));

  // zero envelope: penalty vanishes, rhs is the RC term alone
  auto rs0 = fake_summary(2, 16, {0.0}, {0.0});
  const auto res0 = one_round_bound_mixing(rs0, rcb, layout, MixingModel::none(), 0.0, 0.5, 0);
  CHECK(res0.varsigma == 0.0);
  CHECK(res0.rhs[0] == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("hand-computed mixing infeasibility") {
  // beta0 = 0.5, r = 0.5, a = 4: beta_4 = 0.03125 exactly;
  // (mu-1)(beta+beta) = 0.125 swallows varpi = 0.1
  const auto mixing = MixingModel::exponential(0.5, 0.5);
  CHECK(mixing_beta(mixing, 4) == 0.03125);
  const auto layout = block_layout(24, 24, 3);  // a_t = a_s = 4
  CHECK(layout.a_t == 4);
  auto rs = fake_summary(2, 48, {0.3}, {0.3});
  BlockRc rcb;
  rcb.estimate.value = 0.05;
  CHECK_THROWS_AS(one_round_bound_mixing(rs, rcb, layout, mixing, 1.0, 0.1, 0), Error);
  try {
    one_round_bound_mixing(rs, rcb, layout, mixing, 1.0, 0.1, 0);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InfeasibleMixing);
  }
}

TEST_CASE("kappa_mixing formula and window behavior") {
  // V = 0, K = 10, mu = 2, varpi' = 4/e: log(4/varpi') = 1, kappa = 2/5
  CHECK(kappa_mixing(0.0, 10, 2, 4.0 * std::exp(-1.0)) == doctest::Approx(0.4).epsilon(1e-12));

  // kappa shrinks as K/mu grows
  CHECK(kappa_mixing(0.0, 1000, 2, 0.5) < 0.01);
  double prev = kappa_mixing(0.0, 4, 2, 0.5);
  for (std::size_t K = 6; K <= 40; K += 2) {
    const double k = kappa_mixing(0.0, K, 2, 0.5);
    CHECK(k < prev);
    prev = k;
  }
}

TEST_CASE("convoluted mixing bound at the window boundary") {
  const auto layout = block_layout(8, 8, 2);
  auto rs = fake_summary(2, 16, {0.2}, {0.2});
  rs.n_s = 8;
  BlockRc rcb;
  rcb.estimate.value = 0.0;
  DependenceProfile dep;
  dep.V = 0.0;

  BoundConfig cfg;
  cfg.mode = BoundMode::mixing_convoluted;
  // upper endpoint of the feasibility window: K/mu = 1, varpi' = 4 exp(-2)
  cfg.varpi = 4.0 * std::exp(-2.0);
  const auto res =
      convoluted_bound_mixing(rs, rcb, dep, layout, MixingModel::none(), 1.0, cfg);
  CHECK(*res.kappa == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(res.confidence == doctest::Approx(0.0).epsilon(1e-9));

  // beyond the window: InfeasibleWindow
  cfg.varpi = std::min(1.0, 4.0 * std::exp(-2.0) * 1.5);
  CHECK_THROWS_AS(
      convoluted_bound_mixing(rs, rcb, dep, layout, MixingModel::none(), 1.0, cfg), Error);
}

TEST_CASE("lemma A1 ratio bound") {
  DependenceProfile dep;
  dep.gamma0 = 1.0;
  const auto r2 = lemma_a1_ratio(dep, 0.5, 2);
  CHECK(r2.bound == doctest::Approx(12.0).epsilon(1e-12));
  CHECK(r2.ratio == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(r2.holds);

  const auto r_inf = lemma_a1_ratio(dep, 0.5, 100000);
  CHECK(r_inf.bound == doctest::Approx(8.0).epsilon(1e-4));

  CHECK_THROWS_AS(lemma_a1_ratio(dep, 0.0, 10), Error);
}

TEST_CASE("monotonicity of the penalty terms") {
  // bounded varsigma decreases in the fold size n/K and in varpi
  double prev = 1e9;
  for (std::size_t fold = 10; fold <= 200; fold += 10) {
    auto [v, b] = varsigma_iid(bounded_profile(1.0), fold * 10, 10, 0.1, 1.0);
    CHECK(v < prev);
    prev = v;
  }
  prev = 1e9;
  for (double w = 0.05; w < 1.0; w += 0.05) {
    auto [v, b] = varsigma_iid(bounded_profile(1.0), 100, 10, w, 1.0);
    CHECK(v < prev);
    prev = v;
  }
  // subexponential branches decrease in varpi, across the sub-branch split
  prev = 1e9;
  for (double w = 0.02; w <= 1.0; w += 0.049) {
    auto [v, b] = varsigma_iid(subexp_profile(1.0), 100, 10, w, 1.0);
    CHECK(v <= prev + 1e-12);
    prev = v;
  }

  // kappa decreasing in K, increasing in V
  DependenceProfile dep;
  dep.V = 1.0;
  prev = 1e9;
  for (std::size_t K = 2; K <= 40; K += 2) {
    auto [k, c] = kappa_convoluted(subgaussian_profile(1.0, 0.1), dep, K, 0.1, 1.0);
    CHECK(k < prev);
    prev = k;
  }
  prev = 0.0;
  for (double V = 0.0; V <= 5.0; V += 0.25) {
    DependenceProfile d;
    d.V = V;
    auto [k, c] = kappa_convoluted(subgaussian_profile(1.0, 0.1), d, 10, 0.1, 1.0);
    CHECK(k > prev);
    prev = k;
  }

  // block penalty decreasing in mu at fixed varpi'
  prev = 1e9;
  for (std::size_t mu = 2; mu <= 40; mu += 2) {
    const double pen = 1.0 * std::sqrt(std::log(4.0 / 0.2) / (2.0 * static_cast<double>(mu)));
    CHECK(pen < prev);
    prev = pen;
  }
  // while varpi' decreases in mu at fixed varpi under nonzero mixing
  const auto mixing = MixingModel::exponential(0.5, 0.9);
  prev = 1.0;
  for (std::size_t mu = 2; mu <= 10; ++mu) {
    const double vp = 0.9 - static_cast<double>(mu - 1) *
                                (mixing_beta(mixing, 3) + mixing_beta(mixing, 3));
    CHECK(vp < prev);
    prev = vp;
  }
}

TEST_CASE("rhs permutes with the hypothesis list") {
  const auto lm = LossMatrix::from_values(
      {0.2, 0.9, 0.4, 0.1, 0.8, 0.5, 0.6, 0.3, 0.2, 0.7, 0.4, 0.6}, 6, 2, 1.0, true);
  std::vector<double> swapped(12);
  for (std::size_t i = 0; i < 6; ++i) {
    swapped[i * 2 + 0] = lm.at(i, 1);
    swapped[i * 2 + 1] = lm.at(i, 0);
  }
  const auto lm2 = LossMatrix::from_values(std::move(swapped), 6, 2, 1.0, true);
  const auto fa = FoldAssignment::from_test_sets(6, {{0, 1, 2}, {3, 4, 5}});
  BoundConfig cfg;
  cfg.varpi = 0.2;
  const auto rs1 = compute_risks(lm, fa);
  const auto rs2 = compute_risks(lm2, fa);
  const auto pr1 = build_tail_profile(compute_rho(lm, fa, RhoReference::full_sample), lm);
  const auto pr2 = build_tail_profile(compute_rho(lm2, fa, RhoReference::full_sample), lm2);
  const auto rc1 = one_round_rc(lm, fa, 8, 3);
  const auto rc2 = one_round_rc(lm2, fa, 8, 3);
  const auto d1 = autocovariance_profile(rs1.T);
  const auto d2 = autocovariance_profile(rs2.T);
  const auto b1 = convoluted_bound_iid(rs1, rc1, pr1, d1, cfg);
  const auto b2 = convoluted_bound_iid(rs2, rc2, pr2, d2, cfg);
  REQUIRE(b1.feasible);
  REQUIRE(b2.feasible);
  CHECK(b1.rhs[0] == doctest::Approx(b2.rhs[1]).epsilon(1e-12));
  CHECK(b1.rhs[1] == doctest::Approx(b2.rhs[0]).epsilon(1e-12));
}
