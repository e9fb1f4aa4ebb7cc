#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cvbound/rng.hpp"
#include "cvbound/simulate.hpp"
#include "cvbound/stats.hpp"

using namespace cvbound;

namespace {

// Quadrature oracle for the TV distance: (1/2) integral of |f1 - f2| on a
// fine grid, independent of the crossing-point formula under test.
double tv_by_quadrature(double mu1, double v1, double mu2, double v2) {
  const double s1 = std::sqrt(v1), s2 = std::sqrt(v2);
  const double lo = std::min(mu1 - 10.0 * s1, mu2 - 10.0 * s2);
  const double hi = std::max(mu1 + 10.0 * s1, mu2 + 10.0 * s2);
  const std::size_t steps = 20000;
  const double h = (hi - lo) / static_cast<double>(steps);
  auto f = [&](double z) {
    const double a = normal_pdf((z - mu1) / s1) / s1;
    const double b = normal_pdf((z - mu2) / s2) / s2;
    return std::abs(a - b);
  };
  double s = f(lo) + f(hi);
  for (std::size_t i = 1; i < steps; ++i) s += f(lo + h * i) * (i % 2 == 1 ? 4.0 : 2.0);
  return 0.5 * s * h / 3.0;
}

}  // namespace

TEST_CASE("bounded_uniform losses live in [0, M]") {
  const auto gen = Generator::bounded_uniform(1.0);
  const auto lm = gen.make_losses(5, 3, 7);
  CHECK(lm.rows() == 5);
  CHECK(lm.cols() == 3);
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(lm.at(i, j) >= 0.0);
      CHECK(lm.at(i, j) <= 1.0);
    }
  }
  CHECK(lm.envelope_certified());
  CHECK(gen.true_risks(2) == std::vector<double>{0.5, 0.5});
}

TEST_CASE("gaussian losses are truncated at zero") {
  const auto gen = Generator::gaussian_loss(0.1, 1.0);
  const auto lm = gen.make_losses(200, 1, 3);
  double min_v = 1e9;
  for (std::size_t i = 0; i < 200; ++i) min_v = std::min(min_v, lm.at(i, 0));
  CHECK(min_v >= 0.0);
  CHECK(min_v == 0.0);  // truncation visibly active at this mean/sd
}

TEST_CASE("ar1 closed-form autocovariances") {
  const auto gen = Generator::ar1(0.6, 1.0);
  CHECK(gen.true_gamma(0) == doctest::Approx(1.5625).epsilon(1e-12));
  CHECK(gen.true_gamma(1) == doctest::Approx(0.9375).epsilon(1e-12));
  // V_n = sum phi^l, geometric
  CHECK(gen.true_autocov_time(200) == doctest::Approx(0.6 / 0.4).epsilon(1e-6));
}

TEST_CASE("generator self checks against long-run Monte Carlo") {
  Generator::bounded_uniform(1.0).self_check(10000000, 1);
  Generator::gaussian_loss(1.0, 0.25).self_check(10000000, 2);
  Generator::exponential_loss(1.0).self_check(10000000, 3);
  Generator::ar1(0.6, 1.0).self_check(10000000, 4);
  Generator::linear_model({1.0, -0.5}, 0.5).self_check(10000000, 5);
}

TEST_CASE("linear model datasets and risks") {
  const auto gen = Generator::linear_model({2.0, 1.0}, 0.5);
  const auto data = gen.make_dataset(50, 3);
  CHECK(data.n == 50);
  CHECK(data.p == 2);
  CHECK(gen.true_risk_linear({2.0, 1.0}) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(gen.true_risk_linear({3.0, 1.0}) == doctest::Approx(1.25).epsilon(1e-12));
}

TEST_CASE("mixing losses are bounded transforms with known means") {
  const auto gen = Generator::ar1(0.6, 1.0);
  const auto lm = gen.make_mixing_losses(2000, 3, 11);
  CHECK(lm.envelope_certified());
  CHECK(lm.envelope() == 1.0);
  const auto risks = gen.true_risks(3);
  // offsets -1, 0, 1: E Phi(Z - c) = Phi(-c/sqrt(2))
  CHECK(risks[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(risks[0] == doctest::Approx(normal_cdf(1.0 / std::sqrt(2.0))).epsilon(1e-12));
  // long-run sample mean agrees with the closed form
  double mean = 0.0;
  for (std::size_t i = 0; i < 2000; ++i) mean += lm.at(i, 1);
  mean /= 2000.0;
  CHECK(mean == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("tv_normal agrees with quadrature and the equal-variance closed form") {
  // equal variances: TV = 2 Phi(|mu1 - mu2| / (2 sigma)) - 1
  for (double d : {0.1, 0.5, 2.0}) {
    const double closed = 2.0 * normal_cdf(d / 2.0) - 1.0;
    CHECK(tv_normal(0.0, 1.0, d, 1.0) == doctest::Approx(closed).epsilon(1e-9));
  }
  // unequal variances against quadrature
  CHECK(tv_normal(0.2, 0.8, 0.0, 1.0) ==
        doctest::Approx(tv_by_quadrature(0.2, 0.8, 0.0, 1.0)).epsilon(1e-5));
  CHECK(tv_normal(-1.0, 2.0, 0.5, 0.5) ==
        doctest::Approx(tv_by_quadrature(-1.0, 2.0, 0.5, 0.5)).epsilon(1e-5));
  CHECK(tv_normal(0.0, 1.0, 0.0, 1.0) == 0.0);
}

TEST_CASE("ar1 beta mixing coefficients behave like a decay model") {
  double prev = 1.0;
  for (std::size_t a = 1; a <= 8; ++a) {
    const double b = ar1_beta_mixing(0.6, a);
    CHECK(b >= 0.0);
    CHECK(b <= 1.0);
    CHECK(b < prev);
    prev = b;
  }
  CHECK(ar1_beta_mixing(0.6, 40) < 1e-8);
  CHECK(ar1_beta_mixing(0.0, 1) == 0.0);
  // stronger dependence, larger coefficient
  CHECK(ar1_beta_mixing(0.9, 1) > ar1_beta_mixing(0.6, 1));

  const auto table = ar1_mixing_table(0.6, 5);
  CHECK(mixing_beta(table, 3) == doctest::Approx(ar1_beta_mixing(0.6, 3)).epsilon(1e-12));
}

TEST_CASE("independent block redraw destroys cross-block dependence") {
  const auto gen = Generator::ar1(0.9, 1.0);
  const std::size_t a = 2, mu = 2;
  const auto layout = block_layout(2 * a * mu, 2 * a * mu, mu);

  const std::size_t reps = 4000;
  std::vector<double> dep0(reps), dep1(reps), ind0(reps), ind1(reps);
  for (std::size_t r = 0; r < reps; ++r) {
    const auto series = gen.make_series(2 * a * mu, rng::derive_seed(11, r));
    auto block_mean = [&](const IndexRange& rg) {
      double s = 0.0;
      for (std::size_t i = rg.begin; i < rg.end; ++i) s += series[i];
      return s / static_cast<double>(rg.size());
    };
    dep0[r] = block_mean(layout.test0[0]);
    dep1[r] = block_mean(layout.test0[1]);
    const auto redraw = independent_blocks_redraw(gen, layout.test0, rng::derive_seed(12, r));
    auto mean_of = [](const std::vector<double>& v) {
      return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    };
    ind0[r] = mean_of(redraw[0]);
    ind1[r] = mean_of(redraw[1]);
  }

  auto corr = [&](const std::vector<double>& x, const std::vector<double>& y) {
    double mx = std::accumulate(x.begin(), x.end(), 0.0) / x.size();
    double my = std::accumulate(y.begin(), y.end(), 0.0) / y.size();
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      sxy += (x[i] - mx) * (y[i] - my);
      sxx += (x[i] - mx) * (x[i] - mx);
      syy += (y[i] - my) * (y[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
  };
  const double rho_dep = corr(dep0, dep1);
  const double rho_ind = corr(ind0, ind1);
  const double se = 1.0 / std::sqrt(static_cast<double>(reps));
  CHECK(rho_dep - rho_ind > 3.0 * se);
  CHECK(std::abs(rho_ind) < 4.0 * se);
}

TEST_CASE("iid generator redraw has the same block-mean law (KS)") {
  // phi = 0 makes the ar1 generator i.i.d.; the redrawn and in-place block
  // means must then share one distribution.
  const auto gen = Generator::ar1(0.0, 1.0);
  const std::size_t a = 4, mu = 2;
  const auto layout = block_layout(2 * a * mu, 2 * a * mu, mu);
  const std::size_t reps = 1000;
  std::vector<double> in_place, redrawn;
  for (std::size_t r = 0; r < reps; ++r) {
    const auto series = gen.make_series(2 * a * mu, rng::derive_seed(21, r));
    double s = 0.0;
    for (std::size_t i = layout.test0[0].begin; i < layout.test0[0].end; ++i) s += series[i];
    in_place.push_back(s / static_cast<double>(a));
    const auto redraw = independent_blocks_redraw(gen, layout.test0, rng::derive_seed(22, r));
    double t = 0.0;
    for (double v : redraw[0]) t += v;
    redrawn.push_back(t / static_cast<double>(a));
  }
  std::sort(in_place.begin(), in_place.end());
  std::sort(redrawn.begin(), redrawn.end());
  double dmax = 0.0;
  std::size_t i = 0, k = 0;
  while (i < in_place.size() && k < redrawn.size()) {
    if (in_place[i] <= redrawn[k]) {
      ++i;
    } else {
      ++k;
    }
    dmax = std::max(dmax, std::abs(static_cast<double>(i) / in_place.size() -
                                   static_cast<double>(k) / redrawn.size()));
  }
  // 1% critical value for the two-sample KS statistic
  const double crit = 1.628 * std::sqrt(2.0 / static_cast<double>(reps));
  CHECK(dmax < crit);
}

TEST_CASE("single-block redraw preserves length") {
  const auto gen = Generator::ar1(0.5, 1.0);
  const std::vector<IndexRange> one{{0, 6}};
  const auto redraw = independent_blocks_redraw(gen, one, 5);
  CHECK(redraw.size() == 1);
  CHECK(redraw[0].size() == 6);
}

TEST_CASE("coverage with a near-constant generator never violates") {
  const auto gen = Generator::gaussian_loss(1.0, 1e-12);
  CoverageConfig cc;
  cc.theorem = "1";
  cc.n = 40;
  cc.m = 2;
  cc.varpi = 0.2;
  cc.rc_draws = 32;
  const auto rep = coverage_trial(gen, cc, 4, 600, 5);
  CHECK(rep.violations == 0);
  CHECK(rep.pass);
}

TEST_CASE("lemma 1 coverage on the AR(1) oracle") {
  std::vector<double> grid;
  for (int i = 0; i < 10; ++i) grid.push_back(0.2 + 0.1 * i);
  const auto rep = lemma1_coverage(0.6, 200, grid, 5000, 31);
  CHECK(rep.pass);
  // the bound is vacuous for tiny eps and approaches 1 for large eps
  CHECK(rep.bound.front() < rep.bound.back());
  CHECK(rep.empirical.back() > 0.99);
}

TEST_CASE("lemma A1 ratio holds on Exp(1) replications") {
  const auto rep = lemma_a1_trial(200, 4, 10, 120, 0.25, 17);
  CHECK(rep.fraction >= 0.99);
}

TEST_CASE("block approximation check passes with the true beta") {
  const auto rep = block_approximation_check(0.6, 2, 4, 400, 23);
  CHECK(rep.pass);
  CHECK(rep.beta_a == doctest::Approx(ar1_beta_mixing(0.6, 2)).epsilon(1e-12));
  CHECK(rep.bound == doctest::Approx(3.0 * rep.beta_a).epsilon(1e-12));
}

TEST_CASE("coverage_trial validates its inputs") {
  const auto gen = Generator::bounded_uniform(1.0);
  CoverageConfig cc;
  cc.theorem = "3";
  CHECK_THROWS_AS(coverage_trial(gen, cc, 5, 10, 0), Error);
}
