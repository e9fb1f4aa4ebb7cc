#include <doctest.h>

#include <cmath>
#include <vector>

#include "cvbound/rng.hpp"
#include "cvbound/tails.hpp"

using namespace cvbound;

namespace {

// Quadrature oracle: E exp(|Z|^nu / u^nu) for Z standard normal, by composite
// Simpson. Independent of the bisection path under test.
double mean_exp_normal(double nu, double u) {
  const std::size_t steps = 4000;
  const double lo = -12.0, hi = 12.0;
  const double h = (hi - lo) / static_cast<double>(steps);
  auto f = [&](double z) {
    return std::exp(std::pow(std::abs(z) / u, nu)) * std::exp(-0.5 * z * z) /
           std::sqrt(2.0 * 3.14159265358979323846);
  };
  double s = f(lo) + f(hi);
  for (std::size_t i = 1; i < steps; ++i) s += f(lo + h * i) * (i % 2 == 1 ? 4.0 : 2.0);
  return s * h / 3.0;
}

double sample_mean_exp(const std::vector<double>& z, double nu, double u) {
  double s = 0.0;
  for (double zi : z) s += std::exp(std::pow(std::abs(zi) / u, nu));
  return s / static_cast<double>(z.size());
}

}  // namespace

TEST_CASE("zero samples have zero norm") {
  const std::vector<double> z(10, 0.0);
  CHECK(estimate_orlicz_norm(z, 1.0, 1e-6) == 0.0);
  CHECK(estimate_orlicz_norm(z, 2.0, 1e-6) == 0.0);
}

TEST_CASE("constant ln2 sample has Psi_1 norm 1") {
  const std::vector<double> z(16, std::log(2.0));
  CHECK(estimate_orlicz_norm(z, 1.0, 1e-9) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("closed form for the standard normal Psi_2 norm") {
  // E exp(Z^2/u^2) = (1 - 2/u^2)^(-1/2) = 2  =>  u = sqrt(8/3); confirm by
  // quadrature before using it as the target.
  const double target = std::sqrt(8.0 / 3.0);
  CHECK(mean_exp_normal(2.0, target) == doctest::Approx(2.0).epsilon(1e-6));

  auto eng = rng::engine(20240401);
  std::vector<double> z(100000);
  for (double& v : z) v = rng::normal(eng);
  const double est = estimate_orlicz_norm(z, 2.0, 1e-6);
  CHECK(est == doctest::Approx(target).epsilon(0.05));
}

TEST_CASE("closed form for the unit exponential Psi_1 norm") {
  // E exp(Z/u) = u/(u-1) = 2  =>  u = 2
  auto eng = rng::engine(7);
  std::vector<double> z(100000);
  for (double& v : z) v = rng::exponential(eng, 1.0);
  const double est = estimate_orlicz_norm(z, 1.0, 1e-6);
  CHECK(est == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("norm estimate is positively homogeneous") {
  auto eng = rng::engine(15);
  std::vector<double> z(500);
  for (double& v : z) v = std::abs(rng::normal(eng));
  const double base = estimate_orlicz_norm(z, 1.5, 1e-8);
  for (double c : {0.3, 2.0, 17.0}) {
    std::vector<double> scaled(z);
    for (double& v : scaled) v *= c;
    CHECK(estimate_orlicz_norm(scaled, 1.5, 1e-8) ==
          doctest::Approx(c * base).epsilon(1e-5));
  }
}

TEST_CASE("bisection bracket straddles the threshold") {
  auto eng = rng::engine(33);
  std::vector<double> z(2000);
  for (double& v : z) v = std::abs(rng::normal(eng)) + 0.1;
  for (double nu : {1.0, 2.0}) {
    const double u = estimate_orlicz_norm(z, nu, 1e-6);
    CHECK(sample_mean_exp(z, nu, u) <= 2.0);
    CHECK(sample_mean_exp(z, nu, 0.999 * u) > 2.0);
  }
}

TEST_CASE("cap produces NoFiniteNorm") {
  const std::vector<double> z(4, 1.0);
  CHECK_THROWS_AS(estimate_orlicz_norm(z, 1.0, 1e-6, /*u_cap=*/0.5), Error);
}

TEST_CASE("tail profile classification") {
  const auto fa = FoldAssignment::from_test_sets(4, {{0, 1}, {2, 3}});

  // certified envelope wins
  const auto bounded = LossMatrix::from_values({0.1, 0.5, 0.9, 0.3}, 4, 1, 1.0, true);
  const auto rho_b = compute_rho(bounded, fa, RhoReference::full_sample);
  const auto tp_b = build_tail_profile(rho_b, bounded);
  CHECK(tp_b.tail_class == TailClass::bounded);
  CHECK(tp_b.envelope == 1.0);

  // no envelope, nu = 2: subgaussian with finite estimates
  const auto open = LossMatrix::from_values({0.1, 0.5, 0.9, 0.3}, 4, 1);
  const auto rho_o = compute_rho(open, fa, RhoReference::full_sample);
  const auto tp_o = build_tail_profile(rho_o, open);
  CHECK(tp_o.tail_class == TailClass::subgaussian);
  CHECK(std::isfinite(tp_o.psi2_norm));
  CHECK(std::isfinite(tp_o.psi1_norm));

  // nu = 1 renounces the subgaussian branch
  TailConfig cfg;
  cfg.nu = 1.0;
  const auto tp_e = build_tail_profile(rho_o, open, cfg);
  CHECK(tp_e.tail_class == TailClass::subexponential);

  // zero losses: all scales vanish
  const auto zeros = LossMatrix::from_values(std::vector<double>(4, 0.0), 4, 1);
  const auto rho_z = compute_rho(zeros, fa, RhoReference::full_sample);
  const auto tp_z = build_tail_profile(rho_z, zeros);
  CHECK(tp_z.sigma_tilde == 0.0);
  CHECK(tp_z.psi1_norm == 0.0);
  CHECK(tp_z.psi2_norm == 0.0);
}

TEST_CASE("sigma_tilde is the largest column deviation") {
  // column 0 constant, column 1 spread {0, 2}: plug-in variance 1
  const auto lm = LossMatrix::from_values({1.0, 0.0, 1.0, 2.0, 1.0, 0.0, 1.0, 2.0}, 4, 2);
  const auto fa = FoldAssignment::from_test_sets(4, {{0, 1}, {2, 3}});
  const auto rho = compute_rho(lm, fa, RhoReference::full_sample);
  const auto tp = build_tail_profile(rho, lm);
  CHECK(tp.sigma_tilde == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("nu outside [1, 2] is rejected") {
  const std::vector<double> z{1.0, 2.0};
  CHECK_THROWS_AS(estimate_orlicz_norm(z, 0.5, 1e-6), Error);
  CHECK_THROWS_AS(estimate_orlicz_norm(z, 2.5, 1e-6), Error);
}
