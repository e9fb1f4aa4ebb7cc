#include "cvbound/dependence.hpp"

#include <algorithm>
#include <cmath>

namespace cvbound {

DependenceProfile autocovariance_profile(std::span<const double> series) {
  const std::size_t K = series.size();
  if (K < 2) fail(Errc::BadParams, "need at least 2 observations");

  double mean = 0.0;
  for (double v : series) mean += v;
  mean /= static_cast<double>(K);

  DependenceProfile dp;
  dp.gamma.resize(K);
  for (std::size_t l = 0; l < K; ++l) {
    double s = 0.0;
    for (std::size_t q = 0; q + l < K; ++q) {
      s += (series[q] - mean) * (series[q + l] - mean);
    }
    dp.gamma[l] = s / static_cast<double>(K);
  }
  dp.gamma0 = dp.gamma[0];
  if (dp.gamma0 <= 0.0) {
    dp.gamma0 = std::max(dp.gamma0, 0.0);
    dp.V = 0.0;
    dp.degenerate = true;
    return dp;
  }
  double acc = 0.0;
  for (std::size_t l = 1; l < K; ++l) acc += std::abs(dp.gamma[l]);
  dp.V = acc / dp.gamma0;
  return dp;
}

double chebyshev_lower_bound(double gamma0, double V, std::size_t n, double eps) {
  if (eps <= 0.0) fail(Errc::BadParams, "eps must be positive");
  if (gamma0 < 0.0 || V < 0.0) fail(Errc::BadParams, "gamma0 and V must be non-negative");
  if (n == 0) fail(Errc::BadParams, "n must be positive");
  const double bound = 1.0 - gamma0 * (1.0 + 2.0 * V) / (eps * eps * static_cast<double>(n));
  return std::max(0.0, bound);
}

MixingModel MixingModel::exponential(double beta0, double r) {
  if (beta0 < 0.0 || beta0 > 1.0) fail(Errc::BadParams, "beta0 must lie in [0, 1]");
  if (r < 0.0 || r > 1.0) fail(Errc::BadParams, "exponential decay rate must lie in [0, 1]");
  return MixingModel{Kind::exponential, beta0, r, {}};
}

MixingModel MixingModel::algebraic(double beta0, double r) {
  if (beta0 < 0.0 || beta0 > 1.0) fail(Errc::BadParams, "beta0 must lie in [0, 1]");
  if (r < 0.0) fail(Errc::BadParams, "algebraic decay rate must be non-negative");
  return MixingModel{Kind::algebraic, beta0, r, {}};
}

MixingModel MixingModel::table(std::vector<double> values) {
  if (values.empty()) fail(Errc::BadParams, "mixing table must be non-empty");
  double prev = 1.0;
  for (double v : values) {
    if (v < 0.0 || v > 1.0) fail(Errc::BadParams, "mixing coefficients must lie in [0, 1]");
    if (v > prev) fail(Errc::BadParams, "mixing coefficients must be non-increasing");
    prev = v;
  }
  return MixingModel{Kind::table, 0.0, 0.0, std::move(values)};
}

double mixing_beta(const MixingModel& model, std::size_t a) {
  if (a < 1) fail(Errc::BadParams, "block length must be at least 1");
  switch (model.kind) {
    case MixingModel::Kind::exponential:
      return model.beta0 * std::pow(model.r, static_cast<double>(a));
    case MixingModel::Kind::algebraic:
      return model.beta0 * std::pow(static_cast<double>(a), -model.r);
    case MixingModel::Kind::table:
      if (a > model.values.size()) {
        fail(Errc::OutOfTableRange, "no tabulated coefficient for a = " + std::to_string(a));
      }
      return model.values[a - 1];
  }
  return 0.0;
}

}  // namespace cvbound
