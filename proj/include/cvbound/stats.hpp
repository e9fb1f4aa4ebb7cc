#pragma once

#include <cmath>
#include <cstddef>

namespace cvbound {

struct WilsonInterval {
  double low = 0.0;
  double high = 1.0;
  double width() const { return high - low; }
};

// Wilson score interval for a binomial proportion (default z = 1.96).
inline WilsonInterval wilson_interval(std::size_t successes, std::size_t trials,
                                      double z = 1.96) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::fmax(0.0, center - half), std::fmin(1.0, center + half)};
}

// Standard error of a binomial proportion estimate.
inline double proportion_std_err(std::size_t successes, std::size_t trials) {
  if (trials == 0) return 0.0;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  return std::sqrt(p * (1.0 - p) / n);
}

// Standard normal CDF.
inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// Standard normal density.
inline double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * 3.14159265358979323846);
}

}  // namespace cvbound
