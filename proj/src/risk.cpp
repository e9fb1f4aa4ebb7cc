#include "cvbound/risk.hpp"

#include <algorithm>
#include <cmath>

namespace cvbound {

RiskSummary compute_risks(const LossMatrix& lm, const FoldAssignment& fa) {
  const std::size_t K = fa.K;
  const std::size_t m = lm.cols();
  RiskSummary rs;
  rs.K = K;
  rs.m = m;
  rs.n = fa.n;
  rs.n_s = fa.n_s;
  rs.train_err.resize(K * m);
  rs.test_err.resize(K * m);
  rs.avg_train.assign(m, 0.0);
  rs.avg_test.assign(m, 0.0);
  rs.U.resize(K);
  rs.T.resize(K);

  for (std::size_t q = 0; q < K; ++q) {
    const Round& r = fa.rounds[q];
    double u = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double tr = empirical_risk(lm, r.train, j);
      const double te = empirical_risk(lm, r.test, j);
      rs.train_err[q * m + j] = tr;
      rs.test_err[q * m + j] = te;
      rs.avg_train[j] += tr;
      rs.avg_test[j] += te;
      u = std::max(u, std::abs(te - tr));
    }
    rs.U[q] = u;
  }
  for (std::size_t j = 0; j < m; ++j) {
    rs.avg_train[j] /= static_cast<double>(K);
    rs.avg_test[j] /= static_cast<double>(K);
  }
  double eu = 0.0;
  for (double u : rs.U) eu += u;
  rs.EU_hat = eu / static_cast<double>(K);
  for (std::size_t q = 0; q < K; ++q) rs.T[q] = rs.U[q] - rs.EU_hat;
  return rs;
}

RhoSample compute_rho(const LossMatrix& lm, const FoldAssignment& fa, RhoReference reference,
                      const std::vector<double>* true_risk) {
  const std::size_t m = lm.cols();
  std::vector<double> ref(m);
  if (reference == RhoReference::population) {
    if (true_risk == nullptr) {
      fail(Errc::MissingOracle, "population reference requested without a true-risk oracle");
    }
    if (true_risk->size() != m) fail(Errc::BadParams, "true-risk vector size mismatch");
    ref = *true_risk;
  } else {
    std::vector<std::size_t> all(lm.rows());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    for (std::size_t j = 0; j < m; ++j) ref[j] = empirical_risk(lm, all, j);
  }

  RhoSample out;
  out.reference = reference;
  out.rho.resize(fa.K);
  for (std::size_t q = 0; q < fa.K; ++q) {
    double r = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      r = std::max(r, std::abs(empirical_risk(lm, fa.rounds[q].test, j) - ref[j]));
    }
    out.rho[q] = r;
  }
  return out;
}

}  // namespace cvbound
