#include "cvbound/complexity.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <vector>

#include "cvbound/rng.hpp"

namespace cvbound {

namespace {

constexpr std::uint64_t kExhaustiveBudget = 1ull << 20;  // 2^l * m cap

// Gathers the loss submatrix for the index set, column-major (m columns of
// length l), so both estimators stream contiguously.
std::vector<double> gather(const LossMatrix& lm, std::span<const std::size_t> indices) {
  const std::size_t l = indices.size();
  const std::size_t m = lm.cols();
  std::vector<double> sub(l * m);
  for (std::size_t j = 0; j < m; ++j) {
    const auto col = lm.column(j);
    for (std::size_t i = 0; i < l; ++i) sub[j * l + i] = col[indices[i]];
  }
  return sub;
}

RademacherEstimate exhaustive_rc(const std::vector<double>& sub, std::size_t l, std::size_t m) {
  // Gray-code walk over the 2^l sign patterns: one sign flips per step, so
  // each per-column sum updates in O(1).
  std::vector<double> sums(m, 0.0);
  std::vector<int> sign(l, 1);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < l; ++i) sums[j] += sub[j * l + i];
  }
  const double scale = 2.0 / static_cast<double>(l);
  auto sup_abs = [&] {
    double s = 0.0;
    for (std::size_t j = 0; j < m; ++j) s = std::max(s, std::abs(sums[j]));
    return s * scale;
  };

  double total = sup_abs();
  const std::uint64_t patterns = 1ull << l;
  for (std::uint64_t t = 1; t < patterns; ++t) {
    const std::size_t flip = static_cast<std::size_t>(std::countr_zero(t));
    const double delta = sign[flip] == 1 ? -2.0 : 2.0;
    sign[flip] = -sign[flip];
    for (std::size_t j = 0; j < m; ++j) sums[j] += delta * sub[j * l + flip];
    total += sup_abs();
  }

  RademacherEstimate est;
  est.value = total / static_cast<double>(patterns);
  est.draws = static_cast<std::size_t>(patterns);
  est.std_err = 0.0;
  est.l = l;
  est.exact = true;
  return est;
}

RademacherEstimate monte_carlo_rc(const std::vector<double>& sub, std::size_t l, std::size_t m,
                                  std::size_t draws, std::uint64_t seed) {
  auto eng = rng::engine(seed);
  std::vector<double> signs(l);
  const double scale = 2.0 / static_cast<double>(l);

  double sum = 0.0;
  double sumsq = 0.0;
  for (std::size_t d = 0; d < draws; ++d) {
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < l; ++i) {
      if (i % 64 == 0) bits = eng();
      signs[i] = (bits >> (i % 64)) & 1 ? 1.0 : -1.0;
    }
    double sup = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double* col = sub.data() + j * l;
      double s = 0.0;
      for (std::size_t i = 0; i < l; ++i) s += signs[i] * col[i];
      sup = std::max(sup, std::abs(s));
    }
    const double v = sup * scale;
    sum += v;
    sumsq += v * v;
  }

  RademacherEstimate est;
  est.value = sum / static_cast<double>(draws);
  est.draws = draws;
  est.l = l;
  est.exact = false;
  if (draws > 1) {
    const double var =
        std::max(0.0, (sumsq - sum * sum / static_cast<double>(draws)) /
                          static_cast<double>(draws - 1));
    est.std_err = std::sqrt(var / static_cast<double>(draws));
  }
  return est;
}

}  // namespace

RademacherEstimate rademacher_complexity(const LossMatrix& lm,
                                         std::span<const std::size_t> indices, std::size_t draws,
                                         std::uint64_t seed, bool force_mc) {
  if (indices.empty()) fail(Errc::EmptyIndexSet, "Rademacher complexity over an empty index set");
  if (draws < 1) fail(Errc::BadParams, "draws must be at least 1");
  const std::size_t l = indices.size();
  const std::size_t m = lm.cols();
  auto sub = gather(lm, indices);
  if (!force_mc && l < 64 && (1ull << l) * m <= kExhaustiveBudget) {
    return exhaustive_rc(sub, l, m);
  }
  return monte_carlo_rc(sub, l, m, draws, seed);
}

namespace {

// 0.5*RC(test) + 0.5*RC(train) for one round, with propagated MC error.
RademacherEstimate round_rc(const LossMatrix& lm, const Round& r, std::size_t draws,
                            std::uint64_t seed) {
  const auto rc_s = rademacher_complexity(lm, r.test, draws, rng::derive_seed(seed, 0));
  const auto rc_t = rademacher_complexity(lm, r.train, draws, rng::derive_seed(seed, 1));
  RademacherEstimate est;
  est.value = 0.5 * rc_s.value + 0.5 * rc_t.value;
  est.draws = std::min(rc_s.draws, rc_t.draws);
  est.std_err = 0.5 * std::sqrt(rc_s.std_err * rc_s.std_err + rc_t.std_err * rc_t.std_err);
  est.l = std::min(rc_s.l, rc_t.l);
  est.exact = rc_s.exact && rc_t.exact;
  return est;
}

RademacherEstimate average(const std::vector<RademacherEstimate>& parts) {
  RademacherEstimate est;
  double sum = 0.0, varsum = 0.0;
  est.exact = true;
  est.draws = parts.front().draws;
  est.l = parts.front().l;
  for (const auto& p : parts) {
    sum += p.value;
    varsum += p.std_err * p.std_err;
    est.exact = est.exact && p.exact;
    est.draws = std::min(est.draws, p.draws);
    est.l = std::min(est.l, p.l);
  }
  const double k = static_cast<double>(parts.size());
  est.value = sum / k;
  est.std_err = std::sqrt(varsum) / k;
  return est;
}

}  // namespace

RademacherEstimate one_round_rc(const LossMatrix& lm, const FoldAssignment& fa, std::size_t draws,
                                std::uint64_t seed) {
  std::vector<RademacherEstimate> parts;
  parts.reserve(fa.K);
  for (std::size_t q = 0; q < fa.K; ++q) {
    parts.push_back(round_rc(lm, fa.rounds[q], draws, rng::derive_seed(seed, q)));
  }
  return average(parts);
}

RademacherEstimate per_fold_rc(const LossMatrix& lm, std::size_t fold_size, std::size_t draws,
                               std::uint64_t seed) {
  if (fold_size == 0 || fold_size > lm.rows()) {
    fail(Errc::BadParams, "fold size must be in [1, n]");
  }
  const std::size_t folds = lm.rows() / fold_size;
  std::vector<RademacherEstimate> parts;
  parts.reserve(folds);
  std::vector<std::size_t> idx(fold_size);
  for (std::size_t f = 0; f < folds; ++f) {
    for (std::size_t i = 0; i < fold_size; ++i) idx[i] = f * fold_size + i;
    parts.push_back(rademacher_complexity(lm, idx, draws, rng::derive_seed(seed, f)));
  }
  return average(parts);
}

BlockRc max_block_rc(const LossMatrix& lm, const FoldAssignment& fa, std::size_t q,
                     std::size_t draws, std::uint64_t seed) {
  if (!fa.blocked()) fail(Errc::BadParams, "fold assignment carries no block layout");
  if (q >= fa.K) fail(Errc::BadParams, "round index out of range");
  const BlockLayout& bl = fa.layouts[q];
  const Round& r = fa.rounds[q];
  const auto test_idx = resolve_blocks(bl.test0, r.test);
  const auto train_idx = resolve_blocks(bl.train0, r.train);
  const auto rc_s = rademacher_complexity(lm, test_idx, draws, rng::derive_seed(seed, 0));
  const auto rc_t = rademacher_complexity(lm, train_idx, draws, rng::derive_seed(seed, 1));
  BlockRc out;
  out.from_test_side = rc_s.value >= rc_t.value;
  out.estimate = out.from_test_side ? rc_s : rc_t;
  return out;
}

}  // namespace cvbound
