#include "cvbound/folds.hpp"

#include <algorithm>
#include <numeric>

#include "cvbound/rng.hpp"

namespace cvbound {

namespace {

// Test-fold sizes: first (n mod K) folds take the extra point.
std::size_t fold_size(std::size_t n, std::size_t K, std::size_t q) {
  return n / K + (q < n % K ? 1 : 0);
}

FoldAssignment assemble(std::size_t n, std::vector<std::vector<std::size_t>> test_sets,
                        std::uint64_t seed) {
  const std::size_t K = test_sets.size();
  std::vector<char> seen(n, 0);
  std::size_t covered = 0;
  for (const auto& ts : test_sets) {
    for (std::size_t i : ts) {
      if (i >= n) fail(Errc::BadParams, "test index out of range");
      if (seen[i]) fail(Errc::BadParams, "test sets overlap at index " + std::to_string(i));
      seen[i] = 1;
      ++covered;
    }
  }
  if (covered != n) fail(Errc::BadParams, "test sets do not cover all indices");

  FoldAssignment fa;
  fa.K = K;
  fa.n = n;
  fa.n_s = n / K;
  fa.n_t = n - fa.n_s;
  fa.n_tilde = std::min(fa.n_s, fa.n_t);
  fa.seed = seed;
  fa.rounds.reserve(K);
  for (auto& ts : test_sets) {
    std::sort(ts.begin(), ts.end());
    Round r;
    r.test = std::move(ts);
    r.train.reserve(n - r.test.size());
    auto it = r.test.begin();
    for (std::size_t i = 0; i < n; ++i) {
      if (it != r.test.end() && *it == i) {
        ++it;
      } else {
        r.train.push_back(i);
      }
    }
    fa.rounds.push_back(std::move(r));
  }
  return fa;
}

}  // namespace

FoldAssignment FoldAssignment::from_test_sets(std::size_t n,
                                              std::vector<std::vector<std::size_t>> test_sets,
                                              std::uint64_t seed) {
  if (test_sets.size() < 2) fail(Errc::BadK, "need at least 2 folds");
  return assemble(n, std::move(test_sets), seed);
}

FoldAssignment random_kfold(std::size_t n, std::size_t K, std::uint64_t seed) {
  if (K < 2 || K > n) {
    fail(Errc::BadK, "K = " + std::to_string(K) + " outside [2, " + std::to_string(n) + "]");
  }
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  auto eng = rng::engine(seed);
  rng::shuffle(perm, eng);

  std::vector<std::vector<std::size_t>> test_sets(K);
  std::size_t pos = 0;
  for (std::size_t q = 0; q < K; ++q) {
    const std::size_t sz = fold_size(n, K, q);
    test_sets[q].assign(perm.begin() + pos, perm.begin() + pos + sz);
    pos += sz;
  }
  return assemble(n, std::move(test_sets), seed);
}

namespace {

// mu alternating blocks of length a: family 0 takes the odd-positioned
// blocks, family 1 the even-positioned ones (positions are 0-based here).
void alternating_blocks(std::size_t a, std::size_t mu, std::vector<IndexRange>& fam0,
                        std::vector<IndexRange>& fam1) {
  fam0.clear();
  fam1.clear();
  for (std::size_t i = 0; i < mu; ++i) {
    fam0.push_back({2 * i * a, (2 * i + 1) * a});
    fam1.push_back({(2 * i + 1) * a, (2 * i + 2) * a});
  }
}

}  // namespace

BlockLayout block_layout(std::size_t n_t, std::size_t n_s, std::size_t mu) {
  if (mu <= 1) fail(Errc::MuTooSmall, "mu must exceed 1, got " + std::to_string(mu));
  if (n_t == 0 || n_t % (2 * mu) != 0) {
    fail(Errc::IndivisibleBlocks,
         "n_t = " + std::to_string(n_t) + " not divisible by 2*mu = " + std::to_string(2 * mu));
  }
  if (n_s == 0 || n_s % (2 * mu) != 0) {
    fail(Errc::IndivisibleBlocks,
         "n_s = " + std::to_string(n_s) + " not divisible by 2*mu = " + std::to_string(2 * mu));
  }
  BlockLayout bl;
  bl.mu = mu;
  bl.a_t = n_t / (2 * mu);
  bl.a_s = n_s / (2 * mu);
  alternating_blocks(bl.a_t, mu, bl.train0, bl.train1);
  alternating_blocks(bl.a_s, mu, bl.test0, bl.test1);
  return bl;
}

FoldAssignment blocked_kfold(std::size_t n, std::size_t K, std::size_t mu) {
  if (K < 2 || K > n) {
    fail(Errc::BadK, "K = " + std::to_string(K) + " outside [2, " + std::to_string(n) + "]");
  }
  std::vector<std::vector<std::size_t>> test_sets(K);
  std::size_t pos = 0;
  for (std::size_t q = 0; q < K; ++q) {
    const std::size_t sz = fold_size(n, K, q);
    test_sets[q].resize(sz);
    std::iota(test_sets[q].begin(), test_sets[q].end(), pos);
    pos += sz;
  }
  FoldAssignment fa = assemble(n, std::move(test_sets), 0);
  fa.layouts.reserve(K);
  for (const auto& r : fa.rounds) {
    fa.layouts.push_back(block_layout(r.train.size(), r.test.size(), mu));
  }
  return fa;
}

std::vector<std::size_t> resolve_range(const IndexRange& range,
                                       const std::vector<std::size_t>& ordered) {
  if (range.end > ordered.size() || range.begin > range.end) {
    fail(Errc::BadParams, "block range out of bounds");
  }
  return {ordered.begin() + range.begin, ordered.begin() + range.end};
}

std::vector<std::size_t> resolve_blocks(const std::vector<IndexRange>& blocks,
                                        const std::vector<std::size_t>& ordered) {
  std::vector<std::size_t> out;
  for (const auto& b : blocks) {
    auto part = resolve_range(b, ordered);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

}  // namespace cvbound
