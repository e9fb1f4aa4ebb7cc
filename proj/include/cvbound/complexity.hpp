#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "cvbound/data_model.hpp"
#include "cvbound/folds.hpp"

namespace cvbound {

struct RademacherEstimate {
  double value = 0.0;
  std::size_t draws = 0;
  double std_err = 0.0;
  std::size_t l = 0;   // index-set size the complexity is taken over
  bool exact = false;  // exhaustive 2^l enumeration instead of MC
};

/// Empirical Rademacher complexity of the loss class restricted to the given
/// indices: E_sigma sup_j |(2/l) sum_i sigma_i Q(b_j, i)|. Enumerates all
/// sign patterns whenever 2^l * |Lambda| <= 2^20, otherwise Monte Carlo;
/// force_mc skips the enumeration (the exhaustive result is the MC oracle).
RademacherEstimate rademacher_complexity(const LossMatrix& lm,
                                         std::span<const std::size_t> indices, std::size_t draws,
                                         std::uint64_t seed, bool force_mc = false);

/// Round-averaged one-round complexity: mean over rounds of
/// RC(test)/2 + RC(train)/2.
RademacherEstimate one_round_rc(const LossMatrix& lm, const FoldAssignment& fa, std::size_t draws,
                                std::uint64_t seed);

/// RC over size-fold_size index sets, averaged over the floor(n/fold_size)
/// consecutive chunks (folds are exchangeable, so chunks suffice).
RademacherEstimate per_fold_rc(const LossMatrix& lm, std::size_t fold_size, std::size_t draws,
                               std::uint64_t seed);

/// RC over the S_0 block family of round q, test side and train side; the
/// larger of the two, tagging which side attained it.
struct BlockRc {
  RademacherEstimate estimate;
  bool from_test_side = false;
};
BlockRc max_block_rc(const LossMatrix& lm, const FoldAssignment& fa, std::size_t q,
                     std::size_t draws, std::uint64_t seed);

}  // namespace cvbound
