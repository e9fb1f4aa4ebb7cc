#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cvbound/errors.hpp"

namespace cvbound {

// Half-open range of positions within a round's ordered train or test list.
struct IndexRange {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t size() const { return end - begin; }
  bool operator==(const IndexRange&) const = default;
};

/// Alternating-block decomposition of one round's train/test segments:
/// mu blocks per family, S_0 blocks at odd positions, S_1 at even ones, so
/// same-family blocks are separated by one block of the other family.
struct BlockLayout {
  std::size_t mu = 0;
  std::size_t a_t = 0;  // training block length
  std::size_t a_s = 0;  // test block length
  std::vector<IndexRange> train0, train1;  // positions into the round's train list
  std::vector<IndexRange> test0, test1;    // positions into the round's test list
};

struct Round {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// The K-round partition. n_s/n_t are the conservative sizes used by every
/// bound formula (floor(n/K) and its complement) even when K does not
/// divide n.
struct FoldAssignment {
  std::size_t K = 0;
  std::size_t n = 0;
  std::size_t n_t = 0;
  std::size_t n_s = 0;
  std::size_t n_tilde = 0;
  std::uint64_t seed = 0;
  std::vector<Round> rounds;
  std::vector<BlockLayout> layouts;  // one per round when blocked, else empty

  bool blocked() const { return !layouts.empty(); }

  // Builds rounds from explicit test sets (complement = train); the test
  // sets must partition [0, n).
  static FoldAssignment from_test_sets(std::size_t n,
                                       std::vector<std::vector<std::size_t>> test_sets,
                                       std::uint64_t seed = 0);
};

/// Uniformly random partition into K near-equal test folds; the complement
/// trains. Deterministic given the seed.
FoldAssignment random_kfold(std::size_t n, std::size_t K, std::uint64_t seed);

/// Alternating block layout over contiguous train/test segments of the given
/// sizes. Requires 2*mu | n_t, 2*mu | n_s and mu > 1.
BlockLayout block_layout(std::size_t n_t, std::size_t n_s, std::size_t mu);

/// Contiguous (temporal) folds, each round carrying the block layout of its
/// train and test segments.
FoldAssignment blocked_kfold(std::size_t n, std::size_t K, std::size_t mu);

/// Maps a position range through a round's ordered index list to dataset rows.
std::vector<std::size_t> resolve_range(const IndexRange& range,
                                       const std::vector<std::size_t>& ordered);

/// Dataset rows covered by a family of block ranges, in order.
std::vector<std::size_t> resolve_blocks(const std::vector<IndexRange>& blocks,
                                        const std::vector<std::size_t>& ordered);

}  // namespace cvbound
