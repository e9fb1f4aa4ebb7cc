#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cvbound/errors.hpp"

namespace cvbound {

enum class Ordering { exchangeable, temporal };

/// A regression/classification sample: responses y and an n-by-p predictor
/// matrix. `temporal` ordering keeps index order meaningful for blocked CV.
struct Dataset {
  std::vector<double> y;
  std::vector<double> x;  // row-major, n*p
  std::size_t n = 0;
  std::size_t p = 0;
  Ordering ordering = Ordering::exchangeable;

  double xat(std::size_t i, std::size_t k) const { return x[i * p + k]; }

  // Checks n >= 4, p >= 1, shape consistency and finiteness.
  static Dataset validated(std::vector<double> y, std::vector<double> x, std::size_t p,
                           Ordering ordering = Ordering::exchangeable);
};

struct LossSpec {
  enum class Kind { squared, absolute, zero_one, user_table };
  Kind kind = Kind::squared;
  double threshold = 0.5;        // zero_one only: predict 1 when b.x >= threshold
  std::optional<double> clip{};  // truncate losses at min(Q, clip); certifies the envelope

  bool operator==(const LossSpec&) const = default;

  static LossSpec squared() { return {Kind::squared, 0.5, {}}; }
  static LossSpec absolute() { return {Kind::absolute, 0.5, {}}; }
  static LossSpec zero_one(double threshold) { return {Kind::zero_one, threshold, {}}; }
  // Predictor columns are read directly as per-hypothesis losses.
  static LossSpec user_table() { return {Kind::user_table, 0.5, {}}; }
};

/// Finite ordered grid of linear hypotheses; the index is the identity.
struct ModelClass {
  std::vector<std::vector<double>> hypotheses;  // each of length p
  std::vector<std::string> labels;              // one per hypothesis
  std::optional<double> envelope{};             // user-certified sup of the loss

  std::size_t size() const { return hypotheses.size(); }

  static ModelClass validated(std::vector<std::vector<double>> hypotheses,
                              std::vector<std::string> labels = {},
                              std::optional<double> envelope = {});
};

/// Q(b_j, y_i, x_i) for every sample point i and hypothesis j. Immutable;
/// every risk, complexity and tail quantity downstream reduces over it.
class LossMatrix {
 public:
  static LossMatrix build(const Dataset& data, const LossSpec& loss, const ModelClass& model);

  // Direct construction from a column table (simulator loss streams, tests).
  static LossMatrix from_values(std::vector<double> values_row_major, std::size_t n,
                                std::size_t m, std::optional<double> envelope = {},
                                bool envelope_certified = false);

  std::size_t rows() const { return n_; }
  std::size_t cols() const { return m_; }
  double at(std::size_t i, std::size_t j) const { return cols_[j * n_ + i]; }
  std::span<const double> column(std::size_t j) const { return {cols_.data() + j * n_, n_}; }

  // Certified envelope if one exists, otherwise the empirical max entry.
  double envelope() const { return envelope_; }
  bool envelope_certified() const { return certified_; }
  double max_entry() const { return max_entry_; }

 private:
  LossMatrix() = default;
  void finalize(std::optional<double> envelope, bool certified);

  std::vector<double> cols_;  // column-major, m*n
  std::size_t n_ = 0;
  std::size_t m_ = 0;
  double envelope_ = 0.0;
  double max_entry_ = 0.0;
  bool certified_ = false;
};

/// Mean loss of hypothesis j over the given sample indices.
double empirical_risk(const LossMatrix& lm, std::span<const std::size_t> indices, std::size_t j);

}  // namespace cvbound
