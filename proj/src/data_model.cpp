#include "cvbound/data_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cvbound {

Dataset Dataset::validated(std::vector<double> y, std::vector<double> x, std::size_t p,
                           Ordering ordering) {
  const std::size_t n = y.size();
  if (n < 4) fail(Errc::BadParams, "need at least 4 sample points, got " + std::to_string(n));
  if (p < 1) fail(Errc::BadParams, "need at least one predictor column");
  if (x.size() != n * p) {
    fail(Errc::BadParams, "predictor matrix size " + std::to_string(x.size()) +
                              " does not match n*p = " + std::to_string(n * p));
  }
  for (double v : y) {
    if (!std::isfinite(v)) fail(Errc::BadParams, "non-finite response value");
  }
  for (double v : x) {
    if (!std::isfinite(v)) fail(Errc::BadParams, "non-finite predictor value");
  }
  return Dataset{std::move(y), std::move(x), n, p, ordering};
}

ModelClass ModelClass::validated(std::vector<std::vector<double>> hypotheses,
                                 std::vector<std::string> labels,
                                 std::optional<double> envelope) {
  if (hypotheses.empty()) fail(Errc::BadParams, "model class must be non-empty");
  const std::size_t p = hypotheses.front().size();
  for (const auto& h : hypotheses) {
    if (h.size() != p) fail(Errc::BadParams, "hypothesis dimension mismatch");
  }
  for (std::size_t a = 0; a < hypotheses.size(); ++a) {
    for (std::size_t b = a + 1; b < hypotheses.size(); ++b) {
      if (hypotheses[a] == hypotheses[b]) {
        fail(Errc::BadParams, "duplicate hypothesis at indices " + std::to_string(a) + " and " +
                                  std::to_string(b));
      }
    }
  }
  if (envelope && *envelope <= 0.0) fail(Errc::BadParams, "envelope must be positive");
  if (labels.empty()) {
    labels.reserve(hypotheses.size());
    for (std::size_t j = 0; j < hypotheses.size(); ++j) labels.push_back("b" + std::to_string(j));
  } else if (labels.size() != hypotheses.size()) {
    fail(Errc::BadParams, "label count does not match hypothesis count");
  }
  return ModelClass{std::move(hypotheses), std::move(labels), envelope};
}

namespace {

double point_loss(const LossSpec& loss, double y, double pred) {
  switch (loss.kind) {
    case LossSpec::Kind::squared: {
      const double d = y - pred;
      return d * d;
    }
    case LossSpec::Kind::absolute:
      return std::abs(y - pred);
    case LossSpec::Kind::zero_one: {
      const int predicted = pred >= loss.threshold ? 1 : 0;
      const int actual = y != 0.0 ? 1 : 0;
      return predicted == actual ? 0.0 : 1.0;
    }
    case LossSpec::Kind::user_table:
      break;  // handled by the caller
  }
  return 0.0;
}

}  // namespace

void LossMatrix::finalize(std::optional<double> envelope, bool certified) {
  max_entry_ = 0.0;
  for (std::size_t j = 0; j < m_; ++j) {
    for (std::size_t i = 0; i < n_; ++i) {
      const double q = at(i, j);
      if (!std::isfinite(q) || q < 0.0) {
        fail(Errc::NonFiniteLoss, "entry (" + std::to_string(i) + ", " + std::to_string(j) +
                                      ") = " + std::to_string(q));
      }
      max_entry_ = std::max(max_entry_, q);
      if (envelope && q > *envelope) {
        fail(Errc::EnvelopeViolated, "entry (" + std::to_string(i) + ", " + std::to_string(j) +
                                         ") = " + std::to_string(q) + " exceeds envelope " +
                                         std::to_string(*envelope));
      }
    }
  }
  certified_ = certified && envelope.has_value();
  envelope_ = certified_ ? *envelope : max_entry_;
}

LossMatrix LossMatrix::build(const Dataset& data, const LossSpec& loss, const ModelClass& model) {
  LossMatrix lm;
  lm.n_ = data.n;
  lm.m_ = model.size();
  lm.cols_.resize(lm.n_ * lm.m_);

  if (loss.kind == LossSpec::Kind::user_table) {
    if (model.size() != data.p) {
      fail(Errc::BadParams, "user_table loss needs one predictor column per hypothesis (" +
                                std::to_string(data.p) + " columns, " +
                                std::to_string(model.size()) + " hypotheses)");
    }
    for (std::size_t j = 0; j < lm.m_; ++j) {
      for (std::size_t i = 0; i < lm.n_; ++i) {
        double q = data.xat(i, j);
        if (loss.clip) q = std::min(q, *loss.clip);
        lm.cols_[j * lm.n_ + i] = q;
      }
    }
  } else {
    for (std::size_t j = 0; j < lm.m_; ++j) {
      const auto& b = model.hypotheses[j];
      if (b.size() != data.p) {
        fail(Errc::BadParams, "hypothesis " + std::to_string(j) + " has dimension " +
                                  std::to_string(b.size()) + ", data has p = " +
                                  std::to_string(data.p));
      }
      for (std::size_t i = 0; i < lm.n_; ++i) {
        double pred = 0.0;
        for (std::size_t k = 0; k < data.p; ++k) pred += b[k] * data.xat(i, k);
        double q = point_loss(loss, data.y[i], pred);
        if (loss.clip) q = std::min(q, *loss.clip);
        lm.cols_[j * lm.n_ + i] = q;
      }
    }
  }

  // Envelope certification order: user-declared M, else clip level, else the
  // structural zero_one bound. Anything else stays empirical.
  std::optional<double> env;
  bool certified = false;
  if (model.envelope) {
    env = model.envelope;
    certified = true;
  } else if (loss.clip) {
    env = loss.clip;
    certified = true;
  } else if (loss.kind == LossSpec::Kind::zero_one) {
    env = 1.0;
    certified = true;
  }
  lm.finalize(env, certified);
  return lm;
}

LossMatrix LossMatrix::from_values(std::vector<double> values_row_major, std::size_t n,
                                   std::size_t m, std::optional<double> envelope,
                                   bool envelope_certified) {
  if (n == 0 || m == 0) fail(Errc::BadParams, "loss matrix must be non-empty");
  if (values_row_major.size() != n * m) {
    fail(Errc::BadParams, "value count does not match n*m");
  }
  LossMatrix lm;
  lm.n_ = n;
  lm.m_ = m;
  lm.cols_.resize(n * m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) lm.cols_[j * n + i] = values_row_major[i * m + j];
  }
  lm.finalize(envelope, envelope_certified);
  return lm;
}

double empirical_risk(const LossMatrix& lm, std::span<const std::size_t> indices, std::size_t j) {
  if (indices.empty()) fail(Errc::EmptyIndexSet, "empirical risk over an empty index set");
  if (j >= lm.cols()) fail(Errc::BadParams, "hypothesis index out of range");
  const auto col = lm.column(j);
  double sum = 0.0;
  for (std::size_t i : indices) {
    if (i >= lm.rows()) fail(Errc::BadParams, "sample index out of range");
    sum += col[i];
  }
  return sum / static_cast<double>(indices.size());
}

}  // namespace cvbound
