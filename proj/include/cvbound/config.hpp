#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cvbound/bounds.hpp"
#include "cvbound/data_model.hpp"
#include "cvbound/dependence.hpp"

namespace cvbound {

/// The experiment record: one declarative file, overridable by flags.
/// Serialization round-trips exactly (parse(serialize(cfg)) == cfg).
struct RunConfig {
  std::string dataset_path;
  LossSpec loss{};
  // Model grid: either explicit vectors or an axis-wise linspace product.
  std::vector<std::vector<double>> model_vectors;
  std::vector<double> grid_min, grid_max;
  std::vector<std::size_t> grid_steps;
  std::vector<std::string> labels;
  std::optional<double> envelope;

  BoundMode mode = BoundMode::iid_convoluted;
  double varpi = 0.1;
  double nu = 2.0;
  double xi = 1.0;
  double c = 1.0;
  double confidence_floor = 0.0;
  double orlicz_tol = 1e-6;
  double orlicz_u_cap = 1e8;
  std::optional<std::pair<std::size_t, std::size_t>> k_range;
  std::size_t k_cap = 50;
  std::size_t mu = 2;
  std::optional<MixingModel> mixing;
  std::size_t rc_draws = 1024;
  std::uint64_t seed = 0;
  std::string output_dir;  // empty: fall back to $CVBOUND_OUT, then "out"

  bool operator==(const RunConfig&) const = default;

  ModelClass make_model_class() const;
  void validate() const;
};

RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);
std::string serialize_config(const RunConfig& cfg);

}  // namespace cvbound
