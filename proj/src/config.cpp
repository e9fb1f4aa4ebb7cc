#include "cvbound/config.hpp"

#include <json.hpp>

#include "cvbound/csv.hpp"

namespace cvbound {

using nlohmann::json;

namespace {

std::string loss_kind_name(LossSpec::Kind k) {
  switch (k) {
    case LossSpec::Kind::squared: return "squared";
    case LossSpec::Kind::absolute: return "absolute";
    case LossSpec::Kind::zero_one: return "zero_one";
    case LossSpec::Kind::user_table: return "user_table";
  }
  return "?";
}

LossSpec::Kind loss_kind_from(const std::string& s) {
  if (s == "squared") return LossSpec::Kind::squared;
  if (s == "absolute") return LossSpec::Kind::absolute;
  if (s == "zero_one") return LossSpec::Kind::zero_one;
  if (s == "user_table") return LossSpec::Kind::user_table;
  fail(Errc::ConfigError, "unknown loss kind '" + s + "'");
}

std::string mixing_kind_name(MixingModel::Kind k) {
  switch (k) {
    case MixingModel::Kind::exponential: return "exponential";
    case MixingModel::Kind::algebraic: return "algebraic";
    case MixingModel::Kind::table: return "table";
  }
  return "?";
}

json mixing_to_json(const MixingModel& m) {
  json j;
  j["kind"] = mixing_kind_name(m.kind);
  if (m.kind == MixingModel::Kind::table) {
    j["values"] = m.values;
  } else {
    j["beta0"] = m.beta0;
    j["r"] = m.r;
  }
  return j;
}

MixingModel mixing_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "exponential") {
    return MixingModel::exponential(j.at("beta0").get<double>(), j.at("r").get<double>());
  }
  if (kind == "algebraic") {
    return MixingModel::algebraic(j.at("beta0").get<double>(), j.at("r").get<double>());
  }
  if (kind == "table") {
    return MixingModel::table(j.at("values").get<std::vector<double>>());
  }
  fail(Errc::ConfigError, "unknown mixing kind '" + kind + "'");
}

}  // namespace

ModelClass RunConfig::make_model_class() const {
  std::vector<std::vector<double>> hyps;
  if (!model_vectors.empty()) {
    hyps = model_vectors;
  } else if (!grid_steps.empty()) {
    const std::size_t p = grid_steps.size();
    if (grid_min.size() != p || grid_max.size() != p) {
      fail(Errc::ConfigError, "grid min/max/steps must share one length");
    }
    for (std::size_t steps : grid_steps) {
      if (steps == 0) fail(Errc::ConfigError, "grid steps must be positive");
    }
    std::vector<std::size_t> idx(p, 0);
    bool done = false;
    while (!done) {
      std::vector<double> h(p);
      for (std::size_t k = 0; k < p; ++k) {
        const std::size_t steps = grid_steps[k];
        h[k] = steps == 1 ? grid_min[k]
                          : grid_min[k] + (grid_max[k] - grid_min[k]) *
                                              static_cast<double>(idx[k]) /
                                              static_cast<double>(steps - 1);
      }
      hyps.push_back(std::move(h));
      done = true;
      std::size_t k = p;
      while (k > 0) {
        --k;
        if (++idx[k] < grid_steps[k]) {
          done = false;
          break;
        }
        idx[k] = 0;
      }
    }
  } else {
    fail(Errc::ConfigError, "model needs either explicit vectors or a grid");
  }
  return ModelClass::validated(std::move(hyps), labels, envelope);
}

void RunConfig::validate() const {
  if (!(varpi > 0.0 && varpi <= 1.0)) fail(Errc::ConfigError, "varpi must lie in (0, 1]");
  if (nu < 1.0 || nu > 2.0) fail(Errc::ConfigError, "nu must lie in [1, 2]");
  if (!(xi > 0.0)) fail(Errc::ConfigError, "xi must be positive");
  if (!(c > 0.0)) fail(Errc::ConfigError, "c must be positive");
  if (!(confidence_floor >= 0.0 && confidence_floor < 1.0)) {
    fail(Errc::ConfigError, "confidence_floor must lie in [0, 1)");
  }
  if (rc_draws < 1) fail(Errc::ConfigError, "rc_draws must be positive");
  if (mu < 2) fail(Errc::ConfigError, "mu must be at least 2");
  const bool is_mixing =
      mode == BoundMode::mixing_one_round || mode == BoundMode::mixing_convoluted;
  if (is_mixing && !mixing) fail(Errc::ConfigError, "mixing modes need a mixing model");
  if (k_range && (k_range->first < 2 || k_range->first > k_range->second)) {
    fail(Errc::ConfigError, "k_range must satisfy 2 <= K_min <= K_max");
  }
}

RunConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(Errc::ConfigError, std::string("config is not valid JSON: ") + e.what());
  }
  try {
    RunConfig cfg;
    cfg.dataset_path = j.value("dataset", std::string{});

    if (j.contains("loss")) {
      const json& jl = j.at("loss");
      cfg.loss.kind = loss_kind_from(jl.at("kind").get<std::string>());
      cfg.loss.threshold = jl.value("threshold", 0.5);
      if (jl.contains("clip")) cfg.loss.clip = jl.at("clip").get<double>();
    }

    if (j.contains("model")) {
      const json& jm = j.at("model");
      if (jm.contains("vectors")) {
        cfg.model_vectors = jm.at("vectors").get<std::vector<std::vector<double>>>();
      }
      if (jm.contains("grid")) {
        const json& jg = jm.at("grid");
        cfg.grid_min = jg.at("min").get<std::vector<double>>();
        cfg.grid_max = jg.at("max").get<std::vector<double>>();
        cfg.grid_steps = jg.at("steps").get<std::vector<std::size_t>>();
      }
      if (jm.contains("labels")) cfg.labels = jm.at("labels").get<std::vector<std::string>>();
      if (jm.contains("envelope")) cfg.envelope = jm.at("envelope").get<double>();
    }

    cfg.mode = bound_mode_from_name(j.value("mode", std::string("iid_convoluted")));
    cfg.varpi = j.value("varpi", 0.1);
    cfg.nu = j.value("nu", 2.0);
    cfg.xi = j.value("xi", 1.0);
    cfg.c = j.value("c", 1.0);
    cfg.confidence_floor = j.value("confidence_floor", 0.0);
    cfg.orlicz_tol = j.value("orlicz_tol", 1e-6);
    cfg.orlicz_u_cap = j.value("orlicz_u_cap", 1e8);
    if (j.contains("k_range")) {
      const auto kr = j.at("k_range").get<std::vector<std::size_t>>();
      if (kr.size() != 2) fail(Errc::ConfigError, "k_range must be [K_min, K_max]");
      cfg.k_range = std::make_pair(kr[0], kr[1]);
    }
    cfg.k_cap = j.value("k_cap", std::size_t{50});
    cfg.mu = j.value("mu", std::size_t{2});
    if (j.contains("mixing")) cfg.mixing = mixing_from_json(j.at("mixing"));
    cfg.rc_draws = j.value("rc_draws", std::size_t{1024});
    cfg.seed = j.value("seed", std::uint64_t{0});
    cfg.output_dir = j.value("output_dir", std::string{});
    cfg.validate();
    return cfg;
  } catch (const json::exception& e) {
    fail(Errc::ConfigError, std::string("config field error: ") + e.what());
  }
}

RunConfig load_config(const std::string& path) { return parse_config(read_text_file(path)); }

std::string serialize_config(const RunConfig& cfg) {
  json j;
  j["dataset"] = cfg.dataset_path;
  j["loss"]["kind"] = loss_kind_name(cfg.loss.kind);
  j["loss"]["threshold"] = cfg.loss.threshold;
  if (cfg.loss.clip) j["loss"]["clip"] = *cfg.loss.clip;
  if (!cfg.model_vectors.empty()) j["model"]["vectors"] = cfg.model_vectors;
  if (!cfg.grid_steps.empty()) {
    j["model"]["grid"]["min"] = cfg.grid_min;
    j["model"]["grid"]["max"] = cfg.grid_max;
    j["model"]["grid"]["steps"] = cfg.grid_steps;
  }
  if (!cfg.labels.empty()) j["model"]["labels"] = cfg.labels;
  if (cfg.envelope) j["model"]["envelope"] = *cfg.envelope;
  j["mode"] = bound_mode_name(cfg.mode);
  j["varpi"] = cfg.varpi;
  j["nu"] = cfg.nu;
  j["xi"] = cfg.xi;
  j["c"] = cfg.c;
  j["confidence_floor"] = cfg.confidence_floor;
  j["orlicz_tol"] = cfg.orlicz_tol;
  j["orlicz_u_cap"] = cfg.orlicz_u_cap;
  if (cfg.k_range) j["k_range"] = {cfg.k_range->first, cfg.k_range->second};
  j["k_cap"] = cfg.k_cap;
  j["mu"] = cfg.mu;
  if (cfg.mixing) j["mixing"] = mixing_to_json(*cfg.mixing);
  j["rc_draws"] = cfg.rc_draws;
  j["seed"] = cfg.seed;
  j["output_dir"] = cfg.output_dir;
  return j.dump(2) + "\n";
}

}  // namespace cvbound
