// Copyright 2026 The AdaptNC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "adaptnc/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace adaptnc {

namespace {

using nlohmann::json;

void require_keys(const json& obj, const std::string& scope,
                  const std::set<std::string>& known) {
    for (const auto& item : obj.items()) {
        if (!known.contains(item.key()))
            throw ConfigError("unknown key '" + scope + item.key() + "'");
    }
}

double get_number(const json& obj, const std::string& scope, const std::string& key,
                  double fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number())
        throw ConfigError("config error at " + scope + key + ": expected a number");
    return obj[key].get<double>();
}

std::size_t get_count(const json& obj, const std::string& scope, const std::string& key,
                      std::size_t fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number_unsigned())
        throw ConfigError("config error at " + scope + key +
                          ": expected a nonnegative integer");
    return obj[key].get<std::size_t>();
}

bool get_bool(const json& obj, const std::string& scope, const std::string& key,
              bool fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_boolean())
        throw ConfigError("config error at " + scope + key + ": expected a boolean");
    return obj[key].get<bool>();
}

void parse_mckde(const json& obj, McKdeConfig& out) {
    require_keys(obj, "adaptnc.mckde.", {"samples", "bandwidth_method", "bandwidth_factor"});
    out.samples = get_count(obj, "adaptnc.mckde.", "samples", out.samples);
    out.bandwidth_factor =
        get_number(obj, "adaptnc.mckde.", "bandwidth_factor", out.bandwidth_factor);
    if (obj.contains("bandwidth_method")) {
        const std::string method = obj["bandwidth_method"].get<std::string>();
        if (method == "scott")
            out.bandwidth_method = BandwidthMethod::scott;
        else if (method == "silverman")
            out.bandwidth_method = BandwidthMethod::silverman;
        else
            throw ConfigError(
                "config error at adaptnc.mckde.bandwidth_method: expected "
                "'scott' or 'silverman'");
    }
}

void parse_adaptnc(const json& obj, AdaptncConfig& out) {
    require_keys(obj, "adaptnc.",
                 {"target_alpha", "adapt_interval", "window", "gammas", "eta", "sigma",
                  "mckde", "replay", "calibration", "history_max", "min_history"});
    out.target_alpha = get_number(obj, "adaptnc.", "target_alpha", out.target_alpha);
    if (!(out.target_alpha > 0.0 && out.target_alpha < 1.0))
        throw ConfigError("config error at adaptnc.target_alpha: must lie in (0,1)");
    out.adapt_interval = get_count(obj, "adaptnc.", "adapt_interval", out.adapt_interval);
    if (out.adapt_interval < 1)
        throw ConfigError("config error at adaptnc.adapt_interval: must be at least 1");
    out.window = get_count(obj, "adaptnc.", "window", out.window);
    if (out.window < 10)
        throw ConfigError("config error at adaptnc.window: must be at least 10");
    if (obj.contains("gammas")) {
        if (!obj["gammas"].is_array() || obj["gammas"].empty())
            throw ConfigError("config error at adaptnc.gammas: expected a nonempty array");
        out.gammas.clear();
        for (const auto& g : obj["gammas"]) out.gammas.push_back(g.get<double>());
    }
    if (obj.contains("eta")) out.eta = get_number(obj, "adaptnc.", "eta", 0.0);
    if (obj.contains("sigma")) out.sigma = get_number(obj, "adaptnc.", "sigma", 0.0);
    if (obj.contains("mckde")) parse_mckde(obj["mckde"], out.mckde);
    out.replay = get_bool(obj, "adaptnc.", "replay", out.replay);
    out.calibration = get_count(obj, "adaptnc.", "calibration", out.calibration);
    out.history_max = get_count(obj, "adaptnc.", "history_max", out.history_max);
    out.min_history = get_count(obj, "adaptnc.", "min_history", out.min_history);
}

void parse_env_params(const json& obj, ExperimentConfig& out) {
    const std::string scope = "env_params.";
    if (out.env == "gmm") {
        require_keys(obj, scope,
                     {"length", "ramp_start", "ramp_end", "mean1", "cov1", "mean2", "cov2"});
        auto& g = out.gmm;
        g.length = get_count(obj, scope, "length", g.length);
        g.ramp_start = get_count(obj, scope, "ramp_start", g.ramp_start);
        g.ramp_end = get_count(obj, scope, "ramp_end", g.ramp_end);
        auto parse_component = [&](const char* mean_key, const char* cov_key,
                                   const envs::Gaussian2& current) {
            Vec2 mean = current.mean();
            if (obj.contains(mean_key)) {
                const auto& m = obj[mean_key];
                if (!m.is_array() || m.size() != 2)
                    throw ConfigError("config error at " + scope + mean_key +
                                      ": expected [x, y]");
                mean = {m[0].get<double>(), m[1].get<double>()};
            }
            if (obj.contains(cov_key)) {
                const auto& c = obj[cov_key];
                if (!c.is_array() || c.size() != 2 || !c[0].is_array() || c[0].size() != 2 ||
                    !c[1].is_array() || c[1].size() != 2)
                    throw ConfigError("config error at " + scope + cov_key +
                                      ": expected a 2x2 matrix");
                return envs::Gaussian2(mean, c[0][0].get<double>(), c[0][1].get<double>(),
                                       c[1][1].get<double>());
            }
            return envs::Gaussian2(mean, 1.0, 0.0, 1.0);
        };
        if (obj.contains("mean1") || obj.contains("cov1"))
            g.component1 = parse_component("mean1", "cov1", g.component1);
        if (obj.contains("mean2") || obj.contains("cov2"))
            g.component2 = parse_component("mean2", "cov2", g.component2);
    } else if (out.env == "localization") {
        require_keys(obj, scope,
                     {"steps", "dt", "sigma_proc", "reference_power_db",
                      "path_loss_exponent", "shadowing_sigma_db", "shadowing_rho",
                      "v_max", "a_max", "filter_alpha", "filter_beta"});
        auto& l = out.localization;
        l.steps = get_count(obj, scope, "steps", l.steps);
        l.dt = get_number(obj, scope, "dt", l.dt);
        l.sigma_proc = get_number(obj, scope, "sigma_proc", l.sigma_proc);
        l.reference_power_db =
            get_number(obj, scope, "reference_power_db", l.reference_power_db);
        l.path_loss_exponent =
            get_number(obj, scope, "path_loss_exponent", l.path_loss_exponent);
        l.shadowing_sigma_db =
            get_number(obj, scope, "shadowing_sigma_db", l.shadowing_sigma_db);
        l.shadowing_rho = get_number(obj, scope, "shadowing_rho", l.shadowing_rho);
        l.v_max = get_number(obj, scope, "v_max", l.v_max);
        l.a_max = get_number(obj, scope, "a_max", l.a_max);
        l.filter_alpha = get_number(obj, scope, "filter_alpha", l.filter_alpha);
        l.filter_beta = get_number(obj, scope, "filter_beta", l.filter_beta);
    } else if (out.env == "socialnav") {
        require_keys(obj, scope,
                     {"steps", "dt", "agents", "radius_initial", "radius_final",
                      "radius_ramp_start", "radius_ramp_steps", "fluctuation_sigma"});
        auto& s = out.socialnav;
        s.steps = get_count(obj, scope, "steps", s.steps);
        s.dt = get_number(obj, scope, "dt", s.dt);
        s.agents = get_count(obj, scope, "agents", s.agents);
        s.radius_initial = get_number(obj, scope, "radius_initial", s.radius_initial);
        s.radius_final = get_number(obj, scope, "radius_final", s.radius_final);
        s.radius_ramp_start =
            get_count(obj, scope, "radius_ramp_start", s.radius_ramp_start);
        s.radius_ramp_steps =
            get_count(obj, scope, "radius_ramp_steps", s.radius_ramp_steps);
        s.fluctuation_sigma =
            get_number(obj, scope, "fluctuation_sigma", s.fluctuation_sigma);
    } else if (out.env == "multirotor") {
        require_keys(obj, scope,
                     {"steps", "degradation_drift", "degradation_sigma", "initial_health",
                      "mppi_temperature", "mppi_noise_scale"});
        auto& m = out.multirotor;
        m.steps = get_count(obj, scope, "steps", m.steps);
        m.degradation_drift =
            get_number(obj, scope, "degradation_drift", m.degradation_drift);
        m.degradation_sigma =
            get_number(obj, scope, "degradation_sigma", m.degradation_sigma);
        m.initial_health = get_number(obj, scope, "initial_health", m.initial_health);
        m.mppi_temperature =
            get_number(obj, scope, "mppi_temperature", m.mppi_temperature);
        m.mppi_noise_scale =
            get_number(obj, scope, "mppi_noise_scale", m.mppi_noise_scale);
    }
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("config root must be an object");
    require_keys(root, "",
                 {"env", "method", "seeds", "output_dir", "local_window", "adaptnc",
                  "env_params"});

    ExperimentConfig config;
    if (!root.contains("env") || !root["env"].is_string())
        throw ConfigError("config error at env: a string environment name is required");
    config.env = root["env"].get<std::string>();
    if (config.env != "gmm" && config.env != "localization" &&
        config.env != "socialnav" && config.env != "multirotor")
        throw ConfigError("config error at env: unknown environment '" + config.env + "'");

    if (root.contains("method")) {
        config.methods.clear();
        if (root["method"].is_string()) {
            config.methods.push_back(parse_baseline(root["method"].get<std::string>()));
        } else if (root["method"].is_array()) {
            for (const auto& m : root["method"])
                config.methods.push_back(parse_baseline(m.get<std::string>()));
        } else {
            throw ConfigError("config error at method: expected a string or array");
        }
    }

    if (root.contains("seeds")) {
        if (!root["seeds"].is_array() || root["seeds"].empty())
            throw ConfigError("config error at seeds: expected a nonempty array");
        config.seeds.clear();
        for (const auto& s : root["seeds"])
            config.seeds.push_back(s.get<std::uint64_t>());
    }
    if (root.contains("output_dir"))
        config.output_dir = root["output_dir"].get<std::string>();
    config.local_window = get_count(root, "", "local_window", config.local_window);
    if (config.local_window < 1)
        throw ConfigError("config error at local_window: must be at least 1");

    if (root.contains("adaptnc")) parse_adaptnc(root["adaptnc"], config.adaptnc);
    if (root.contains("env_params")) parse_env_params(root["env_params"], config);

    try {
        config.adaptnc.validate();
    } catch (const InvalidInput& e) {
        throw ConfigError(std::string("config error at adaptnc: ") + e.what());
    }
    return config;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::unique_ptr<envs::Stream> make_stream(const ExperimentConfig& config,
                                          std::uint64_t seed) {
    const std::size_t warmup = config.adaptnc.calibration;
    if (config.env == "gmm") {
        auto cfg = config.gmm;
        cfg.warmup = warmup;
        return std::make_unique<envs::GmmStream>(cfg, seed);
    }
    if (config.env == "localization") {
        auto cfg = config.localization;
        cfg.warmup = warmup;
        return std::make_unique<envs::LocalizationStream>(cfg, seed);
    }
    if (config.env == "socialnav") {
        auto cfg = config.socialnav;
        cfg.warmup = warmup;
        return std::make_unique<envs::SocialNavStream>(cfg, seed);
    }
    if (config.env == "multirotor") {
        auto cfg = config.multirotor;
        cfg.warmup = warmup;
        return std::make_unique<envs::MultirotorStream>(cfg, seed);
    }
    throw ConfigError("config error at env: unknown environment '" + config.env + "'");
}

}  // namespace adaptnc
