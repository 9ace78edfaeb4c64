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

#include "adaptnc/runio.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace adaptnc {

namespace fs = std::filesystem;

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0.0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path temp = target.string() + ".tmp";
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write '" + temp.string() + "'");
        out << content;
    }
    fs::rename(temp, target);
}

std::string steps_csv(const std::string& env, const std::string& method,
                      std::uint64_t seed, const RunResult& result) {
    std::ostringstream out;
    out << "t,method,env,seed,alpha_bar,q,covered,volume,vacuous,theta_version\n";
    for (const auto& r : result.records) {
        out << r.t << ',' << method << ',' << env << ',' << seed << ','
            << format_double(r.alpha_bar) << ',' << format_double(r.q) << ','
            << (r.covered ? 1 : 0) << ',' << format_double(r.volume) << ','
            << (r.vacuous ? 1 : 0) << ',' << r.theta_version << '\n';
    }
    return out.str();
}

std::string weights_csv(const RunResult& result) {
    std::ostringstream out;
    std::size_t experts = 0;
    for (const auto& r : result.records)
        experts = std::max(experts, r.expert_weights.size());
    out << "t";
    for (std::size_t i = 0; i < experts; ++i) out << ",w" << (i + 1);
    out << '\n';
    for (const auto& r : result.records) {
        out << r.t;
        for (std::size_t i = 0; i < experts; ++i) {
            out << ',';
            if (i < r.expert_weights.size()) out << format_double(r.expert_weights[i]);
        }
        out << '\n';
    }
    return out.str();
}

namespace {

nlohmann::json number_or_string(double v) {
    if (std::isfinite(v)) return v;
    return format_double(v);
}

}  // namespace

std::string summary_json(const std::string& env, const std::string& method,
                         std::uint64_t seed, const RunResult& result,
                         const RunSummary& summary) {
    nlohmann::json j;
    j["env"] = env;
    j["method"] = method;
    j["seed"] = seed;
    j["steps"] = result.records.size();
    j["global_coverage"] = summary.global_coverage;
    j["mean_volume_covered"] = number_or_string(summary.mean_volume_covered);
    j["local_mean"] = summary.local_mean;
    j["local_std"] = summary.local_std;
    j["vacuous_fraction"] = summary.vacuous_fraction;
    j["theta_versions"] = result.theta_versions;
    char checksum[24];
    std::snprintf(checksum, sizeof checksum, "%016llx",
                  static_cast<unsigned long long>(result.stream_checksum));
    j["stream_checksum"] = checksum;
    return j.dump(2) + "\n";
}

std::string run_basename(const std::string& env, const std::string& method,
                         std::uint64_t seed) {
    return env + "_" + method + "_seed" + std::to_string(seed);
}

std::string execute_run(const ExperimentConfig& config, BaselineKind method,
                        std::uint64_t seed) {
    auto stream = make_stream(config, seed);
    const RunResult result = run_method(method, *stream, config.adaptnc, seed);
    const RunSummary summary =
        summarize(result.records, std::min(config.local_window, result.records.size()));

    const std::string method_name = to_string(method);
    const fs::path dir(config.output_dir);
    const std::string base = run_basename(config.env, method_name, seed);
    write_file_atomic((dir / (base + "_steps.csv")).string(),
                      steps_csv(config.env, method_name, seed, result));
    write_file_atomic((dir / (base + "_weights.csv")).string(), weights_csv(result));
    const std::string summary_path = (dir / (base + "_summary.json")).string();
    write_file_atomic(summary_path,
                      summary_json(config.env, method_name, seed, result, summary));
    return summary_path;
}

}  // namespace adaptnc
