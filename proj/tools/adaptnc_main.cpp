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

#include <atomic>
#include <exception>
#include <iostream>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "adaptnc/config.hpp"
#include "adaptnc/parallel.hpp"
#include "adaptnc/report.hpp"
#include "adaptnc/runio.hpp"

namespace {

struct Task {
    adaptnc::BaselineKind method;
    std::uint64_t seed;
};

// Runs all (method, seed) cells, ADAPTNC_THREADS-capped seed-level
// parallelism, fail-fast on the first error.
int run_tasks(const adaptnc::ExperimentConfig& config, const std::vector<Task>& tasks) {
    std::atomic<std::size_t> cursor{0};
    std::atomic<bool> failed{false};
    std::mutex io_mutex;
    const std::size_t workers =
        std::min<std::size_t>(adaptnc::worker_count(), tasks.size());

    auto worker = [&] {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= tasks.size() || failed.load()) return;
            try {
                const std::string path =
                    adaptnc::execute_run(config, tasks[i].method, tasks[i].seed);
                std::lock_guard<std::mutex> lock(io_mutex);
                std::cout << "wrote " << path << '\n';
            } catch (const std::exception& e) {
                failed.store(true);
                std::lock_guard<std::mutex> lock(io_mutex);
                std::cerr << "run failed (method=" << to_string(tasks[i].method)
                          << ", seed=" << tasks[i].seed << "): " << e.what() << '\n';
            }
        }
    };

    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return failed.load() ? 2 : 0;
}

std::vector<std::uint64_t> parse_seed_range(const std::string& text) {
    const auto dots = text.find("..");
    if (dots == std::string::npos)
        return {static_cast<std::uint64_t>(std::stoull(text))};
    const std::uint64_t lo = std::stoull(text.substr(0, dots));
    const std::uint64_t hi = std::stoull(text.substr(dots + 2));
    if (hi < lo) throw adaptnc::ConfigError("seed range upper bound below lower bound");
    std::vector<std::uint64_t> seeds;
    for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
    return seeds;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"AdaptNC: online conformal prediction with adaptive "
                 "nonconformity scores, plus benchmark environments"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> method_overrides;
    std::string seed_range;
    std::string report_dir;

    auto* run_cmd = app.add_subcommand("run", "Execute one experiment config");
    run_cmd->add_option("config", config_path, "Experiment JSON file")->required();
    run_cmd->add_option("--method", method_overrides,
                        "Override the configured method (repeatable)");

    auto* sweep_cmd =
        app.add_subcommand("sweep", "Execute an experiment across a seed range");
    sweep_cmd->add_option("config", config_path, "Experiment JSON file")->required();
    sweep_cmd->add_option("--seeds", seed_range, "Seed range a..b (inclusive)")
        ->required();
    sweep_cmd->add_option("--method", method_overrides,
                          "Override the configured method (repeatable)");

    auto* report_cmd =
        app.add_subcommand("report", "Aggregate run summaries into tables");
    report_cmd->add_option("dir", report_dir, "Directory of *_summary.json files")
        ->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (report_cmd->parsed()) {
            const auto summaries = adaptnc::load_summaries(report_dir);
            std::cout << adaptnc::make_report(summaries);
            return 0;
        }

        adaptnc::ExperimentConfig config = adaptnc::load_config(config_path);
        if (!method_overrides.empty()) {
            config.methods.clear();
            for (const auto& m : method_overrides)
                config.methods.push_back(adaptnc::parse_baseline(m));
        }
        if (sweep_cmd->parsed()) config.seeds = parse_seed_range(seed_range);

        std::vector<Task> tasks;
        for (const auto method : config.methods)
            for (const auto seed : config.seeds) tasks.push_back({method, seed});
        return run_tasks(config, tasks);
    } catch (const adaptnc::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const adaptnc::MissingRuns& e) {
        std::cerr << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
