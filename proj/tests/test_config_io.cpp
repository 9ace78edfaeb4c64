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

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "adaptnc/config.hpp"
#include "adaptnc/report.hpp"
#include "adaptnc/runio.hpp"

using namespace adaptnc;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
    const auto dir = fs::temp_directory_path() / ("adaptnc_test_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

constexpr const char* kGmmConfig = R"json({
  "env": "gmm",
  "method": "split_cp",
  "seeds": [3],
  "output_dir": "%OUT%",
  "adaptnc": {"calibration": 200, "window": 100, "mckde": {"samples": 1000}},
  "env_params": {"length": 1200}
})json";

std::string config_with_out(const fs::path& out) {
    std::string text = kGmmConfig;
    const std::string token = "%OUT%";
    text.replace(text.find(token), token.size(), out.string());
    return text;
}

}  // namespace

TEST_CASE("config parsing accepts the documented schema") {
    const auto cfg = parse_config(R"({
      "env": "localization",
      "method": ["adaptnc", "dtaci"],
      "seeds": [1, 2],
      "local_window": 50,
      "adaptnc": {
        "target_alpha": 0.2,
        "adapt_interval": 25,
        "window": 64,
        "gammas": [0.01, 0.02],
        "replay": false,
        "mckde": {"bandwidth_method": "silverman", "bandwidth_factor": 1.5}
      },
      "env_params": {"steps": 100, "v_max": 2.0}
    })");
    CHECK(cfg.env == "localization");
    REQUIRE(cfg.methods.size() == 2);
    CHECK(cfg.methods[0] == BaselineKind::adaptnc);
    CHECK(cfg.methods[1] == BaselineKind::dtaci_fixed);
    CHECK(cfg.adaptnc.target_alpha == doctest::Approx(0.2));
    CHECK(cfg.adaptnc.window == 64);
    CHECK_FALSE(cfg.adaptnc.replay);
    CHECK(cfg.adaptnc.mckde.bandwidth_method == BandwidthMethod::silverman);
    CHECK(cfg.localization.steps == 100);
    CHECK(cfg.localization.v_max == doctest::Approx(2.0));
}

TEST_CASE("config rejects unknown keys and bad values by name") {
    CHECK_THROWS_WITH_AS(parse_config(R"({"env": "gmm", "bogus": 1})"),
                         doctest::Contains("bogus"), ConfigError);
    CHECK_THROWS_WITH_AS(
        parse_config(R"({"env": "gmm", "adaptnc": {"target_alpha": 1.5}})"),
        doctest::Contains("target_alpha"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"env": "flying_carpet"})"),
                         doctest::Contains("env"), ConfigError);
    CHECK_THROWS_WITH_AS(
        parse_config(R"({"env": "gmm", "env_params": {"steps": 5}})"),
        doctest::Contains("steps"), ConfigError);
    CHECK_THROWS_AS(parse_config("not json"), ConfigError);
}

TEST_CASE("format_double spells infinities per the CSV contract") {
    CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
    CHECK(format_double(0.25) == "0.25");
    CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
}

TEST_CASE("execute_run writes csv, weights, and summary atomically") {
    const auto out = temp_dir("run");
    const auto cfg = parse_config(config_with_out(out));
    const std::string summary_path =
        execute_run(cfg, BaselineKind::split_cp, cfg.seeds[0]);
    CHECK(fs::exists(summary_path));

    const auto csv = slurp(out / "gmm_split_cp_seed3_steps.csv");
    std::size_t rows = 0;
    for (char c : csv) rows += c == '\n' ? 1 : 0;
    // Header plus one row per recorded step (stream length minus warmup).
    CHECK(rows == 1 + 1200);
    CHECK(csv.rfind("t,method,env,seed,alpha_bar,q,covered,volume,vacuous,"
                    "theta_version\n", 0) == 0);
    CHECK(fs::exists(out / "gmm_split_cp_seed3_weights.csv"));
    fs::remove_all(out);
}

TEST_CASE("identical config and seed produce byte-identical outputs") {
    const auto out1 = temp_dir("det1");
    const auto out2 = temp_dir("det2");
    auto cfg1 = parse_config(config_with_out(out1));
    auto cfg2 = parse_config(config_with_out(out2));
    cfg1.methods = {BaselineKind::adaptnc};
    cfg2.methods = {BaselineKind::adaptnc};
    execute_run(cfg1, BaselineKind::adaptnc, 3);
    execute_run(cfg2, BaselineKind::adaptnc, 3);
    CHECK(slurp(out1 / "gmm_adaptnc_seed3_steps.csv") ==
          slurp(out2 / "gmm_adaptnc_seed3_steps.csv"));
    CHECK(slurp(out1 / "gmm_adaptnc_seed3_weights.csv") ==
          slurp(out2 / "gmm_adaptnc_seed3_weights.csv"));
    fs::remove_all(out1);
    fs::remove_all(out2);
}

TEST_CASE("report aggregates complete grids and names missing cells") {
    const auto out = temp_dir("report");
    auto cfg = parse_config(config_with_out(out));
    cfg.adaptnc.calibration = 150;
    cfg.adaptnc.window = 64;
    cfg.gmm.length = 600;
    for (auto kind : {BaselineKind::split_cp, BaselineKind::dtaci_fixed,
                      BaselineKind::adaptnc_no_replay})
        execute_run(cfg, kind, 3);

    auto partial = load_summaries(out.string());
    CHECK_THROWS_WITH_AS(make_report(partial), doctest::Contains("adaptnc"),
                         MissingRuns);

    execute_run(cfg, BaselineKind::adaptnc, 3);
    auto complete = load_summaries(out.string());
    REQUIRE(complete.size() == 4);
    const std::string table = make_report(complete);
    CHECK(table.find("gmm") != std::string::npos);
    CHECK(table.find("split_cp") != std::string::npos);
    CHECK(table.find("vacuous") != std::string::npos);

    // Same seed, same env: the stream checksum column matches across methods.
    for (const auto& rec : complete)
        CHECK(rec.stream_checksum == complete.front().stream_checksum);
    fs::remove_all(out);
}

TEST_CASE("cli binary exit codes") {
    const auto out = temp_dir("cli");
    const auto good_path = out / "good.json";
    {
        std::ofstream f(good_path);
        auto text = config_with_out(out);
        // shrink the run so the test stays fast
        const auto pos = text.find("1200");
        text.replace(pos, 4, "300");
        f << text;
    }
    const auto bad_path = out / "bad.json";
    {
        std::ofstream f(bad_path);
        f << R"({"env": "gmm", "adaptnc": {"target_alpha": 1.5}})";
    }

    const std::string cli = ADAPTNC_CLI_PATH;
    const int ok = std::system((cli + " run " + good_path.string() +
                                " > /dev/null 2>&1").c_str());
    CHECK(WEXITSTATUS(ok) == 0);
    const int bad = std::system((cli + " run " + bad_path.string() +
                                 " > /dev/null 2>&1").c_str());
    CHECK(WEXITSTATUS(bad) == 1);
    const int missing = std::system((cli + " report " + (out / "nowhere").string() +
                                     " > /dev/null 2>&1").c_str());
    CHECK(WEXITSTATUS(missing) == 1);
    fs::remove_all(out);
}
