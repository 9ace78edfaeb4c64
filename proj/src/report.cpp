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

#include "adaptnc/report.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "adaptnc/errors.hpp"

namespace adaptnc {

namespace fs = std::filesystem;

namespace {

double json_number(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) return std::numeric_limits<double>::quiet_NaN();
    const auto& v = j[key];
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        return std::numeric_limits<double>::quiet_NaN();
    }
    return std::numeric_limits<double>::quiet_NaN();
}

const std::vector<std::string> kMethods = {"adaptnc", "adaptnc_no_replay", "dtaci",
                                           "split_cp"};

struct Cell {
    std::vector<const SummaryRecord*> runs;

    double mean(double SummaryRecord::* field) const {
        double acc = 0.0;
        for (const auto* r : runs) acc += r->*field;
        return acc / static_cast<double>(runs.size());
    }
};

}  // namespace

std::vector<SummaryRecord> load_summaries(const std::string& directory) {
    std::vector<SummaryRecord> out;
    if (!fs::exists(directory)) return out;
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(directory)) {
        if (entry.is_regular_file() &&
            entry.path().filename().string().ends_with("_summary.json"))
            files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& path : files) {
        std::ifstream in(path);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const std::exception&) {
            continue;  // skip unparsable files
        }
        SummaryRecord rec;
        rec.env = j.value("env", "");
        rec.method = j.value("method", "");
        rec.seed = j.value("seed", 0ULL);
        rec.steps = j.value("steps", 0ULL);
        rec.global_coverage = json_number(j, "global_coverage");
        rec.mean_volume_covered = json_number(j, "mean_volume_covered");
        rec.local_mean = json_number(j, "local_mean");
        rec.local_std = json_number(j, "local_std");
        rec.vacuous_fraction = json_number(j, "vacuous_fraction");
        rec.stream_checksum = j.value("stream_checksum", "");
        if (!rec.env.empty() && !rec.method.empty()) out.push_back(std::move(rec));
    }
    return out;
}

std::string make_report(const std::vector<SummaryRecord>& summaries) {
    if (summaries.empty()) throw MissingRuns("report: no run summaries found");

    std::map<std::string, std::map<std::string, Cell>> by_env;
    for (const auto& rec : summaries) by_env[rec.env][rec.method].runs.push_back(&rec);

    std::vector<std::string> missing;
    for (const auto& [env, cells] : by_env)
        for (const auto& method : kMethods)
            if (!cells.contains(method)) missing.push_back("(" + method + ", " + env + ")");
    if (!missing.empty()) {
        std::string msg = "report: missing runs for";
        for (const auto& m : missing) msg += " " + m;
        throw MissingRuns(msg);
    }

    std::ostringstream out;
    out.setf(std::ios::fixed);
    for (const auto& [env, cells] : by_env) {
        const std::size_t seeds = cells.at("adaptnc").runs.size();
        out << "== " << env << " (" << seeds << (seeds == 1 ? " seed" : " seeds")
            << ") ==\n";
        out << "method               global_cov   avg_volume   local_cov(mean+/-std)"
               "   vacuous\n";
        for (const auto& method : kMethods) {
            const Cell& cell = cells.at(method);
            out.precision(4);
            out << method;
            for (std::size_t i = method.size(); i < 21; ++i) out << ' ';
            out << cell.mean(&SummaryRecord::global_coverage) << "       ";
            out.precision(3);
            out << cell.mean(&SummaryRecord::mean_volume_covered) << "      ";
            out.precision(4);
            out << cell.mean(&SummaryRecord::local_mean) << " +/- "
                << cell.mean(&SummaryRecord::local_std) << "      ";
            out.precision(4);
            out << cell.mean(&SummaryRecord::vacuous_fraction) << '\n';
        }
        out << '\n';
    }

    out << "== vacuous coverage fraction ==\n";
    out << "method";
    for (const auto& [env, cells] : by_env) {
        (void)cells;
        out << "  " << env;
    }
    out << '\n';
    for (const auto& method : kMethods) {
        out << method;
        for (std::size_t i = method.size(); i < 21; ++i) out << ' ';
        for (const auto& [env, cells] : by_env) {
            out.precision(4);
            out << cells.at(method).mean(&SummaryRecord::vacuous_fraction);
            for (std::size_t i = 6; i < env.size() + 2; ++i) out << ' ';
            out << "  ";
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace adaptnc
