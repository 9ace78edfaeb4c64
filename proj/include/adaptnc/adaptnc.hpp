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

#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "adaptnc/core.hpp"
#include "adaptnc/density.hpp"
#include "adaptnc/dtaci.hpp"
#include "adaptnc/envs/stream.hpp"

namespace adaptnc {

/// A value of adapt_interval meaning "never adapt" (fixed-score DtACI).
inline constexpr std::size_t kNeverAdapt = std::numeric_limits<std::size_t>::max();

struct HistoryEntry {
    Observation obs;
    double score = 0.0;      ///< score under the theta current at ingestion
    int theta_version = 0;
};

/// Chronological buffer of observed steps, optionally capped; eviction is
/// oldest-first.
class HistoryBuffer {
public:
    explicit HistoryBuffer(std::size_t max_entries = 0) : max_entries_(max_entries) {}

    void push(HistoryEntry entry);
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    std::span<const HistoryEntry> entries() const { return entries_; }
    /// Last min(n, size) entries, chronological.
    std::span<const HistoryEntry> tail(std::size_t n) const;

private:
    std::size_t max_entries_;
    std::vector<HistoryEntry> entries_;
};

struct AdaptncConfig {
    double target_alpha = 0.1;
    std::size_t adapt_interval = 100;  ///< t_s; kNeverAdapt disables adaptation
    std::size_t window = 500;          ///< W
    std::vector<double> gammas = {0.002, 0.004, 0.008, 0.016, 0.032, 0.064};
    std::optional<double> eta;    ///< defaults to sqrt((log(2kW)+1)/W)
    std::optional<double> sigma;  ///< defaults to 1/(2W)
    McKdeConfig mckde;
    bool replay = true;
    std::size_t calibration = 500;
    std::size_t history_max = 0;  ///< 0 = uncapped
    std::size_t min_history = 20;

    double resolved_eta() const { return eta ? *eta : default_eta(gammas.size(), window); }
    double resolved_sigma() const { return sigma ? *sigma : default_sigma(window); }
    void validate() const;
};

/// One evaluated timestep, the unit consumed by the metrics module.
struct StepRecord {
    long t = 0;
    double alpha_bar = 0.0;
    double q = 0.0;
    bool covered = false;
    double volume = 0.0;
    bool vacuous = false;  ///< q == +inf
    std::vector<double> expert_weights;
    int theta_version = 0;
};

/// History reweighting: omega_t proportional to
/// sum_i w_i (1 - gamma_i)^(now - t + 1), normalized over the buffer. Every
/// gamma must be below 1.
std::vector<double> history_weights(const ExpertBank& bank, long now,
                                    std::span<const long> timestamps);

/// Score refit pipeline: residuals -> weighted KDE high-density samples ->
/// QuickHull -> facet representation. Throws DegenerateInput when the
/// residual cloud is collinear or has no planar extent, and InvalidInput
/// below the entry floor.
PolytopeScore optimize_score(std::span<const HistoryEntry> history,
                             std::span<const double> weights, double alpha,
                             const McKdeConfig& config, std::uint64_t seed,
                             std::size_t min_entries = 20);

struct ReplayResult {
    ExpertBank bank;
    RollingWindow window;
};

/// Counterfactual replay: re-scores the given entries under `theta`,
/// rebuilds the rolling window from them, then runs the DtACI update
/// sequence over the re-scored entries against that window starting from
/// the freshly initialized bank. Emits no step records.
ReplayResult replay(const PolytopeScore& theta, std::span<const HistoryEntry> entries,
                    ExpertBank fresh_bank, std::size_t window_capacity);

struct RunResult {
    std::vector<StepRecord> records;
    std::uint64_t stream_checksum = 0;
    int theta_versions = 1;  ///< number of score functions used (initial + refits)
};

/// Full online protocol: calibrate theta_0 and the score window on the
/// stream prefix, then per step emit a region at the (1 - alpha_bar)
/// quantile, record coverage/volume, and update the expert bank; every
/// adapt_interval steps refit the score via the reweighted history, re-score
/// the window, and (optionally) replay.
RunResult run(envs::Stream& stream, const AdaptncConfig& config, std::uint64_t seed);

}  // namespace adaptnc
