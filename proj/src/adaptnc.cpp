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

#include "adaptnc/adaptnc.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iostream>

#include "adaptnc/geometry.hpp"
#include "adaptnc/rng.hpp"

namespace adaptnc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t fnv1a(std::uint64_t hash, std::uint64_t word) {
    for (int i = 0; i < 8; ++i) {
        hash ^= (word >> (8 * i)) & 0xffULL;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

std::uint64_t hash_observation(std::uint64_t hash, const Observation& obs) {
    hash = fnv1a(hash, static_cast<std::uint64_t>(obs.t));
    for (double v : {obs.y.x, obs.y.y, obs.y_hat.x, obs.y_hat.y})
        hash = fnv1a(hash, std::bit_cast<std::uint64_t>(v));
    return hash;
}

// True when the residual cloud has no planar extent: every point within
// 1e-12 of the line through the two most distant anchor points.
bool residuals_degenerate(std::span<const Vec2> pts) {
    if (pts.size() < 3) return true;
    const Vec2 a = pts.front();
    Vec2 b = a;
    double best = 0.0;
    for (const Vec2& p : pts) {
        const double d = (p - a).squared_norm();
        if (d > best) {
            best = d;
            b = p;
        }
    }
    const double len = std::sqrt(best);
    if (len <= 1e-12) return true;
    for (const Vec2& p : pts)
        if (std::abs(orient(a, b, p)) / len > 1e-12) return false;
    return true;
}

RollingWindow rebuild_window(const PolytopeScore& theta,
                             std::span<const HistoryEntry> entries,
                             std::size_t capacity) {
    RollingWindow window(capacity);
    for (const auto& e : entries) window.push(score_eval(theta, e.obs.y_hat, e.obs.y));
    return window;
}

}  // namespace

void HistoryBuffer::push(HistoryEntry entry) {
    if (max_entries_ > 0 && entries_.size() == max_entries_)
        entries_.erase(entries_.begin());
    entries_.push_back(std::move(entry));
}

std::span<const HistoryEntry> HistoryBuffer::tail(std::size_t n) const {
    const std::size_t take = std::min(n, entries_.size());
    return {entries_.data() + (entries_.size() - take), take};
}

void AdaptncConfig::validate() const {
    if (!(target_alpha > 0.0 && target_alpha < 1.0))
        throw InvalidInput("target_alpha must lie in (0,1)");
    if (adapt_interval < 1) throw InvalidInput("adapt_interval must be at least 1");
    if (window < 10) throw InvalidInput("window must be at least 10");
    if (gammas.empty()) throw InvalidInput("gammas must be nonempty");
    if (calibration < std::max<std::size_t>(min_history, 2))
        throw InvalidInput("calibration must cover at least min_history observations");
    if (eta && !(*eta >= 0.0)) throw InvalidInput("eta must be nonnegative");
    if (sigma && !(*sigma >= 0.0 && *sigma < 1.0))
        throw InvalidInput("sigma must lie in [0,1)");
}

std::vector<double> history_weights(const ExpertBank& bank, long now,
                                    std::span<const long> timestamps) {
    for (double g : bank.gammas())
        if (g >= 1.0)
            throw InvalidInput("history_weights: gammas must be below 1");
    std::vector<double> weights(timestamps.size());
    double sum = 0.0;
    for (std::size_t j = 0; j < timestamps.size(); ++j) {
        const double age = static_cast<double>(now - timestamps[j]) + 1.0;
        double w = 0.0;
        for (std::size_t i = 0; i < bank.size(); ++i)
            w += bank.weights()[i] * std::pow(1.0 - bank.gammas()[i], age);
        weights[j] = w;
        sum += w;
    }
    if (sum > 0.0) {
        for (double& w : weights) w /= sum;
    } else if (!weights.empty()) {
        std::fill(weights.begin(), weights.end(), 1.0 / weights.size());
    }
    return weights;
}

PolytopeScore optimize_score(std::span<const HistoryEntry> history,
                             std::span<const double> weights, double alpha,
                             const McKdeConfig& config, std::uint64_t seed,
                             std::size_t min_entries) {
    if (history.size() < min_entries)
        throw InvalidInput("optimize_score: history below the entry floor");
    if (history.size() != weights.size())
        throw InvalidInput("optimize_score: weight vector size mismatch");

    std::vector<Vec2> residuals;
    residuals.reserve(history.size());
    for (const auto& e : history) residuals.push_back(residual(e.obs));
    if (residuals_degenerate(residuals))
        throw DegenerateInput("optimize_score: residuals are collinear");

    const HdrSample hdr = mckde_hdr(residuals, weights, alpha, config, seed);
    const Hull2D hull = quickhull(hdr.points);
    return hull_to_polytope(hull);
}

ReplayResult replay(const PolytopeScore& theta, std::span<const HistoryEntry> entries,
                    ExpertBank fresh_bank, std::size_t window_capacity) {
    // Prequential counterfactual mirroring the live loop: error indicators
    // against the window before the score enters it, beta after. The very
    // first entry has no preceding window, so its errors are evaluated on
    // the single-score window instead.
    RollingWindow window(window_capacity);
    for (const auto& e : entries) {
        const double s = score_eval(theta, e.obs.y_hat, e.obs.y);
        ExpertErrs errs;
        if (window.empty()) {
            window.push(s);
            errs = expert_errs(fresh_bank, window, s);
        } else {
            errs = expert_errs(fresh_bank, window, s);
            window.push(s);
        }
        const double beta = beta_of(window, s);
        fresh_bank.update(beta, errs.per_expert, errs.aggregate);
    }
    return {std::move(fresh_bank), std::move(window)};
}

RunResult run(envs::Stream& stream, const AdaptncConfig& config, std::uint64_t seed) {
    config.validate();
    if (stream.length() <= config.calibration)
        throw InvalidInput("run: stream shorter than the calibration prefix");

    RunResult result;
    std::uint64_t checksum = 0xcbf29ce484222325ULL;

    HistoryBuffer history(config.history_max);
    for (std::size_t i = 0; i < config.calibration; ++i) {
        Observation obs = stream.next();
        checksum = hash_observation(checksum, obs);
        history.push({std::move(obs), 0.0, 0});
    }

    const std::vector<double> uniform(history.size(), 1.0 / history.size());
    PolytopeScore theta = optimize_score(history.entries(), uniform,
                                         config.target_alpha, config.mckde,
                                         derive_seed(seed, 1), config.min_history);
    int theta_version = 0;

    RollingWindow window = rebuild_window(theta, history.tail(config.window), config.window);

    ExpertBank bank(config.target_alpha, config.gammas, config.resolved_eta(),
                    config.resolved_sigma());

    std::size_t eval_steps = 0;
    std::size_t adaptations = 0;
    while (!stream.done()) {
        Observation obs = stream.next();
        checksum = hash_observation(checksum, obs);
        const long t = obs.t;

        const double alpha_bar = aggregate_alpha(bank);
        const double q = empirical_quantile(window, 1.0 - alpha_bar);
        const double s = score_eval(theta, obs.y_hat, obs.y);
        const ExpertErrs errs = expert_errs(bank, window, s);

        window.push(s);
        history.push({std::move(obs), s, theta_version});
        const double beta = beta_of(window, s);

        StepRecord record;
        record.t = t;
        record.alpha_bar = alpha_bar;
        record.q = q;
        record.covered = s <= q;
        record.vacuous = std::isinf(q) && q > 0.0;
        record.volume = record.vacuous ? kInf : region_volume(theta, q);
        record.expert_weights = bank.weights();
        record.theta_version = theta_version;
        result.records.push_back(std::move(record));

        bank.update(beta, errs.per_expert, errs.aggregate);

        ++eval_steps;
        if (config.adapt_interval != kNeverAdapt && eval_steps % config.adapt_interval == 0 &&
            !stream.done()) {
            std::vector<long> timestamps;
            timestamps.reserve(history.size());
            for (const auto& e : history.entries()) timestamps.push_back(e.obs.t);
            const auto omega = history_weights(bank, t, timestamps);
            try {
                PolytopeScore refit = optimize_score(
                    history.entries(), omega, config.target_alpha, config.mckde,
                    derive_seed(seed, 1000 + adaptations), config.min_history);
                theta = std::move(refit);
                ++theta_version;
                if (config.replay) {
                    // Replay owns the window re-scoring: rebuild it under the
                    // new theta and rerun the expert updates from scratch so
                    // the threshold chain is consistent with the new score.
                    const auto recent = history.tail(config.window);
                    ExpertBank fresh(config.target_alpha, config.gammas,
                                     config.resolved_eta(), config.resolved_sigma());
                    ReplayResult replayed =
                        replay(theta, recent, std::move(fresh), config.window);
                    bank = std::move(replayed.bank);
                    window = std::move(replayed.window);
                }
                // Without replay the window keeps the scores as they were
                // pushed; entries scored under older thetas age out naturally
                // (the coverage-shock ablation).
            } catch (const DegenerateInput&) {
                std::cerr << "adaptnc: degenerate residuals at t=" << t
                          << "; keeping previous score function\n";
            }
            ++adaptations;
        }
    }

    result.stream_checksum = checksum;
    result.theta_versions = theta_version + 1;
    return result;
}

}  // namespace adaptnc
