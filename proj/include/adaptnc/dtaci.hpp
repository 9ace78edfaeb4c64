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

#include <span>
#include <vector>

#include "adaptnc/core.hpp"

namespace adaptnc {

/// Pinball loss l(beta, theta) = alpha (beta - theta) - min(0, beta - theta).
double pinball_loss(double beta, double theta, double alpha);

/// eta = sqrt((log(2 k W) + 1) / W): the regret-optimal learning rate with
/// the loss-energy term bounded crudely by the window length.
double default_eta(std::size_t experts, std::size_t window);

/// sigma = 1 / (2 W).
double default_sigma(std::size_t window);

/// Bank of ACI experts combined by exponential weighting on pinball loss.
/// Expert i tracks a miscoverage level alpha_i with learning rate gamma_i;
/// the bank's output is the probability-weighted average level.
class ExpertBank {
public:
    /// Gammas must be strictly increasing, positive, with successive ratios
    /// at most 2. Experts start at alpha_i = target_alpha, weights uniform.
    ExpertBank(double target_alpha, std::vector<double> gammas, double eta,
               double sigma);

    /// Resumes from explicit expert state (weights are normalized).
    static ExpertBank with_state(double target_alpha, std::vector<double> gammas,
                                 double eta, double sigma, std::vector<double> alphas,
                                 std::vector<double> weights);

    std::size_t size() const { return gammas_.size(); }
    double target_alpha() const { return target_alpha_; }
    double eta() const { return eta_; }
    double sigma() const { return sigma_; }
    const std::vector<double>& gammas() const { return gammas_; }
    const std::vector<double>& alphas() const { return alphas_; }
    /// Normalized weights; these equal the mixture probabilities p_i.
    const std::vector<double>& weights() const { return weights_; }

    /// One step: exponential reweighting by exp(-eta * loss), uniform mixing
    /// with sigma, renormalization, then the per-expert quantile update
    /// alpha_i += gamma_i (target_alpha - err_i). The aggregate error is the
    /// coverage indicator of the emitted region; it does not enter the
    /// update and is accepted for protocol parity.
    void update(double beta_t, std::span<const int> expert_errs, int aggregate_err);

private:
    ExpertBank() = default;
    void validate() const;

    double target_alpha_ = 0.1;
    double eta_ = 0.0;
    double sigma_ = 0.0;
    std::vector<double> gammas_;
    std::vector<double> alphas_;
    std::vector<double> weights_;
};

/// Probability-weighted miscoverage estimate alpha_bar = sum_i p_i alpha_i.
double aggregate_alpha(const ExpertBank& bank);

struct ExpertErrs {
    std::vector<int> per_expert;
    int aggregate = 0;
};

/// Error indicators against the rolling score window: expert i misses when
/// s_t exceeds the (1 - alpha_i) empirical quantile; the aggregate uses the
/// (1 - alpha_bar) quantile. Saturated levels (outside (0,1)) yield the
/// trivial indicators even on an empty window.
ExpertErrs expert_errs(const ExpertBank& bank, const RollingWindow& window,
                       double s_t);

}  // namespace adaptnc
