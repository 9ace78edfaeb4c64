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

#include "adaptnc/dtaci.hpp"

#include <algorithm>
#include <cmath>

namespace adaptnc {

double pinball_loss(double beta, double theta, double alpha) {
    const double diff = beta - theta;
    return alpha * diff - std::min(0.0, diff);
}

double default_eta(std::size_t experts, std::size_t window) {
    const double w = static_cast<double>(window);
    return std::sqrt((std::log(2.0 * static_cast<double>(experts) * w) + 1.0) / w);
}

double default_sigma(std::size_t window) {
    return 1.0 / (2.0 * static_cast<double>(window));
}

ExpertBank::ExpertBank(double target_alpha, std::vector<double> gammas, double eta,
                       double sigma)
    : target_alpha_(target_alpha),
      eta_(eta),
      sigma_(sigma),
      gammas_(std::move(gammas)),
      alphas_(gammas_.size(), target_alpha),
      weights_(gammas_.size(), gammas_.empty() ? 0.0 : 1.0 / gammas_.size()) {
    validate();
}

ExpertBank ExpertBank::with_state(double target_alpha, std::vector<double> gammas,
                                  double eta, double sigma, std::vector<double> alphas,
                                  std::vector<double> weights) {
    ExpertBank bank;
    bank.target_alpha_ = target_alpha;
    bank.eta_ = eta;
    bank.sigma_ = sigma;
    bank.gammas_ = std::move(gammas);
    bank.alphas_ = std::move(alphas);
    bank.weights_ = std::move(weights);
    if (bank.alphas_.size() != bank.gammas_.size() ||
        bank.weights_.size() != bank.gammas_.size())
        throw InvalidInput("ExpertBank: state size mismatch");
    double sum = 0.0;
    for (double w : bank.weights_) {
        if (!(w > 0.0)) throw InvalidInput("ExpertBank: weights must be positive");
        sum += w;
    }
    for (double& w : bank.weights_) w /= sum;
    bank.validate();
    return bank;
}

void ExpertBank::validate() const {
    if (gammas_.empty()) throw InvalidInput("ExpertBank: need at least one expert");
    if (!(target_alpha_ > 0.0 && target_alpha_ < 1.0))
        throw InvalidInput("ExpertBank: target_alpha must lie in (0,1)");
    if (!(eta_ >= 0.0)) throw InvalidInput("ExpertBank: eta must be nonnegative");
    if (!(sigma_ >= 0.0 && sigma_ < 1.0))
        throw InvalidInput("ExpertBank: sigma must lie in [0,1)");
    for (std::size_t i = 0; i < gammas_.size(); ++i) {
        if (!(gammas_[i] >= 0.0))
            throw InvalidInput("ExpertBank: gammas must be nonnegative");
        if (i > 0) {
            if (!(gammas_[i] > gammas_[i - 1]))
                throw InvalidInput("ExpertBank: gammas must be strictly increasing");
            if (gammas_[i - 1] > 0.0 && gammas_[i] / gammas_[i - 1] > 2.0 + 1e-12)
                throw InvalidInput("ExpertBank: successive gamma ratio exceeds 2");
        }
    }
}

void ExpertBank::update(double beta_t, std::span<const int> expert_errs,
                        int /*aggregate_err*/) {
    const std::size_t k = size();
    if (expert_errs.size() != k)
        throw InvalidInput("ExpertBank::update: error vector size mismatch");

    double mixed_sum = 0.0;
    std::vector<double> reweighted(k);
    for (std::size_t i = 0; i < k; ++i) {
        reweighted[i] =
            weights_[i] * std::exp(-eta_ * pinball_loss(beta_t, alphas_[i], target_alpha_));
        mixed_sum += reweighted[i];
    }
    double total = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        weights_[i] = (1.0 - sigma_) * reweighted[i] + mixed_sum * sigma_ / k;
        total += weights_[i];
    }
    if (!(total > 0.0)) {
        // All weights underflowed; restart from uniform rather than emit NaN.
        for (double& w : weights_) w = 1.0 / k;
    } else {
        for (double& w : weights_) w /= total;
    }
    for (std::size_t i = 0; i < k; ++i)
        alphas_[i] += gammas_[i] * (target_alpha_ - expert_errs[i]);
}

double aggregate_alpha(const ExpertBank& bank) {
    double acc = 0.0;
    for (std::size_t i = 0; i < bank.size(); ++i)
        acc += bank.weights()[i] * bank.alphas()[i];
    return acc;
}

ExpertErrs expert_errs(const ExpertBank& bank, const RollingWindow& window,
                       double s_t) {
    ExpertErrs errs;
    errs.per_expert.resize(bank.size());
    for (std::size_t i = 0; i < bank.size(); ++i) {
        const double threshold = empirical_quantile(window, 1.0 - bank.alphas()[i]);
        errs.per_expert[i] = s_t > threshold ? 1 : 0;
    }
    const double threshold = empirical_quantile(window, 1.0 - aggregate_alpha(bank));
    errs.aggregate = s_t > threshold ? 1 : 0;
    return errs;
}

}  // namespace adaptnc
