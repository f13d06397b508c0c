// Copyright 2026 The factorsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "factorsim/analysis.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "factorsim/rng.h"

namespace fsim {

RateEstimate estimate_rate(uint64_t events, uint64_t trials) {
    if (events > trials) {
        throw std::invalid_argument("more events than trials");
    }
    RateEstimate r;
    r.events = events;
    r.trials = trials;
    r.rate = trials ? static_cast<double>(events) / static_cast<double>(trials) : 0;
    r.weighted_events = static_cast<double>(events);
    r.weighted_trials = static_cast<double>(trials);
    return r;
}

RateEstimate estimate_weighted_rate(const std::vector<std::pair<double, bool>> &weighted_events) {
    RateEstimate r;
    for (const auto &[w, failed] : weighted_events) {
        r.trials++;
        r.weighted_trials += w;
        if (failed) {
            r.events++;
            r.weighted_events += w;
        }
    }
    r.rate = r.weighted_trials > 0 ? r.weighted_events / r.weighted_trials : 0;
    return r;
}

double stratified_rate(const std::vector<double> &stratum_weights, const std::vector<double> &stratum_rates) {
    if (stratum_weights.size() != stratum_rates.size()) {
        throw std::invalid_argument("stratum weight and rate counts differ");
    }
    double total = 0;
    for (size_t i = 0; i < stratum_weights.size(); i++) {
        total += stratum_weights[i] * stratum_rates[i];
    }
    return total;
}

namespace {

// Adapts the counter-based stream to the standard distribution interface.
struct UrbgAdapter {
    using result_type = uint64_t;
    ShotRng &rng;
    static constexpr result_type min() {
        return 0;
    }
    static constexpr result_type max() {
        return ~result_type{0};
    }
    result_type operator()() {
        return rng.next();
    }
};

double beta_draw(std::gamma_distribution<double> &a, std::gamma_distribution<double> &b, UrbgAdapter &g) {
    double x = a(g);
    double y = b(g);
    return x / (x + y);
}

double nearest_rank(const std::vector<double> &sorted, double q) {
    size_t rank = static_cast<size_t>(std::ceil(q * static_cast<double>(sorted.size())));
    return sorted[std::clamp<size_t>(rank, 1, sorted.size()) - 1];
}

}  // namespace

RatioInterval ratio_credible_interval(uint64_t k1, uint64_t n1, uint64_t k2, uint64_t n2, uint64_t samples,
                                      uint64_t seed) {
    if (n1 == 0 || n2 == 0 || k1 > n1 || k2 > n2) {
        throw std::invalid_argument("invalid binomial counts");
    }
    if (samples < 10000) {
        throw std::invalid_argument("at least 10^4 Monte Carlo samples are required");
    }
    ShotRng rng(seed, 0);
    UrbgAdapter g{rng};
    std::gamma_distribution<double> a1(k1 + 0.5), b1(n1 - k1 + 0.5);
    std::gamma_distribution<double> a2(k2 + 0.5), b2(n2 - k2 + 0.5);
    std::vector<double> ratios;
    ratios.reserve(samples);
    while (ratios.size() < samples) {
        double p1 = beta_draw(a1, b1, g);
        double p2 = beta_draw(a2, b2, g);
        if (p2 < 1e-300) {
            continue;
        }
        ratios.push_back(p1 / p2);
    }
    std::sort(ratios.begin(), ratios.end());
    RatioInterval r;
    r.median = nearest_rank(ratios, 0.5);
    r.lo = nearest_rank(ratios, 0.025);
    r.hi = nearest_rank(ratios, 0.975);
    r.mc_samples = samples;
    return r;
}

double t_fidelity_bound(double y_expect) {
    if (!(std::abs(y_expect) <= 1)) {
        throw std::invalid_argument("expectation value outside [-1, 1]");
    }
    return 0.5 + y_expect / std::sqrt(2.0);
}

double t_fidelity(double x_expect, double y_expect) {
    return 0.5 + (x_expect + y_expect) / (2 * std::sqrt(2.0));
}

std::pair<double, double> attenuation_model(double px, double py, double pz, double ideal_x, double ideal_y) {
    if (px < 0 || py < 0 || pz < 0 || px + py + pz > 1 + 1e-12) {
        throw std::invalid_argument("invalid Pauli channel probabilities");
    }
    return {(1 - 2 * py - 2 * pz) * ideal_x, (1 - 2 * px - 2 * pz) * ideal_y};
}

}  // namespace fsim
