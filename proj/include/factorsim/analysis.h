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

#ifndef FACTORSIM_ANALYSIS_H
#define FACTORSIM_ANALYSIS_H

#include <cstdint>
#include <utility>
#include <vector>

namespace fsim {

struct RateEstimate {
    uint64_t events = 0;
    uint64_t trials = 0;
    double rate = 0;
    /// Weighted event mass and total weight; equal to events and trials for unweighted data.
    double weighted_events = 0;
    double weighted_trials = 0;
};

RateEstimate estimate_rate(uint64_t events, uint64_t trials);
/// Ratio estimator over weighted shots: sum of weights of failing shots over the sum of all weights.
RateEstimate estimate_weighted_rate(const std::vector<std::pair<double, bool>> &weighted_events);

/// Combines per-stratum failure rates f_w into sum_w Pr[W = w] f_w.
double stratified_rate(const std::vector<double> &stratum_weights, const std::vector<double> &stratum_rates);

struct RatioInterval {
    double median = 0;
    double lo = 0;
    double hi = 0;
    uint64_t mc_samples = 0;
};

/// Posterior of p1 / p2 with independent Jeffreys-prior binomial posteriors Beta(k + 1/2, n - k + 1/2).
/// Reports the median and the 2.5 / 97.5 percentiles of the Monte Carlo ratio draws.
RatioInterval ratio_credible_interval(uint64_t k1, uint64_t n1, uint64_t k2, uint64_t n2,
                                      uint64_t samples = 100000, uint64_t seed = 0);

/// Lower bound 1/2 + y / sqrt(2) on the T-state fidelity from the logical Y expectation.
double t_fidelity_bound(double y_expect);

/// Fidelity 1/2 + (x + y) / (2 sqrt(2)) to the ideal T state from both expectations.
double t_fidelity(double x_expect, double y_expect);

/// Expectations of X and Y after a Pauli channel with the given error probabilities.
std::pair<double, double> attenuation_model(double px, double py, double pz, double ideal_x, double ideal_y);

}  // namespace fsim

#endif
