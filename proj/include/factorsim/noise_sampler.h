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

#ifndef FACTORSIM_NOISE_SAMPLER_H
#define FACTORSIM_NOISE_SAMPLER_H

#include <cstdint>
#include <vector>

#include "factorsim/bytecode.h"
#include "factorsim/rng.h"

namespace fsim {

/// Appends the sites in [begin, end) that fire in one shot, in increasing order.
///
/// Certain sites always fire. Among the rest, exponential jumps along the cumulative hazard locate
/// the next firing site by binary search, so the cost tracks the number of realized faults.
void hazard_sample(const NoiseTable &table, uint32_t begin, uint32_t end, ShotRng &rng,
                   std::vector<uint32_t> &fired);

/// Picks which case of a fired site occurs, as an index into the site's case list.
uint32_t sample_case(const NoiseTable &table, uint32_t site, ShotRng &rng);

/// Exact law of the number of successes among independent Bernoulli(p_i) trials.
std::vector<double> poisson_binomial(const std::vector<double> &probs);

/// Draws fault sets conditioned on exactly w sites firing.
class StratumSampler {
   public:
    /// Throws std::invalid_argument if w exceeds the number of sites or has zero probability.
    StratumSampler(const std::vector<double> &probs, uint32_t w);

    uint32_t fault_count() const {
        return w_;
    }
    /// Pr[W = w].
    double weight() const {
        return weight_;
    }
    /// Writes the firing sites in increasing order.
    void draw(ShotRng &rng, std::vector<uint32_t> &fired) const;

   private:
    uint32_t w_;
    double weight_;
    std::vector<double> probs_;
    // suffix_[i * (w_ + 1) + m] = Pr[exactly m of sites i.. fire].
    std::vector<double> suffix_;
};

}  // namespace fsim

#endif
