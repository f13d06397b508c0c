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

#include "factorsim/noise_sampler.h"

#include <algorithm>
#include <stdexcept>

namespace fsim {

void hazard_sample(const NoiseTable &table, uint32_t begin, uint32_t end, ShotRng &rng,
                   std::vector<uint32_t> &fired) {
    size_t first = fired.size();
    auto cbegin = std::lower_bound(table.certain_sites.begin(), table.certain_sites.end(), begin);
    auto cend = std::lower_bound(cbegin, table.certain_sites.end(), end);
    bool any_certain = cbegin != cend;

    const auto &h = table.cumulative_hazard;
    double limit = h[end];
    double cur = h[begin];
    while (true) {
        cur += rng.exponential();
        if (cur >= limit) {
            break;
        }
        // First site j with h[j + 1] > cur.
        auto it = std::upper_bound(h.begin() + begin + 1, h.begin() + end + 1, cur);
        uint32_t j = static_cast<uint32_t>(it - h.begin()) - 1;
        fired.push_back(j);
        cur = h[j + 1];
    }
    if (any_certain) {
        fired.insert(fired.end(), cbegin, cend);
        std::inplace_merge(fired.begin() + first, fired.end() - (cend - cbegin), fired.end());
    }
}

uint32_t sample_case(const NoiseTable &table, uint32_t site, ShotRng &rng) {
    uint32_t lo = table.case_begin[site];
    uint32_t hi = table.case_begin[site + 1];
    if (hi - lo == 1) {
        return 0;
    }
    double u = rng.uniform();
    auto it = std::lower_bound(table.case_cdf.begin() + lo, table.case_cdf.begin() + hi - 1, u);
    return static_cast<uint32_t>(it - (table.case_cdf.begin() + lo));
}

std::vector<double> poisson_binomial(const std::vector<double> &probs) {
    std::vector<double> pmf(probs.size() + 1, 0.0);
    pmf[0] = 1;
    for (size_t i = 0; i < probs.size(); i++) {
        double p = probs[i];
        for (size_t m = i + 1; m > 0; m--) {
            pmf[m] = pmf[m] * (1 - p) + pmf[m - 1] * p;
        }
        pmf[0] *= 1 - p;
    }
    return pmf;
}

StratumSampler::StratumSampler(const std::vector<double> &probs, uint32_t w) : w_(w), probs_(probs) {
    size_t e = probs.size();
    if (w > e) {
        throw std::invalid_argument("fault count exceeds the number of noise sites");
    }
    size_t width = w + 1;
    suffix_.assign((e + 1) * width, 0.0);
    suffix_[e * width] = 1;
    for (size_t i = e; i-- > 0;) {
        double p = probs[i];
        for (size_t m = 0; m <= w; m++) {
            double v = (1 - p) * suffix_[(i + 1) * width + m];
            if (m > 0) {
                v += p * suffix_[(i + 1) * width + m - 1];
            }
            suffix_[i * width + m] = v;
        }
    }
    weight_ = suffix_[w];
    if (!(weight_ > 0)) {
        throw std::invalid_argument("fault count has zero probability");
    }
}

void StratumSampler::draw(ShotRng &rng, std::vector<uint32_t> &fired) const {
    fired.clear();
    size_t width = w_ + 1;
    uint32_t m = w_;
    for (size_t i = 0; i < probs_.size() && m > 0; i++) {
        double total = suffix_[i * width + m];
        double take = probs_[i] * suffix_[(i + 1) * width + m - 1];
        if (take >= total || rng.uniform() * total < take) {
            fired.push_back(static_cast<uint32_t>(i));
            m--;
        }
    }
}

}  // namespace fsim
