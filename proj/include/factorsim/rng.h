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

#ifndef FACTORSIM_RNG_H
#define FACTORSIM_RNG_H

#include <cmath>
#include <cstdint>

namespace fsim {

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Counter-based stream: draw c of shot s under seed is a pure function of (seed, s, c), so
/// results do not depend on how shots are distributed over workers.
class ShotRng {
   public:
    ShotRng(uint64_t seed, uint64_t shot) : key_(splitmix64(splitmix64(seed) ^ splitmix64(~shot))) {
    }

    uint64_t next() {
        return splitmix64(key_ ^ splitmix64(counter_++));
    }
    /// Uniform in the open interval (0, 1).
    double uniform() {
        return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
    }
    double exponential() {
        return -std::log(uniform());
    }
    bool coin() {
        return next() >> 63;
    }
    uint64_t counter() const {
        return counter_;
    }

   private:
    uint64_t key_;
    uint64_t counter_ = 0;
};

}  // namespace fsim

#endif
