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

#include <cmath>

#include "factorsim/kernels.h"

namespace fsim::kernels::serial {

void expand(std::vector<Amp> &a) {
    size_t n = a.size();
    a.resize(2 * n);
    const double r = std::sqrt(0.5);
    for (size_t i = 0; i < n; i++) {
        a[i] *= r;
        a[i + n] = a[i];
    }
}

// Pair kernels walk blocks of 2*bit amplitudes; index i has the axis bit clear, i + bit has it set.

void rot_z(std::vector<Amp> &a, uint32_t pos, double angle) {
    const Amp lo = std::polar(1.0, -angle);
    const Amp hi = std::polar(1.0, angle);
    const size_t bit = size_t{1} << pos;
    const size_t n = a.size();
    for (size_t base = 0; base < n; base += 2 * bit) {
        for (size_t i = base; i < base + bit; i++) {
            a[i] = cmul(a[i], lo);
            a[i + bit] = cmul(a[i + bit], hi);
        }
    }
}

void h(std::vector<Amp> &a, uint32_t pos) {
    const double r = std::sqrt(0.5);
    const size_t bit = size_t{1} << pos;
    const size_t n = a.size();
    for (size_t base = 0; base < n; base += 2 * bit) {
        for (size_t i = base; i < base + bit; i++) {
            Amp u = a[i];
            Amp v = a[i + bit];
            a[i] = (u + v) * r;
            a[i + bit] = (u - v) * r;
        }
    }
}

void s(std::vector<Amp> &a, uint32_t pos, bool dagger) {
    const double sign = dagger ? -1 : 1;
    const size_t bit = size_t{1} << pos;
    const size_t n = a.size();
    for (size_t base = 0; base < n; base += 2 * bit) {
        for (size_t i = base + bit; i < base + 2 * bit; i++) {
            a[i] = {-sign * a[i].imag(), sign * a[i].real()};
        }
    }
}

void cx(std::vector<Amp> &a, uint32_t control, uint32_t target) {
    const size_t cb = size_t{1} << control;
    const size_t tb = size_t{1} << target;
    const size_t n = a.size();
    for (size_t base = 0; base < n; base += 2 * tb) {
        for (size_t i = base; i < base + tb; i++) {
            if (i & cb) {
                std::swap(a[i], a[i + tb]);
            }
        }
    }
}

void cz(std::vector<Amp> &a, uint32_t p, uint32_t q) {
    const size_t mask = (size_t{1} << p) | (size_t{1} << q);
    const size_t bit = size_t{1} << q;
    const size_t n = a.size();
    for (size_t base = 0; base < n; base += 2 * bit) {
        for (size_t i = base + bit; i < base + 2 * bit; i++) {
            if ((i & mask) == mask) {
                a[i] = -a[i];
            }
        }
    }
}

double prob_one(const std::vector<Amp> &a, uint32_t pos) {
    const size_t bit = size_t{1} << pos;
    const size_t n = a.size();
    double p = 0;
    for (size_t base = 0; base < n; base += 2 * bit) {
        for (size_t i = base + bit; i < base + 2 * bit; i++) {
            p += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
        }
    }
    return p;
}

void collapse(std::vector<Amp> &a, uint32_t pos, bool bit, double prob, std::vector<Amp> &) {
    // Source index of j is j with `bit` inserted at `pos`, never below j, so a forward pass is safe.
    const size_t half = a.size() / 2;
    const size_t low = (size_t{1} << pos) - 1;
    const size_t b = static_cast<size_t>(bit) << pos;
    const double scale = 1.0 / std::sqrt(prob);
    for (size_t j = 0; j < half; j++) {
        size_t src = ((j & ~low) << 1) | b | (j & low);
        a[j] = a[src] * scale;
    }
    a.resize(half);
}

}  // namespace fsim::kernels::serial
