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

#include <omp.h>

#include <cmath>

#include "factorsim/kernels.h"

namespace fsim::kernels {

namespace omp {

void expand(std::vector<Amp> &a) {
    const int64_t n = static_cast<int64_t>(a.size());
    a.resize(2 * a.size());
    const double r = std::sqrt(0.5);
#pragma omp parallel for schedule(static)
    for (int64_t i = 0; i < n; i++) {
        a[i] *= r;
        a[i + n] = a[i];
    }
}

void rot_z(std::vector<Amp> &a, uint32_t pos, double angle) {
    const Amp lo = std::polar(1.0, -angle);
    const Amp hi = std::polar(1.0, angle);
    const int64_t bit = int64_t{1} << pos;
    const int64_t n = static_cast<int64_t>(a.size());
#pragma omp parallel for schedule(static)
    for (int64_t i = 0; i < n; i++) {
        a[i] = cmul(a[i], (i & bit) ? hi : lo);
    }
}

// Pair loops run over the half-size index space with the axis bit inserted.
inline int64_t insert_zero(int64_t j, uint32_t pos) {
    const int64_t low = (int64_t{1} << pos) - 1;
    return ((j & ~low) << 1) | (j & low);
}

void h(std::vector<Amp> &a, uint32_t pos) {
    const double r = std::sqrt(0.5);
    const int64_t bit = int64_t{1} << pos;
    const int64_t half = static_cast<int64_t>(a.size() / 2);
#pragma omp parallel for schedule(static)
    for (int64_t j = 0; j < half; j++) {
        int64_t i = insert_zero(j, pos);
        Amp u = a[i];
        Amp v = a[i | bit];
        a[i] = (u + v) * r;
        a[i | bit] = (u - v) * r;
    }
}

void s(std::vector<Amp> &a, uint32_t pos, bool dagger) {
    const Amp ph = dagger ? Amp(0, -1) : Amp(0, 1);
    const int64_t bit = int64_t{1} << pos;
    const int64_t half = static_cast<int64_t>(a.size() / 2);
#pragma omp parallel for schedule(static)
    for (int64_t j = 0; j < half; j++) {
        Amp &x = a[insert_zero(j, pos) | bit];
        x = cmul(x, ph);
    }
}

void cx(std::vector<Amp> &a, uint32_t control, uint32_t target) {
    const int64_t cb = int64_t{1} << control;
    const int64_t tb = int64_t{1} << target;
    const int64_t half = static_cast<int64_t>(a.size() / 2);
#pragma omp parallel for schedule(static)
    for (int64_t j = 0; j < half; j++) {
        int64_t i = insert_zero(j, target);
        if (i & cb) {
            std::swap(a[i], a[i | tb]);
        }
    }
}

void cz(std::vector<Amp> &a, uint32_t p, uint32_t q) {
    const int64_t mask = (int64_t{1} << p) | (int64_t{1} << q);
    const int64_t n = static_cast<int64_t>(a.size());
#pragma omp parallel for schedule(static)
    for (int64_t i = 0; i < n; i++) {
        if ((i & mask) == mask) {
            a[i] = -a[i];
        }
    }
}

double prob_one(const std::vector<Amp> &a, uint32_t pos) {
    const int64_t bit = int64_t{1} << pos;
    const int64_t half = static_cast<int64_t>(a.size() / 2);
    double p = 0;
#pragma omp parallel for schedule(static) reduction(+ : p)
    for (int64_t j = 0; j < half; j++) {
        p += std::norm(a[insert_zero(j, pos) | bit]);
    }
    return p;
}

void collapse(std::vector<Amp> &a, uint32_t pos, bool bit, double prob, std::vector<Amp> &scratch) {
    const int64_t half = static_cast<int64_t>(a.size() / 2);
    const int64_t b = static_cast<int64_t>(bit) << pos;
    const double scale = 1.0 / std::sqrt(prob);
    scratch.resize(half);
#pragma omp parallel for schedule(static)
    for (int64_t j = 0; j < half; j++) {
        scratch[j] = a[insert_zero(j, pos) | b] * scale;
    }
    a.swap(scratch);
}

}  // namespace omp

namespace {

bool use_parallel(const std::vector<Amp> &a) {
    return a.size() > (size_t{1} << kParallelThreshold) && !omp_in_parallel();
}

}  // namespace

void expand(std::vector<Amp> &a) {
    use_parallel(a) ? omp::expand(a) : serial::expand(a);
}
void rot_z(std::vector<Amp> &a, uint32_t pos, double angle) {
    use_parallel(a) ? omp::rot_z(a, pos, angle) : serial::rot_z(a, pos, angle);
}
void h(std::vector<Amp> &a, uint32_t pos) {
    use_parallel(a) ? omp::h(a, pos) : serial::h(a, pos);
}
void s(std::vector<Amp> &a, uint32_t pos, bool dagger) {
    use_parallel(a) ? omp::s(a, pos, dagger) : serial::s(a, pos, dagger);
}
void cx(std::vector<Amp> &a, uint32_t control, uint32_t target) {
    use_parallel(a) ? omp::cx(a, control, target) : serial::cx(a, control, target);
}
void cz(std::vector<Amp> &a, uint32_t p, uint32_t q) {
    use_parallel(a) ? omp::cz(a, p, q) : serial::cz(a, p, q);
}
double prob_one(const std::vector<Amp> &a, uint32_t pos) {
    return use_parallel(a) ? omp::prob_one(a, pos) : serial::prob_one(a, pos);
}
void collapse(std::vector<Amp> &a, uint32_t pos, bool bit, double prob, std::vector<Amp> &scratch) {
    use_parallel(a) ? omp::collapse(a, pos, bit, prob, scratch) : serial::collapse(a, pos, bit, prob, scratch);
}

}  // namespace fsim::kernels
