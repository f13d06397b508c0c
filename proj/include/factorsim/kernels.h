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

#ifndef FACTORSIM_KERNELS_H
#define FACTORSIM_KERNELS_H

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace fsim {

using Amp = std::complex<double>;

/// Dense operations on the active array. Axis `pos` is bit `pos` of the amplitude index, and the
/// array holds exactly 2^k amplitudes.
///
/// `serial` is the reference implementation, `omp` the parallel one. The unqualified functions
/// dispatch to `omp` for large arrays outside an existing parallel region.
namespace kernels {

#define FSIM_KERNEL_DECLS                                                                  \
    void expand(std::vector<Amp> &a);                                                      \
    void rot_z(std::vector<Amp> &a, uint32_t pos, double angle);                           \
    void h(std::vector<Amp> &a, uint32_t pos);                                             \
    void s(std::vector<Amp> &a, uint32_t pos, bool dagger);                                \
    void cx(std::vector<Amp> &a, uint32_t control, uint32_t target);                       \
    void cz(std::vector<Amp> &a, uint32_t p, uint32_t q);                                  \
    double prob_one(const std::vector<Amp> &a, uint32_t pos);                              \
    void collapse(std::vector<Amp> &a, uint32_t pos, bool bit, double prob, std::vector<Amp> &scratch);

namespace serial {
FSIM_KERNEL_DECLS
}
namespace omp {
FSIM_KERNEL_DECLS
}
FSIM_KERNEL_DECLS

#undef FSIM_KERNEL_DECLS

/// Arrays with more than 2^kParallelThreshold amplitudes use the parallel kernels.
inline constexpr uint32_t kParallelThreshold = 18;

/// Plain complex product. std::complex's operator* handles inf/nan through a library call.
inline Amp cmul(Amp a, Amp b) {
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

}  // namespace kernels
}  // namespace fsim

#endif
