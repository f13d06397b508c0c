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

#ifndef FACTORSIM_SVM_H
#define FACTORSIM_SVM_H

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "factorsim/bytecode.h"
#include "factorsim/kernels.h"
#include "factorsim/noise_sampler.h"
#include "factorsim/rng.h"

namespace fsim {

/// Sampled branches with probability below this are replaced by the other branch.
inline constexpr double kBranchFloor = 1e-12;

struct ShotRecord {
    std::vector<uint8_t> measurements;
    std::vector<uint8_t> detectors;
    std::vector<uint8_t> observables;
    bool accepted = true;
    double weight = 1;

    bool operator==(const ShotRecord &) const = default;
};

/// Per-worker storage for one shot, allocated once per program and reused.
///
/// The represented state is gamma * U_C * F * (|active> ⊗ |0...0>), where F = X^frame_x Z^frame_z
/// acts on virtual qubits and array axis i holds the virtual qubit axis_qubit[i].
struct ShotState {
    explicit ShotState(const BytecodeProgram &prog);
    void reset();

    std::vector<Amp> active;
    std::vector<Amp> scratch;
    std::vector<uint64_t> frame_x;
    std::vector<uint64_t> frame_z;
    Amp gamma = 1;
    uint32_t k = 0;
    std::vector<uint8_t> records;
    std::vector<uint8_t> detectors;
    std::vector<uint8_t> observables;
    bool accepted = true;
    std::vector<uint32_t> fired;
    /// Index of the instruction the shot stopped at if it was rejected.
    size_t executed = 0;
};

/// Test hooks that replace random choices by fixed ones.
struct ShotControls {
    /// When set, the sampler is bypassed and exactly these (site -> case index) faults occur.
    const std::map<uint32_t, uint32_t> *forced_faults = nullptr;
    /// Per record slot: -1 samples, 0 or 1 forces the outcome. Impossible outcomes throw.
    const std::vector<int> *forced_outcomes = nullptr;
    /// When set, noise sites outside this sorted list never fire and listed sites always do.
    const std::vector<uint32_t> *stratum_sites = nullptr;
    /// When set, receives the active dimension after every executed instruction.
    std::vector<uint32_t> *k_trace = nullptr;
};

/// Runs one shot. `state` must have been built for `prog`; it is reset first.
void run_shot(const BytecodeProgram &prog, ShotState &state, ShotRng &rng, const ShotControls &controls = {});

/// Copies the visible outputs of the last shot.
ShotRecord extract_record(const BytecodeProgram &prog, const ShotState &state);

struct SampleOptions {
    int workers = 1;
    /// Importance sampling: condition every shot on exactly this many faults.
    std::optional<uint32_t> stratum;
};

/// Calls `sink(shot_index, record)` for every shot in increasing index order. Shot i uses the RNG
/// stream (seed, i), so output does not depend on the worker count.
void sample(const BytecodeProgram &prog, uint64_t shots, uint64_t seed, const SampleOptions &options,
            const std::function<void(uint64_t, const ShotRecord &)> &sink);

std::vector<ShotRecord> sample_records(const BytecodeProgram &prog, uint64_t shots, uint64_t seed,
                                       const SampleOptions &options = {});

/// Per-site total fault probabilities in site order.
std::vector<double> site_probabilities(const BytecodeProgram &prog);

/// <psi| P |psi> for a Hermitian physical Pauli at the end of the program, without collapsing.
double expectation_probe(const BytecodeProgram &prog, const ShotState &state, const PauliString &observable);

}  // namespace fsim

#endif
