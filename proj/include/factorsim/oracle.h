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

#ifndef FACTORSIM_ORACLE_H
#define FACTORSIM_ORACLE_H

#include <cstdint>
#include <map>
#include <vector>

#include "factorsim/bytecode.h"
#include "factorsim/circuit.h"
#include "factorsim/kernels.h"
#include "factorsim/svm.h"

namespace fsim {

/// Largest qubit count the dense oracle accepts.
inline constexpr size_t kOracleMaxQubits = 14;

/// Plain state vector; qubit q is bit q of the amplitude index.
struct DenseState {
    size_t num_qubits = 0;
    std::vector<Amp> amplitudes;

    /// |0...0>. Throws std::invalid_argument above kOracleMaxQubits.
    static DenseState zero(size_t num_qubits);
};

void apply_gate(DenseState &state, Gate g, size_t a, size_t b = 0);
/// Multiplies by the Pauli, including its phase.
void apply_pauli(DenseState &state, const PauliString &p);
/// exp(-i angle P) for Hermitian P.
void apply_rotation(DenseState &state, const PauliString &p, double angle);
double expectation(const DenseState &state, const PauliString &p);
/// Projective measurement of a Hermitian Pauli. Returns 0 for the +1 eigenvalue. `forced` is -1 to
/// sample with `rng`, otherwise the outcome to take; a forced outcome of probability below 1e-12 throws.
bool measure_pauli(DenseState &state, const PauliString &p, int forced, ShotRng &rng);

struct OracleRun {
    DenseState state;
    /// Visible measurements followed by hidden reset records, as in RecordLayout.
    std::vector<uint8_t> records;
    std::vector<uint8_t> detectors;
    std::vector<uint8_t> observables;
    bool accepted = true;
};

/// Gate-by-gate evolution of the circuit. Noise only acts where `faults` (site -> case index)
/// says so. Outcomes are forced where `forced` has a 0/1 entry and sampled from `seed` otherwise.
OracleRun dense_run(const Circuit &circuit, const std::map<uint32_t, uint32_t> *faults = nullptr,
                    const std::vector<int> *forced = nullptr, uint64_t seed = 0);

/// The state gamma * U_C * F * (|active> ⊗ |0>) held by a finished shot, as a dense vector.
DenseState expand_factored(const BytecodeProgram &prog, const ShotState &state);

/// U|0...0> for the Clifford with this tableau, up to a global phase.
DenseState clifford_zero_state(const Tableau &t);

/// Dense matrix of the Clifford with this tableau (column x is U|x>), fixed up to one global phase.
std::vector<std::vector<Amp>> synthesize_unitary(const Tableau &t);

/// |<a|b>|^2. Throws std::invalid_argument on a size mismatch.
double fidelity(const DenseState &a, const DenseState &b);

}  // namespace fsim

#endif
