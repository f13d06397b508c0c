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

#ifndef FACTORSIM_VALIDATE_H
#define FACTORSIM_VALIDATE_H

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "factorsim/bytecode.h"
#include "factorsim/circuit.h"

namespace fsim {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct RandomCircuitSpec {
    size_t num_qubits = 4;
    size_t num_ops = 30;
    size_t max_nonclifford = 6;
    bool measurements = true;
    bool resets = true;
    bool noise = true;
    bool feedback = true;
};

/// Random circuit over the supported gate set, built as text and parsed.
Circuit random_circuit(const RandomCircuitSpec &spec, uint64_t seed);

/// U U† followed by measuring every qubit, where U is a random Clifford+T word with at most
/// `nonclifford` non-Clifford gates. Noiseless output is all zeros.
Circuit random_mirror_circuit(size_t num_qubits, size_t depth, size_t nonclifford, uint64_t seed);

/// Random fault plan touching about `density` of the sites.
std::map<uint32_t, uint32_t> random_fault_plan(const Circuit &circuit, double density, uint64_t seed);

/// Compiles the circuit, runs the dense oracle with the given faults and sampled outcomes, then
/// replays those outcomes and faults through the compiled program. Passes when records, detectors
/// and observables agree and the factored state matches with fidelity >= 1 - 1e-10.
CheckResult check_oracle_equivalence(const Circuit &circuit, const std::map<uint32_t, uint32_t> &faults,
                                     uint64_t seed);

/// check_oracle_equivalence on every prefix of the flattened circuit.
CheckResult check_checkpoints(const Circuit &circuit, const std::map<uint32_t, uint32_t> &faults, uint64_t seed);

/// With noise channels removed, every shot must produce all-zero measurement records.
CheckResult check_mirror(const Circuit &circuit, uint64_t shots, uint64_t seed);

/// Every single fault (site, case), up to `limit` of them, gives matching oracle and runtime records.
CheckResult check_single_faults(const Circuit &circuit, uint64_t seed, size_t limit = 64);

/// Structural invariants of the compiled program.
CheckResult check_structure(const BytecodeProgram &prog);

/// Negative controls: deliberately broken programs for the validator. Known kinds are
/// "axis-operand", "schedule" and "record".
BytecodeProgram corrupt_program(BytecodeProgram prog, const std::string &kind);

/// Sub-circuit made of the first `count` flattened instructions.
Circuit circuit_prefix(const Circuit &flat, size_t count);

}  // namespace fsim

#endif
