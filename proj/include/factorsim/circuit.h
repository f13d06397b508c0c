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

#ifndef FACTORSIM_CIRCUIT_H
#define FACTORSIM_CIRCUIT_H

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "factorsim/pauli.h"

namespace fsim {

enum class OpCode : uint8_t {
    // Clifford gates.
    H,
    S,
    S_DAG,
    X,
    Y,
    Z,
    CX,
    CY,
    CZ,
    SWAP,
    // Non-Clifford rotations.
    T,
    T_DAG,
    R_X,
    R_Y,
    R_Z,
    // Measurement and reset.
    M,
    MX,
    MY,
    R,
    // Noise channels.
    X_ERROR,
    Y_ERROR,
    Z_ERROR,
    DEPOLARIZE1,
    DEPOLARIZE2,
    // Annotations.
    DETECTOR,
    OBSERVABLE_INCLUDE,
    POSTSELECT,
    TICK,
    QUBIT_COORDS,
    REPEAT,
};

const char *opcode_name(OpCode op);
std::optional<OpCode> opcode_from_name(std::string_view name);

bool is_clifford_gate(OpCode op);
bool is_rotation(OpCode op);
bool is_measurement(OpCode op);
bool is_noise(OpCode op);
/// Gate equivalent of a Clifford opcode.
Gate clifford_gate(OpCode op);

/// A qubit index or a measurement record reference.
///
/// Before flattening, record targets hold the lookback distance k of `rec[-k]`. After
/// flattening they hold an absolute index into the visible measurement record.
struct Target {
    uint32_t value = 0;
    bool is_record = false;

    bool operator==(const Target &other) const = default;
};

class Circuit;

struct Instruction {
    OpCode op = OpCode::TICK;
    std::vector<Target> targets;
    std::vector<double> args;
    // Only for REPEAT.
    uint64_t repeat_count = 0;
    std::shared_ptr<const Circuit> body;

    bool operator==(const Instruction &other) const;
};

/// Raised for malformed circuit text or invalid structure.
class CircuitError : public std::invalid_argument {
   public:
    CircuitError(const std::string &msg, size_t line = 0);
    size_t line() const {
        return line_;
    }

   private:
    size_t line_;
};

class Circuit {
   public:
    std::vector<Instruction> instructions;
    bool flat = false;

    /// Max qubit target + 1 over the whole circuit, including repeat bodies.
    uint32_t num_qubits() const;
    /// Number of visible measurement results produced when run.
    uint64_t num_measurements() const;
    uint64_t num_detectors() const;
    uint64_t num_observables() const;
    /// Number of noise sites (one per target or target pair of each noise channel).
    uint64_t num_noise_sites() const;
    /// Instruction count after flattening.
    uint64_t flattened_size() const;

    std::string str() const;
    bool operator==(const Circuit &other) const;
};

/// Parses the circuit text format. Throws CircuitError with a line number.
Circuit parse_circuit(std::string_view text);

/// Expands REPEAT blocks in place and rewrites record lookbacks to absolute indices.
Circuit flatten(const Circuit &circuit);

/// One fault case of a noise channel applied to a single target group.
struct NoiseCaseSpec {
    double probability;
    // One letter per target of the group.
    std::string letters;
};

/// Fault cases for one target group of a noise instruction, in a fixed canonical order.
std::vector<NoiseCaseSpec> noise_cases(const Instruction &inst);
/// Number of targets a noise channel consumes per site.
size_t noise_group_size(OpCode op);

}  // namespace fsim

#endif
