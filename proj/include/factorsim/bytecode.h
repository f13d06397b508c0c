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

#ifndef FACTORSIM_BYTECODE_H
#define FACTORSIM_BYTECODE_H

#include <cstdint>
#include <string>
#include <vector>

#include "factorsim/hir.h"
#include "factorsim/localize.h"
#include "factorsim/tableau.h"

namespace fsim {

enum class VmOp : uint8_t {
    /// Conjugate the Pauli frame by a virtual Clifford (qubit_a, qubit_b).
    FRAME_CLIFFORD,
    /// Dormant Z rotation: gamma *= exp(-i angle (-1)^{x_a}).
    PHASE_SCALAR,
    /// Promote qubit_a to a new top axis in |+>.
    EXPAND,
    /// EXPAND followed by ARRAY_ROT on the new axis.
    EXPAND_ROT,
    /// exp(-i angle (-1)^{x_a} Z) on array axis pos_a.
    ARRAY_ROT,
    /// H, S, S_DAG on pos_a; CX or CZ on (pos_a, pos_b).
    ARRAY_GATE,
    /// Dormant Z measurement, outcome fixed by the frame.
    MEAS_DORMANT_STATIC,
    /// Dormant measurement of a |+> branch: fair coin shifted by the frame.
    MEAS_DORMANT_RANDOM,
    /// Born-rule measurement of axis pos_a in `basis` (Z masks, X folds), then the axis retires.
    MEAS_ACTIVE_INTERFERE,
    /// Multiply paulis[aux] into the frame when record `record` is 1.
    COND_FRAME_PAULI,
    /// Sample faults for noise sites [aux, aux2).
    NOISE_BLOCK,
    DETECTOR,
    OBSERVABLE,
    POSTSELECT,
};

const char *vm_op_name(VmOp op);

struct BytecodeInstr {
    VmOp op = VmOp::FRAME_CLIFFORD;
    Gate gate = Gate::I;
    char basis = 'Z';
    /// Measurement sign: the recorded bit is inverted.
    bool flip = false;
    uint32_t qubit_a = 0;
    uint32_t qubit_b = 0;
    uint32_t pos_a = 0;
    uint32_t pos_b = 0;
    uint32_t record = 0;
    uint32_t aux = 0;
    uint32_t aux2 = 0;
    double angle = 0;

    bool operator==(const BytecodeInstr &) const = default;
};

/// A phase-carrying Pauli in the X^x Z^z product form, stored sparsely by 64-bit word.
struct FramePauli {
    std::vector<uint32_t> words;
    std::vector<uint64_t> xs;
    std::vector<uint64_t> zs;
    /// Exponent e with P = i^e X^x Z^z.
    uint8_t xz_phase = 0;

    static FramePauli from_pauli(const PauliString &p);
    bool operator==(const FramePauli &) const = default;
};

/// Per-site fault probabilities and case tables, prepared once per program.
struct NoiseTable {
    std::vector<double> site_probability;
    /// cumulative_hazard[i] = sum_{j<i} -log(1 - p_j), over uncertain sites only.
    std::vector<double> cumulative_hazard;
    /// Sites with p >= 1, sorted.
    std::vector<uint32_t> certain_sites;
    /// Cases of site s live in [case_begin[s], case_begin[s+1]).
    std::vector<uint32_t> case_begin;
    /// Conditional CDF of the case given that the site fires.
    std::vector<double> case_cdf;
    std::vector<double> case_probability;
    std::vector<uint32_t> case_pauli;

    size_t num_sites() const {
        return site_probability.size();
    }
    size_t num_cases(uint32_t site) const {
        return case_begin[site + 1] - case_begin[site];
    }
    bool operator==(const NoiseTable &) const = default;
};

struct BytecodeProgram {
    size_t num_qubits = 0;
    std::vector<BytecodeInstr> instrs;
    /// Active dimension after each instruction.
    std::vector<uint32_t> active_schedule;
    uint32_t k_max = 0;
    std::vector<FramePauli> paulis;
    std::vector<std::vector<uint32_t>> parity_lists;
    NoiseTable noise;
    RecordLayout layout;
    CompileStats stats;
    /// Clifford frame U_C at the end of the program.
    Tableau final_frame;
    /// Its inverse U_C†, used by the expectation probe.
    Tableau final_frame_inverse;
    /// Virtual qubit held by each array axis at the end of the program.
    std::vector<uint32_t> final_axis_qubits;
};

/// Localizes every HIR op and emits bytecode. Throws std::logic_error on internal inconsistencies.
BytecodeProgram plan_and_emit(const HirProgram &hir);

/// Fuses expansion with a following rotation, an H with a following active measurement, and
/// coalesces contiguous noise blocks.
BytecodeProgram optimize_bytecode(BytecodeProgram prog);

/// Full pipeline: flatten, lower, optimize HIR, emit and optimize bytecode.
BytecodeProgram compile(const Circuit &circuit, const LowerOptions &options = {});

struct ScheduleCost {
    uint32_t k_max = 0;
    double work = 0;
};
ScheduleCost estimate_schedule_cost(const HirProgram &hir);

/// Recomputes the active dimension trajectory from the instruction stream.
std::vector<uint32_t> recompute_schedule(const std::vector<BytecodeInstr> &instrs);

std::string disassemble(const BytecodeProgram &prog);
std::string instr_str(const BytecodeProgram &prog, const BytecodeInstr &instr);
/// JSON object with N, C, M, T, E, M_active, k_max and the instruction count.
std::string stats_json(const BytecodeProgram &prog);

/// Structural checks: axis operands in range, schedule consistent, record indices valid.
/// Returns an empty string when valid, otherwise the name of the violated invariant.
std::string check_program(const BytecodeProgram &prog);

}  // namespace fsim

#endif
