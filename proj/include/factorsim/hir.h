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

#ifndef FACTORSIM_HIR_H
#define FACTORSIM_HIR_H

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "factorsim/circuit.h"
#include "factorsim/pauli.h"
#include "factorsim/tableau.h"

namespace fsim {

struct CompileStats {
    uint64_t n_qubits = 0;
    uint64_t clifford_ops = 0;
    uint64_t measurements = 0;
    uint64_t active_measurements = 0;
    uint64_t nonclifford_rotations = 0;
    uint64_t noise_mechanisms = 0;
    uint64_t k_max = 0;
};

/// exp(-i * angle * generator). `eighths` holds the angle as an exact multiple of pi/8 when
/// every contributing rotation was T-like.
struct RotOp {
    PauliString generator;
    double angle = 0;
    std::optional<int> eighths;
};

/// Projective measurement of a Hermitian virtual observable; the sign lives in its phase.
struct MeasOp {
    PauliString observable;
    uint32_t record = 0;
};

struct NoiseCase {
    double probability = 0;
    PauliString pauli;
};

struct NoiseOp {
    uint32_t site = 0;
    std::vector<NoiseCase> cases;

    double total_probability() const;
};

/// Applies `pauli` when the given record bit is 1.
struct CondPauliOp {
    PauliString pauli;
    uint32_t record = 0;
};

struct DetectorOp {
    uint32_t index = 0;
    std::vector<uint32_t> records;
};

struct ObservableOp {
    uint32_t index = 0;
    std::vector<uint32_t> records;
};

/// Rejects the shot unless the parity of `records` equals `expected`.
struct PostSelectOp {
    std::vector<uint32_t> records;
    bool expected = false;
};

using HirOp = std::variant<RotOp, MeasOp, NoiseOp, CondPauliOp, DetectorOp, ObservableOp, PostSelectOp>;

/// Record buffer layout shared by the compiler and runtime.
///
/// Visible measurements occupy indices [0, num_measurements). Resets measure into hidden slots
/// that follow them.
struct RecordLayout {
    uint32_t num_measurements = 0;
    uint32_t num_hidden = 0;
    uint32_t num_detectors = 0;
    uint32_t num_observables = 0;

    uint32_t total_records() const {
        return num_measurements + num_hidden;
    }
    bool operator==(const RecordLayout &) const = default;
};

struct HirProgram {
    size_t num_qubits = 0;
    std::vector<HirOp> ops;
    /// Frame applied after all ops: state = U_final * (ops in order) |0...0>.
    CliffordFrame final_frame;
    RecordLayout layout;
    CompileStats stats;
};

/// Options for lowering.
struct LowerOptions {
    /// Detector indices to post-select on (required parity 0), inserted right after the detector.
    std::vector<uint32_t> postselect_detectors;
};

/// Absorbs every Clifford gate into the frame and maps the active operations into the virtual basis.
/// The circuit is flattened first if needed.
HirProgram lower_to_hir(const Circuit &circuit, const LowerOptions &options = {});

/// Fuses commuting rotations with equal generators, drops trivial ones and absorbs Clifford
/// remainders into the final frame. Runs until no rewrite fires.
HirProgram peephole_pass(HirProgram hir);

/// Bubbles measurements earlier past commuting rotations and measurements. Keeps the result
/// only if it does not worsen (k_max, sum of 2^k) as measured by the back-end planner.
HirProgram schedule_pass(HirProgram hir);

/// Both passes in order.
HirProgram optimize_hir(HirProgram hir);

std::string hir_op_str(const HirOp &op);
std::string dump_hir(const HirProgram &hir);

/// Angle in units of pi/8 if it is one within tolerance.
std::optional<int> angle_in_eighths(double angle);

}  // namespace fsim

#endif
