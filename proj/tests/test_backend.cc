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

#include <gtest/gtest.h>

#include <random>

#include "factorsim/bytecode.h"
#include "factorsim/localize.h"
#include "factorsim/oracle.h"
#include "factorsim/validate.h"
#include "test_util.h"

namespace fsim {
namespace {

const char *kWorkedExample = "H 0\nT 0\nT 0\nT 0\nCX 0 1\nDEPOLARIZE1(0.001) 0 1\nCX 0 1\nT_DAG 0\nH 0\nM 0 1";

PauliString conjugate_all(PauliString p, const LocalizationResult &loc) {
    for (const auto &g : loc.gates) {
        conjugate_by_gate(p, g.gate, g.a, g.b);
    }
    return p;
}

std::vector<bool> random_active(size_t n, std::mt19937_64 &rng) {
    std::vector<bool> active(n);
    for (size_t q = 0; q < n; q++) {
        active[q] = rng() % 3 == 0;
    }
    return active;
}

TEST(Localize, TwoQubitZ) {
    LocalizationResult loc = localize(PauliString::from_str("ZZ"), {false, false});
    ASSERT_EQ(loc.gates.size(), 1u);
    EXPECT_EQ(loc.gates[0], (VirtualGate{Gate::CX, 1, 0}));
    EXPECT_EQ(loc.axis, 0u);
    EXPECT_EQ(loc.basis, 'Z');
    EXPECT_EQ(loc.sign, 1);
}

TEST(Localize, AlreadyLocal) {
    LocalizationResult loc = localize(PauliString::from_sparse(5, "+Z3"), std::vector<bool>(5, false));
    EXPECT_TRUE(loc.gates.empty());
    EXPECT_EQ(loc.axis, 3u);
    EXPECT_THROW(localize(PauliString(3), std::vector<bool>(3, false)), std::invalid_argument);
}

TEST(Localize, MatchesDenseConjugation) {
    std::mt19937_64 rng(21);
    const size_t n = 6;
    for (int t = 0; t < 60; t++) {
        PauliString p = testing::random_pauli(n, rng);
        if (!p.has_support()) {
            continue;
        }
        LocalizationResult loc = localize(p, random_active(n, rng));
        testing::Mat v = testing::Mat::identity(size_t{1} << n);
        for (const auto &g : loc.gates) {
            v = testing::gate_matrix(n, g.gate, g.a, g.b) * v;
        }
        PauliString target = PauliString::single(n, loc.axis, loc.basis);
        testing::Mat expect = testing::C(loc.sign) * testing::pauli_matrix(target);
        ASSERT_LT(testing::max_diff(v * testing::pauli_matrix(p) * testing::adjoint(v), expect), 1e-12) << p.str();
    }
}

TEST(Localize, GateCountBound) {
    std::mt19937_64 rng(22);
    for (int t = 0; t < 10000; t++) {
        size_t n = 1 + rng() % 64;
        PauliString p = testing::random_pauli(n, rng);
        if (!p.has_support()) {
            continue;
        }
        LocalizationResult loc = localize(p, random_active(n, rng));
        ASSERT_LE(loc.gates.size(), 2 * n + 2);
        PauliString q = conjugate_all(p, loc);
        PauliString expect = PauliString::single(n, loc.axis, loc.basis);
        if (loc.sign < 0) {
            expect.set_phase_exp(2);
        }
        ASSERT_EQ(q, expect);
    }
}

// Dormant qubits hold |0>: frame-only gates must fix the state and array gates must keep it there.
TEST(Localize, DormantBlockStaysZero) {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 300; t++) {
        size_t n = 2 + rng() % 9;
        std::vector<bool> active = random_active(n, rng);
        DenseState s = DenseState::zero(n);
        size_t dormant_mask = 0;
        for (size_t q = 0; q < n; q++) {
            if (active[q]) {
                apply_gate(s, Gate::H, q);
                apply_rotation(s, PauliString::single(n, q, 'Z'), 0.1 + 0.2 * q);
            } else {
                dormant_mask |= size_t{1} << q;
            }
        }
        for (size_t q = 0; q + 1 < n; q++) {
            if (active[q] && active[q + 1]) {
                apply_gate(s, Gate::CX, q, q + 1);
            }
        }
        PauliString p = testing::random_pauli(n, rng);
        if (!p.has_support()) {
            continue;
        }
        LocalizationResult loc = localize(p, active);
        for (const auto &g : loc.gates) {
            DenseState before = s;
            GateEffect effect = classify_gate(g, active);
            apply_gate(s, g.gate, g.a, g.b);
            if (effect == GateEffect::FrameOnly) {
                for (size_t i = 0; i < s.amplitudes.size(); i++) {
                    ASSERT_LT(std::abs(s.amplitudes[i] - before.amplitudes[i]), 1e-12);
                }
            }
            for (size_t i = 0; i < s.amplitudes.size(); i++) {
                if (i & dormant_mask) {
                    ASSERT_LT(std::abs(s.amplitudes[i]), 1e-12);
                }
            }
        }
    }
}

TEST(Localize, RejectsLeakingGates) {
    std::vector<bool> active = {true, false};
    EXPECT_EQ(classify_gate({Gate::CX, 1, 0}, active), GateEffect::FrameOnly);
    EXPECT_EQ(classify_gate({Gate::CZ, 0, 1}, active), GateEffect::FrameOnly);
    EXPECT_EQ(classify_gate({Gate::S, 1, 0}, active), GateEffect::FrameOnly);
    EXPECT_EQ(classify_gate({Gate::S, 0, 0}, active), GateEffect::Array);
    EXPECT_THROW(classify_gate({Gate::CX, 0, 1}, active), std::logic_error);
}

size_t count(const BytecodeProgram &prog, VmOp op) {
    size_t n = 0;
    for (const auto &in : prog.instrs) {
        n += in.op == op;
    }
    return n;
}

TEST(Backend, WorkedExampleBytecode) {
    BytecodeProgram prog = compile(parse_circuit(kWorkedExample));
    EXPECT_EQ(prog.k_max, 1u);
    EXPECT_EQ(check_program(prog), "");
    ASSERT_GE(prog.instrs.size(), 3u);
    EXPECT_EQ(instr_str(prog, prog.instrs[0]), "OP_FRAME_H 0");
    EXPECT_EQ(instr_str(prog, prog.instrs[1]), "OP_EXPAND_T 0");
    EXPECT_EQ(instr_str(prog, prog.instrs[2]), "OP_NOISE_BLOCK sites=[0..2)");
    EXPECT_EQ(count(prog, VmOp::NOISE_BLOCK), 1u);
    EXPECT_EQ(count(prog, VmOp::MEAS_DORMANT_STATIC), 1u);
    EXPECT_EQ(count(prog, VmOp::MEAS_ACTIVE_INTERFERE), 1u);
    EXPECT_EQ(count(prog, VmOp::EXPAND_ROT), 1u);
    EXPECT_EQ(count(prog, VmOp::ARRAY_ROT), 1u);
    std::string text = disassemble(prog);
    EXPECT_NE(text.find("OP_ARRAY_T_DAG 0"), std::string::npos) << text;
    EXPECT_NE(text.find("OP_ARRAY_S 0"), std::string::npos) << text;
    EXPECT_NE(text.find("OP_MEAS_DORMANT_STATIC 1 -> rec[1]"), std::string::npos) << text;
    EXPECT_EQ(prog.active_schedule.back(), 0u);
}

TEST(Backend, CliffordOnlyHasNoArray) {
    BytecodeProgram prog = compile(parse_circuit("H 0\nCX 0 1\nM 0 1\nMX 1"));
    EXPECT_EQ(prog.k_max, 0u);
    for (const auto &in : prog.instrs) {
        EXPECT_NE(in.op, VmOp::EXPAND);
        EXPECT_NE(in.op, VmOp::ARRAY_ROT);
        EXPECT_NE(in.op, VmOp::ARRAY_GATE);
        EXPECT_NE(in.op, VmOp::MEAS_ACTIVE_INTERFERE);
    }
}

TEST(Backend, ExpandThenRetire) {
    BytecodeProgram prog = compile(parse_circuit("H 0\nT 0\nH 0\nM 0"));
    EXPECT_EQ(prog.k_max, 1u);
    EXPECT_EQ(count(prog, VmOp::EXPAND_ROT), 1u);
    EXPECT_EQ(count(prog, VmOp::MEAS_ACTIVE_INTERFERE), 1u);
    EXPECT_EQ(prog.active_schedule.back(), 0u);
}

TEST(Backend, DormantZRotationIsAScalar) {
    BytecodeProgram prog = compile(parse_circuit("T 0\nM 0"));
    EXPECT_EQ(prog.k_max, 0u);
    EXPECT_EQ(count(prog, VmOp::PHASE_SCALAR), 1u);
}

TEST(Backend, OptimizerFusionsAndNoOps) {
    BytecodeProgram raw = plan_and_emit(optimize_hir(lower_to_hir(parse_circuit(kWorkedExample))));
    BytecodeProgram opt = optimize_bytecode(raw);
    EXPECT_EQ(count(raw, VmOp::NOISE_BLOCK), 2u);
    EXPECT_EQ(count(opt, VmOp::NOISE_BLOCK), 1u);
    EXPECT_EQ(count(raw, VmOp::EXPAND), 1u);
    EXPECT_EQ(count(opt, VmOp::EXPAND_ROT), 1u);
    EXPECT_LT(opt.instrs.size(), raw.instrs.size());

    BytecodeProgram plain = plan_and_emit(optimize_hir(lower_to_hir(parse_circuit("T 0\nM 0\nX_ERROR(0.1) 0\nM 0"))));
    EXPECT_EQ(optimize_bytecode(plain).instrs, plain.instrs);
}

TEST(Backend, ValidatorNamesCorruptions) {
    BytecodeProgram prog = compile(parse_circuit(kWorkedExample));
    EXPECT_EQ(check_program(corrupt_program(prog, "axis-operand")), "active-axis-operand");
    EXPECT_EQ(check_program(corrupt_program(prog, "schedule")), "active-schedule");
    EXPECT_EQ(check_program(corrupt_program(prog, "record")), "record-index-range");
}

TEST(Backend, RandomProgramsAreWellFormed) {
    for (uint64_t seed = 0; seed < 200; seed++) {
        RandomCircuitSpec spec;
        spec.num_qubits = 2 + seed % 7;
        spec.num_ops = 60;
        spec.max_nonclifford = 12;
        BytecodeProgram prog = compile(random_circuit(spec, seed));
        ASSERT_EQ(check_program(prog), "") << seed;
        ASSERT_LE(prog.k_max, prog.num_qubits);
    }
}

TEST(Backend, StatsJson) {
    std::string s = stats_json(compile(parse_circuit(kWorkedExample)));
    EXPECT_NE(s.find("\"k_max\": 1"), std::string::npos) << s;
    EXPECT_NE(s.find("\"E\": 2"), std::string::npos) << s;
    EXPECT_NE(s.find("\"M_active\": 1"), std::string::npos) << s;
}

}  // namespace
}  // namespace fsim
