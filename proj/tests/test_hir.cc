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

#include "factorsim/hir.h"
#include "factorsim/oracle.h"
#include "factorsim/validate.h"

namespace fsim {
namespace {

const char *kWorkedExample = "H 0\nT 0\nT 0\nT 0\nCX 0 1\nDEPOLARIZE1(0.001) 0 1\nCX 0 1\nT_DAG 0\nH 0\nM 0 1";

// Replays HIR ops on a dense vector and applies the final frame. Faults never fire.
DenseState replay(const HirProgram &hir, const std::vector<int> &outcomes) {
    DenseState s = DenseState::zero(hir.num_qubits);
    ShotRng rng(0, 0);
    std::vector<int> records(hir.layout.total_records(), 0);
    for (const auto &op : hir.ops) {
        if (auto *rot = std::get_if<RotOp>(&op)) {
            apply_rotation(s, rot->generator, rot->angle);
        } else if (auto *meas = std::get_if<MeasOp>(&op)) {
            PauliString obs = meas->observable;
            bool negate = obs.is_negative();
            obs.set_phase_exp(0);
            int forced = outcomes[meas->record] ^ static_cast<int>(negate);
            records[meas->record] = measure_pauli(s, obs, forced, rng) ^ negate;
        } else if (auto *cond = std::get_if<CondPauliOp>(&op)) {
            if (records[cond->record]) {
                apply_pauli(s, cond->pauli);
            }
        }
    }
    auto u = synthesize_unitary(hir.final_frame.forward());
    DenseState out = DenseState::zero(hir.num_qubits);
    out.amplitudes.assign(out.amplitudes.size(), 0);
    for (size_t c = 0; c < u.size(); c++) {
        for (size_t r = 0; r < u.size(); r++) {
            out.amplitudes[r] += u[c][r] * s.amplitudes[c];
        }
    }
    return out;
}

size_t count_ops(const HirProgram &hir, size_t index) {
    size_t n = 0;
    for (const auto &op : hir.ops) {
        n += op.index() == index;
    }
    return n;
}

TEST(Hir, WorkedExampleOptimizedListing) {
    HirProgram hir = optimize_hir(lower_to_hir(parse_circuit(kWorkedExample)));
    EXPECT_EQ(dump_hir(hir),
              "T +X0\nNOISE site=0\nNOISE site=1\nMEAS +Z1 -> rec[1]\nT_DAG +X0\nMEAS +Y0 -> rec[0]\n");
}

TEST(Hir, WorkedExampleBeforeOptimization) {
    HirProgram hir = lower_to_hir(parse_circuit(kWorkedExample));
    EXPECT_EQ(count_ops(hir, 0), 4u);
    EXPECT_EQ(count_ops(hir, 1), 2u);
    EXPECT_EQ(count_ops(hir, 2), 2u);
    EXPECT_EQ(hir.stats.nonclifford_rotations, 4u);
    EXPECT_EQ(hir.stats.clifford_ops, 4u);
}

TEST(Hir, CliffordsAreAbsorbed) {
    HirProgram hir = lower_to_hir(parse_circuit("H 0\nCX 0 1\nS 1\nSWAP 0 1\nM 0"));
    ASSERT_EQ(hir.ops.size(), 1u);
    EXPECT_TRUE(std::holds_alternative<MeasOp>(hir.ops[0]));
}

TEST(Hir, GeneratorsAreHeisenbergMapped) {
    HirProgram hir = lower_to_hir(parse_circuit("H 0\nT 0\nM 0"));
    ASSERT_EQ(hir.ops.size(), 2u);
    EXPECT_EQ(std::get<RotOp>(hir.ops[0]).generator.sparse_str(), "+X0");
    EXPECT_EQ(std::get<MeasOp>(hir.ops[1]).observable.sparse_str(), "+X0");
}

TEST(Hir, PeepholeFusesAndCancels) {
    HirProgram three = peephole_pass(lower_to_hir(parse_circuit("H 0\nT 0\nT 0\nT 0")));
    ASSERT_EQ(three.ops.size(), 1u);
    EXPECT_EQ(hir_op_str(three.ops[0]), "T +X0");

    HirProgram pair = peephole_pass(lower_to_hir(parse_circuit("R_X(0.3) 0\nCZ 1 2\nR_X(-0.3) 0")));
    EXPECT_TRUE(pair.ops.empty());

    HirProgram clifford = peephole_pass(lower_to_hir(parse_circuit("T 0\nT 0\nH 0\nM 0")));
    ASSERT_EQ(clifford.ops.size(), 1u);

    // A rotation on an anticommuting generator in between blocks fusion.
    HirProgram blocked = peephole_pass(lower_to_hir(parse_circuit("T 0\nR_X(0.2) 0\nT 0")));
    EXPECT_EQ(blocked.ops.size(), 3u);
}

TEST(Hir, PeepholeReachesFixpoint) {
    for (uint64_t seed = 0; seed < 30; seed++) {
        RandomCircuitSpec spec;
        spec.num_qubits = 3;
        spec.num_ops = 40;
        HirProgram once = peephole_pass(lower_to_hir(random_circuit(spec, seed)));
        HirProgram twice = peephole_pass(once);
        ASSERT_EQ(dump_hir(once), dump_hir(twice));
    }
}

TEST(Hir, ScheduleHoistsWorkedExampleMeasurement) {
    HirProgram hir = peephole_pass(lower_to_hir(parse_circuit(kWorkedExample)));
    EXPECT_EQ(hir_op_str(hir.ops[3]), "T_DAG +X0");
    HirProgram scheduled = schedule_pass(hir);
    EXPECT_EQ(hir_op_str(scheduled.ops[3]), "MEAS +Z1 -> rec[1]");
}

TEST(Hir, ScheduleLeavesNonCommutingOpsAlone) {
    HirProgram hir = peephole_pass(lower_to_hir(parse_circuit("H 0\nT 0\nH 0\nT 0\nH 0\nM 0")));
    HirProgram scheduled = schedule_pass(hir);
    EXPECT_EQ(dump_hir(hir), dump_hir(scheduled));
}

TEST(Hir, PostselectIsInsertedAfterDetector) {
    LowerOptions opts;
    opts.postselect_detectors = {1};
    HirProgram hir = lower_to_hir(parse_circuit("M 0 1\nDETECTOR rec[-2]\nDETECTOR rec[-1]\nM 0"), opts);
    std::string dump = dump_hir(hir);
    EXPECT_NE(dump.find("DETECTOR D1 rec[1]\nPOSTSELECT rec[1] == 0\n"), std::string::npos) << dump;
    EXPECT_EQ(dump.find("POSTSELECT rec[0]"), std::string::npos);
}

TEST(Hir, ResetUsesHiddenRecords) {
    HirProgram hir = lower_to_hir(parse_circuit("H 0\nR 0\nM 0"));
    EXPECT_EQ(hir.layout.num_measurements, 1u);
    EXPECT_EQ(hir.layout.num_hidden, 1u);
    EXPECT_NE(dump_hir(hir).find("COND_PAULI +Z0 if rec[1]"), std::string::npos) << dump_hir(hir);
}

TEST(Hir, PassesPreserveDenseSemantics) {
    for (uint64_t seed = 0; seed < 120; seed++) {
        RandomCircuitSpec spec;
        spec.num_qubits = 2 + seed % 4;
        spec.num_ops = 35;
        spec.noise = false;
        Circuit c = flatten(random_circuit(spec, seed));
        OracleRun oracle = dense_run(c, nullptr, nullptr, seed);
        std::vector<int> outcomes(oracle.records.begin(), oracle.records.end());
        HirProgram raw = lower_to_hir(c);
        HirProgram peep = peephole_pass(raw);
        HirProgram sched = schedule_pass(peep);
        for (const HirProgram *h : {&raw, &peep, &sched}) {
            ASSERT_GT(fidelity(replay(*h, outcomes), oracle.state), 1 - 1e-10) << "seed " << seed << "\n"
                                                                                << c.str();
        }
    }
}

}  // namespace
}  // namespace fsim
