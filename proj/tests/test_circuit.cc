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

#include "factorsim/circuit.h"

namespace fsim {
namespace {

const char *kWorkedExample = "H 0\nT 0\nT 0\nT 0\nCX 0 1\nDEPOLARIZE1(0.001) 0 1\nCX 0 1\nT_DAG 0\nH 0\nM 0 1";

TEST(Circuit, ParsesWorkedExample) {
    Circuit c = parse_circuit(kWorkedExample);
    EXPECT_EQ(c.instructions.size(), 10u);
    EXPECT_EQ(c.num_qubits(), 2u);
    EXPECT_EQ(c.num_measurements(), 2u);
    EXPECT_EQ(c.num_noise_sites(), 2u);
}

TEST(Circuit, EmptyInput) {
    Circuit c = parse_circuit("");
    EXPECT_TRUE(c.instructions.empty());
    EXPECT_EQ(c.num_qubits(), 0u);
}

TEST(Circuit, RepeatFlattens) {
    Circuit c = flatten(parse_circuit("REPEAT 3 {\n X 0\n}"));
    ASSERT_EQ(c.instructions.size(), 3u);
    for (const auto &inst : c.instructions) {
        EXPECT_EQ(inst.op, OpCode::X);
    }
    Circuit nested = flatten(parse_circuit("REPEAT 2 {\nREPEAT 2 {\nX 0\n}\n}"));
    EXPECT_EQ(nested.instructions.size(), 4u);
    EXPECT_EQ(parse_circuit("REPEAT 2 {\nREPEAT 2 {\nX 0\n}\nH 1\n}\nM 0").flattened_size(), 7u);
}

TEST(Circuit, LookbacksResolveToAbsoluteRecords) {
    Circuit c = flatten(parse_circuit("REPEAT 2 {\nM 0\nCX rec[-1] 1\n}"));
    ASSERT_EQ(c.instructions.size(), 4u);
    EXPECT_TRUE(c.instructions[1].targets[0].is_record);
    EXPECT_EQ(c.instructions[1].targets[0].value, 0u);
    EXPECT_EQ(c.instructions[3].targets[0].value, 1u);
}

TEST(Circuit, FlattenIsIdempotentAndIdentityWithoutBlocks) {
    Circuit c = parse_circuit(kWorkedExample);
    Circuit f = flatten(c);
    EXPECT_EQ(f.instructions, c.instructions);
    EXPECT_EQ(flatten(f), f);
}

TEST(Circuit, TextRoundTrip) {
    const char *text =
        "R 0 1\nREPEAT 2 {\n  H 0\n  R_Z(0.25) 1\n  M 0\n  DETECTOR rec[-1]\n}\nX_ERROR(0.125) 0\n"
        "OBSERVABLE_INCLUDE(0) rec[-2]\nPOSTSELECT rec[-1]\n";
    Circuit c = parse_circuit(text);
    Circuit again = parse_circuit(c.str());
    EXPECT_EQ(again, c);
    EXPECT_EQ(parse_circuit(again.str()), again);
}

TEST(Circuit, Errors) {
    EXPECT_THROW(parse_circuit("FOO 0"), CircuitError);
    EXPECT_THROW(parse_circuit("H -1"), CircuitError);
    EXPECT_THROW(parse_circuit("X_ERROR(1.5) 0"), CircuitError);
    EXPECT_THROW(parse_circuit("CX 0"), CircuitError);
    EXPECT_THROW(parse_circuit("CX 0 0"), CircuitError);
    EXPECT_THROW(parse_circuit("R_Z 0"), CircuitError);
    EXPECT_THROW(parse_circuit("H 0(\n"), CircuitError);
    EXPECT_THROW(flatten(parse_circuit("M 0\nDETECTOR rec[-2]")), CircuitError);
    EXPECT_THROW(parse_circuit("REPEAT 2 {\nX 0\n"), CircuitError);
    try {
        parse_circuit("H 0\nH 1\nBOGUS 2\n");
        FAIL();
    } catch (const CircuitError &e) {
        EXPECT_EQ(e.line(), 3u);
    }
}

TEST(Circuit, CommentsAliasesAndIgnoredAnnotations) {
    Circuit c = parse_circuit("# header\nCNOT 0 1 # trailing\nMZ 1\nTICK\nQUBIT_COORDS(1, 2) 0\n");
    EXPECT_EQ(c.instructions[0].op, OpCode::CX);
    EXPECT_EQ(c.instructions[1].op, OpCode::M);
    EXPECT_EQ(c.num_measurements(), 1u);
}

TEST(Circuit, NoiseCases) {
    auto dep1 = noise_cases(parse_circuit("DEPOLARIZE1(0.3) 0").instructions[0]);
    ASSERT_EQ(dep1.size(), 3u);
    EXPECT_DOUBLE_EQ(dep1[0].probability, 0.1);
    EXPECT_EQ(dep1[1].letters, "Y");
    auto dep2 = noise_cases(parse_circuit("DEPOLARIZE2(0.15) 0 1").instructions[0]);
    ASSERT_EQ(dep2.size(), 15u);
    EXPECT_EQ(dep2[0].letters, "IX");
    EXPECT_EQ(dep2[14].letters, "ZZ");
    EXPECT_DOUBLE_EQ(dep2[3].probability, 0.01);
    EXPECT_EQ(noise_cases(parse_circuit("Y_ERROR(0.2) 3").instructions[0])[0].letters, "Y");
    EXPECT_EQ(parse_circuit("DEPOLARIZE2(0.1) 0 1 2 3").num_noise_sites(), 2u);
}

}  // namespace
}  // namespace fsim
