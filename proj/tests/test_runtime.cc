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

#include <cmath>
#include <numbers>
#include <sstream>

#include "factorsim/bytecode.h"
#include "factorsim/record_io.h"
#include "factorsim/svm.h"

namespace fsim {
namespace {

const char *kWorkedExample = "H 0\nT 0\nT 0\nT 0\nCX 0 1\nDEPOLARIZE1(0.05) 0 1\nCX 0 1\nT_DAG 0\nH 0\nM 0 1";

double ones_fraction(const std::vector<ShotRecord> &recs, size_t bit) {
    double n = 0;
    for (const auto &r : recs) {
        n += r.measurements[bit];
    }
    return n / static_cast<double>(recs.size());
}

void expect_rate(double observed, double p, size_t shots) {
    double sigma = std::sqrt(p * (1 - p) / static_cast<double>(shots));
    EXPECT_NEAR(observed, p, 5 * sigma + 1e-12);
}

TEST(Runtime, FairCoin) {
    auto recs = sample_records(compile(parse_circuit("H 0\nM 0")), 100000, 1);
    expect_rate(ones_fraction(recs, 0), 0.5, recs.size());
}

TEST(Runtime, InterferenceProbability) {
    auto recs = sample_records(compile(parse_circuit("H 0\nT 0\nH 0\nM 0")), 100000, 2);
    double p = std::pow(std::sin(std::numbers::pi / 8), 2);
    expect_rate(ones_fraction(recs, 0), p, recs.size());
}

TEST(Runtime, DeterministicCliffordOutcomes) {
    auto recs = sample_records(compile(parse_circuit("H 0 1\nCZ 0 1\nH 1\nCX 0 1\nH 0\nX 2\nS 2\nM 0 1 2")), 200, 3);
    for (const auto &r : recs) {
        EXPECT_EQ(r.measurements, (std::vector<uint8_t>{0, 0, 1}));
    }
}

TEST(Runtime, ResetClearsQubit) {
    auto recs = sample_records(compile(parse_circuit("H 0\nT 0\nR 0\nM 0")), 2000, 4);
    for (const auto &r : recs) {
        ASSERT_EQ(r.measurements, std::vector<uint8_t>{0});
    }
}

TEST(Runtime, FeedbackCorrects) {
    auto recs = sample_records(compile(parse_circuit("H 0\nCX 0 1\nM 0\nCX rec[-1] 1\nM 1")), 2000, 5);
    for (const auto &r : recs) {
        ASSERT_EQ(r.measurements[1], 0);
    }
}

NoiseTable table_of(const std::vector<double> &probs) {
    std::string text;
    for (size_t i = 0; i < probs.size(); i++) {
        text += "X_ERROR(" + std::to_string(probs[i]) + ") " + std::to_string(i) + "\n";
    }
    return compile(parse_circuit(text)).noise;
}

TEST(Runtime, HazardSamplerMarginalsAndCounts) {
    std::vector<double> probs = {0.1, 0.3, 1.0, 0.02, 0.5, 0.0, 0.25};
    NoiseTable table = table_of(probs);
    const size_t shots = 200000;
    std::vector<double> hits(probs.size());
    std::vector<double> counts(probs.size() + 1);
    std::vector<uint32_t> fired;
    for (size_t s = 0; s < shots; s++) {
        ShotRng rng(9, s);
        fired.clear();
        hazard_sample(table, 0, static_cast<uint32_t>(probs.size()), rng, fired);
        ASSERT_TRUE(std::is_sorted(fired.begin(), fired.end()));
        for (uint32_t f : fired) {
            hits[f]++;
        }
        counts[fired.size()]++;
    }
    for (size_t i = 0; i < probs.size(); i++) {
        expect_rate(hits[i] / shots, probs[i], shots);
    }
    std::vector<double> pmf = poisson_binomial(probs);
    double chi2 = 0;
    int dof = -1;
    for (size_t m = 0; m < pmf.size(); m++) {
        double expected = pmf[m] * shots;
        if (expected >= 5) {
            chi2 += (counts[m] - expected) * (counts[m] - expected) / expected;
            dof++;
        } else {
            EXPECT_LT(counts[m], 40);
        }
    }
    ASSERT_GT(dof, 0);
    EXPECT_LT(chi2, dof + 5 * std::sqrt(2.0 * dof));
}

TEST(Runtime, HazardSubrange) {
    NoiseTable table = table_of({1.0, 1.0, 1.0, 1.0});
    ShotRng rng(1, 1);
    std::vector<uint32_t> fired;
    hazard_sample(table, 1, 3, rng, fired);
    EXPECT_EQ(fired, (std::vector<uint32_t>{1, 2}));
}

TEST(Runtime, PoissonBinomialExamples) {
    EXPECT_EQ(poisson_binomial({}), std::vector<double>{1});
    EXPECT_EQ(poisson_binomial({1}), (std::vector<double>{0, 1}));
    std::vector<double> half = poisson_binomial({0.5, 0.5});
    ASSERT_EQ(half.size(), 3u);
    EXPECT_NEAR(half[0], 0.25, 1e-15);
    EXPECT_NEAR(half[1], 0.5, 1e-15);
    EXPECT_NEAR(half[2], 0.25, 1e-15);
}

TEST(Runtime, StratumSampler) {
    std::vector<double> probs = {0.1, 0.2, 0.3};
    StratumSampler sampler(probs, 1);
    EXPECT_NEAR(sampler.weight(), 0.1 * 0.8 * 0.7 + 0.9 * 0.2 * 0.7 + 0.9 * 0.8 * 0.3, 1e-15);
    std::vector<double> hits(3);
    const size_t shots = 100000;
    std::vector<uint32_t> fired;
    for (size_t s = 0; s < shots; s++) {
        ShotRng rng(3, s);
        fired.clear();
        sampler.draw(rng, fired);
        ASSERT_EQ(fired.size(), 1u);
        hits[fired[0]]++;
    }
    double w = sampler.weight();
    expect_rate(hits[0] / shots, 0.1 * 0.8 * 0.7 / w, shots);
    expect_rate(hits[1] / shots, 0.9 * 0.2 * 0.7 / w, shots);
    expect_rate(hits[2] / shots, 0.9 * 0.8 * 0.3 / w, shots);
    EXPECT_THROW(StratumSampler(probs, 4), std::invalid_argument);
    EXPECT_THROW(StratumSampler({0.0, 0.5}, 2), std::invalid_argument);
}

TEST(Runtime, WorkerCountDoesNotChangeResults) {
    BytecodeProgram prog = compile(parse_circuit(kWorkedExample));
    auto one = sample_records(prog, 10000, 77, {1, std::nullopt});
    auto four = sample_records(prog, 10000, 77, {4, std::nullopt});
    EXPECT_EQ(one, four);
    auto other = sample_records(prog, 10000, 78, {1, std::nullopt});
    EXPECT_NE(one, other);
}

TEST(Runtime, ActiveDimensionFollowsSchedule) {
    BytecodeProgram prog = compile(parse_circuit(
        "H 0 1 2\nT 0 1 2\nCX 0 1\nT 1\nX_ERROR(0.2) 0 1 2\nH 2\nM 2\nT 2\nCX 1 2\nT_DAG 2\nH 0\nM 0 1 2"));
    ShotState state(prog);
    for (uint64_t seed = 0; seed < 10; seed++) {
        ShotRng rng(seed, 0);
        std::vector<uint32_t> trace;
        ShotControls controls;
        controls.k_trace = &trace;
        state.reset();
        run_shot(prog, state, rng, controls);
        EXPECT_EQ(trace, prog.active_schedule) << seed;
    }
}

TEST(Runtime, PostselectionHaltsShot) {
    BytecodeProgram prog = compile(parse_circuit("H 0\nM 0\nPOSTSELECT rec[-1]\nT 1\nH 1\nM 1"));
    auto recs = sample_records(prog, 20000, 6);
    double accepted = 0;
    for (const auto &r : recs) {
        accepted += r.accepted;
        if (r.accepted) {
            EXPECT_EQ(r.measurements[0], 0);
        }
    }
    expect_rate(accepted / recs.size(), 0.5, recs.size());

    ShotState state(prog);
    std::vector<int> forced = {1, -1};
    ShotControls controls;
    controls.forced_outcomes = &forced;
    ShotRng rng(1, 1);
    run_shot(prog, state, rng, controls);
    EXPECT_FALSE(state.accepted);
    EXPECT_LT(state.executed, prog.instrs.size());
}

TEST(Runtime, DetectorPostselectionOption) {
    LowerOptions options;
    options.postselect_detectors = {0};
    BytecodeProgram prog = compile(parse_circuit("X_ERROR(0.3) 0\nM 0\nDETECTOR rec[-1]"), options);
    auto recs = sample_records(prog, 20000, 7);
    double accepted = 0;
    for (const auto &r : recs) {
        accepted += r.accepted;
    }
    expect_rate(accepted / recs.size(), 0.7, recs.size());
    options.postselect_detectors = {1};
    EXPECT_THROW(compile(parse_circuit("M 0\nDETECTOR rec[-1]"), options), std::invalid_argument);
}

TEST(Runtime, ImpossibleForcedOutcomeThrows) {
    BytecodeProgram prog = compile(parse_circuit("H 0\nT 0\nH 0\nH 0\nT_DAG 0\nH 0\nM 0"));
    ShotState state(prog);
    std::vector<int> forced = {1};
    ShotControls controls;
    controls.forced_outcomes = &forced;
    ShotRng rng(1, 1);
    EXPECT_THROW(run_shot(prog, state, rng, controls), std::runtime_error);
}

TEST(Runtime, ExpectationProbe) {
    BytecodeProgram prog = compile(parse_circuit("H 0\nT 0\nCX 0 1"));
    ShotState state(prog);
    ShotRng rng(1, 1);
    run_shot(prog, state, rng);
    double c = std::cos(std::numbers::pi / 4);
    EXPECT_NEAR(expectation_probe(prog, state, PauliString::from_str("XX")), c, 1e-12);
    EXPECT_NEAR(expectation_probe(prog, state, PauliString::from_str("YX")), c, 1e-12);
    EXPECT_NEAR(expectation_probe(prog, state, PauliString::from_str("ZZ")), 1, 1e-12);
    EXPECT_NEAR(expectation_probe(prog, state, PauliString::from_str("Z_")), 0, 1e-12);
    EXPECT_NEAR(expectation_probe(prog, state, PauliString::from_str("-ZZ")), -1, 1e-12);
}

TEST(Runtime, StratumWeights) {
    BytecodeProgram prog = compile(parse_circuit("X_ERROR(0.1) 0 1 2\nM 0 1 2"));
    SampleOptions options;
    options.stratum = 2;
    auto recs = sample_records(prog, 1000, 8, options);
    for (const auto &r : recs) {
        int ones = r.measurements[0] + r.measurements[1] + r.measurements[2];
        ASSERT_EQ(ones, 2);
        ASSERT_NEAR(r.weight, 3 * 0.01 * 0.9, 1e-15);
    }
}

TEST(RecordIo, Formats) {
    ShotRecord a{{1, 0}, {1}, {}, true, 1};
    ShotRecord b{{0, 1}, {0}, {}, false, 0.5};
    std::ostringstream text;
    RecordWriter tw(text, RecordFormat::Text01, false);
    tw.write(0, a);
    tw.write(1, b);
    EXPECT_EQ(text.str(), "101\n");

    std::ostringstream kept;
    RecordWriter kw(kept, RecordFormat::Text01, true);
    kw.write(0, a);
    kw.write(1, b);
    EXPECT_EQ(kept.str(), "101 1\n010 0\n");

    std::ostringstream bin;
    RecordWriter bw(bin, RecordFormat::Binary, false);
    bw.write(0, a);
    EXPECT_EQ(bin.str(), std::string(1, '\x05'));

    std::ostringstream csv;
    RecordWriter cw(csv, RecordFormat::WeightedCsv, false);
    cw.write(3, a);
    EXPECT_EQ(csv.str(), "shot,weight,bits\n3,1,101\n");

    EXPECT_EQ(parse_record_format("bin"), RecordFormat::Binary);
    EXPECT_THROW(parse_record_format("hex"), std::invalid_argument);
}

}  // namespace
}  // namespace fsim
