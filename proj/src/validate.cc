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

#include "factorsim/validate.h"

#include <cmath>
#include <numbers>
#include <sstream>

#include "factorsim/oracle.h"
#include "factorsim/rng.h"
#include "factorsim/svm.h"

namespace fsim {

namespace {

class TextBuilder {
   public:
    TextBuilder(size_t num_qubits, uint64_t seed) : n_(num_qubits), rng_(seed, 0x7e57) {
    }

    size_t pick(size_t bound) {
        return static_cast<size_t>(rng_.next() % bound);
    }
    double uniform() {
        return rng_.uniform();
    }
    std::pair<size_t, size_t> pair() {
        size_t a = pick(n_);
        size_t b = pick(n_ - 1);
        return {a, b >= a ? b + 1 : b};
    }
    void line(const std::string &s) {
        out_ << s << '\n';
    }
    std::string text() const {
        return out_.str();
    }
    size_t n() const {
        return n_;
    }

   private:
    size_t n_;
    ShotRng rng_;
    std::ostringstream out_;
};

std::string q(size_t v) {
    return std::to_string(v);
}

}  // namespace

Circuit random_circuit(const RandomCircuitSpec &spec, uint64_t seed) {
    TextBuilder b(std::max<size_t>(spec.num_qubits, 2), seed);
    static const char *kSingle[] = {"H", "S", "S_DAG", "X", "Y", "Z"};
    static const char *kPair[] = {"CX", "CY", "CZ", "SWAP"};
    size_t nonclifford = 0;
    size_t measured = 0;
    // Touch the last qubit so the qubit count is fixed.
    b.line("Z " + q(b.n() - 1));
    for (size_t i = 0; i < spec.num_ops; i++) {
        size_t kind = b.pick(100);
        if (kind < 30) {
            b.line(std::string(kSingle[b.pick(6)]) + " " + q(b.pick(b.n())));
        } else if (kind < 55) {
            auto [x, y] = b.pair();
            b.line(std::string(kPair[b.pick(4)]) + " " + q(x) + " " + q(y));
        } else if (kind < 70) {
            if (nonclifford >= spec.max_nonclifford) {
                continue;
            }
            nonclifford++;
            size_t which = b.pick(5);
            size_t t = b.pick(b.n());
            if (which == 0) {
                b.line("T " + q(t));
            } else if (which == 1) {
                b.line("T_DAG " + q(t));
            } else {
                static const char *kRot[] = {"R_X", "R_Y", "R_Z"};
                std::ostringstream s;
                s.precision(17);
                s << kRot[which - 2] << "(" << (b.uniform() * 2 - 1) * std::numbers::pi << ") " << t;
                b.line(s.str());
            }
        } else if (kind < 82) {
            if (!spec.measurements) {
                continue;
            }
            static const char *kMeas[] = {"M", "MX", "MY"};
            b.line(std::string(kMeas[b.pick(3)]) + " " + q(b.pick(b.n())));
            measured++;
            if (spec.feedback && b.pick(3) == 0) {
                static const char *kCond[] = {"CX", "CY", "CZ"};
                b.line(std::string(kCond[b.pick(3)]) + " rec[-1] " + q(b.pick(b.n())));
            }
            if (b.pick(4) == 0) {
                b.line("DETECTOR rec[-1]");
            }
        } else if (kind < 88) {
            if (spec.resets) {
                b.line("R " + q(b.pick(b.n())));
            }
        } else {
            if (!spec.noise) {
                continue;
            }
            size_t which = b.pick(5);
            if (which == 4) {
                auto [x, y] = b.pair();
                b.line("DEPOLARIZE2(0.1) " + q(x) + " " + q(y));
            } else {
                static const char *kNoise[] = {"X_ERROR", "Y_ERROR", "Z_ERROR", "DEPOLARIZE1"};
                b.line(std::string(kNoise[which]) + "(0.1) " + q(b.pick(b.n())));
            }
        }
    }
    if (measured > 0 && b.pick(2) == 0) {
        b.line("OBSERVABLE_INCLUDE(0) rec[-1]");
    }
    return parse_circuit(b.text());
}

Circuit random_mirror_circuit(size_t num_qubits, size_t depth, size_t nonclifford, uint64_t seed) {
    TextBuilder b(std::max<size_t>(num_qubits, 2), seed);
    std::vector<std::string> forward;
    std::vector<std::string> inverse;
    size_t used = 0;
    for (size_t i = 0; i < depth; i++) {
        size_t kind = b.pick(10);
        if (kind < 4) {
            static const char *kGate[] = {"H", "S", "S_DAG", "X", "Y", "Z"};
            static const char *kInv[] = {"H", "S_DAG", "S", "X", "Y", "Z"};
            size_t g = b.pick(6);
            size_t t = b.pick(b.n());
            forward.push_back(std::string(kGate[g]) + " " + q(t));
            inverse.push_back(std::string(kInv[g]) + " " + q(t));
        } else if (kind < 7 || used >= nonclifford) {
            static const char *kPair[] = {"CX", "CY", "CZ", "SWAP"};
            auto [x, y] = b.pair();
            std::string s = std::string(kPair[b.pick(4)]) + " " + q(x) + " " + q(y);
            forward.push_back(s);
            inverse.push_back(s);
        } else {
            used++;
            size_t t = b.pick(b.n());
            if (b.pick(2) == 0) {
                forward.push_back("T " + q(t));
                inverse.push_back("T_DAG " + q(t));
            } else {
                std::ostringstream f, g;
                f.precision(17);
                g.precision(17);
                double angle = (b.uniform() * 2 - 1) * std::numbers::pi;
                f << "R_Y(" << angle << ") " << t;
                g << "R_Y(" << -angle << ") " << t;
                forward.push_back(f.str());
                inverse.push_back(g.str());
            }
        }
    }
    std::string text;
    for (const auto &s : forward) {
        text += s + "\n";
    }
    for (size_t i = inverse.size(); i-- > 0;) {
        text += inverse[i] + "\n";
    }
    text += "M";
    for (size_t i = 0; i < b.n(); i++) {
        text += " " + q(i);
    }
    text += "\n";
    return parse_circuit(text);
}

std::map<uint32_t, uint32_t> random_fault_plan(const Circuit &circuit, double density, uint64_t seed) {
    Circuit flat = circuit.flat ? circuit : flatten(circuit);
    ShotRng rng(seed, 0xfa17);
    std::map<uint32_t, uint32_t> plan;
    uint32_t site = 0;
    for (const auto &inst : flat.instructions) {
        if (!is_noise(inst.op)) {
            continue;
        }
        size_t cases = noise_cases(inst).size();
        for (size_t i = 0; i < inst.targets.size(); i += noise_group_size(inst.op), site++) {
            if (rng.uniform() < density) {
                plan[site] = static_cast<uint32_t>(rng.next() % cases);
            }
        }
    }
    return plan;
}

namespace {

CheckResult fail(const std::string &name, const std::string &detail) {
    return {name, false, detail};
}

}  // namespace

CheckResult check_oracle_equivalence(const Circuit &circuit, const std::map<uint32_t, uint32_t> &faults,
                                     uint64_t seed) {
    const std::string name = "oracle-equivalence";
    Circuit flat = circuit.flat ? circuit : flatten(circuit);
    if (flat.num_qubits() > kOracleMaxQubits) {
        return fail(name, "circuit exceeds the oracle qubit bound");
    }
    OracleRun oracle = dense_run(flat, &faults, nullptr, seed);
    BytecodeProgram prog = compile(flat);
    std::string broken = check_program(prog);
    if (!broken.empty()) {
        return fail(name, "invalid program: " + broken);
    }
    std::vector<int> forced(oracle.records.begin(), oracle.records.end());
    ShotState state(prog);
    ShotRng rng(seed, 0);
    ShotControls controls;
    controls.forced_faults = &faults;
    controls.forced_outcomes = &forced;
    try {
        run_shot(prog, state, rng, controls);
    } catch (const std::exception &e) {
        return fail(name, std::string("runtime rejected the oracle trajectory: ") + e.what());
    }
    if (state.accepted != oracle.accepted) {
        return fail(name, "post-selection verdict differs");
    }
    if (!oracle.accepted) {
        return {name, true, "rejected by post-selection"};
    }
    if (state.records != oracle.records) {
        return fail(name, "measurement records differ");
    }
    if (state.detectors != oracle.detectors || state.observables != oracle.observables) {
        return fail(name, "detector or observable bits differ");
    }
    double f = fidelity(expand_factored(prog, state), oracle.state);
    std::ostringstream detail;
    detail.precision(15);
    detail << "fidelity " << f;
    return {name, f >= 1 - 1e-10, detail.str()};
}

Circuit circuit_prefix(const Circuit &flat, size_t count) {
    Circuit c;
    c.flat = true;
    c.instructions.assign(flat.instructions.begin(), flat.instructions.begin() + count);
    return c;
}

CheckResult check_checkpoints(const Circuit &circuit, const std::map<uint32_t, uint32_t> &faults, uint64_t seed) {
    Circuit flat = circuit.flat ? circuit : flatten(circuit);
    for (size_t i = 1; i <= flat.instructions.size(); i++) {
        CheckResult r = check_oracle_equivalence(circuit_prefix(flat, i), faults, seed);
        if (!r.passed) {
            r.name = "checkpoint-equivalence";
            r.detail = "after instruction " + std::to_string(i) + ": " + r.detail;
            return r;
        }
    }
    return {"checkpoint-equivalence", true, std::to_string(flat.instructions.size()) + " checkpoints"};
}

CheckResult check_mirror(const Circuit &circuit, uint64_t shots, uint64_t seed) {
    Circuit flat = circuit.flat ? circuit : flatten(circuit);
    std::erase_if(flat.instructions, [](const Instruction &inst) { return is_noise(inst.op); });
    BytecodeProgram prog = compile(flat);
    uint64_t bad = 0;
    sample(prog, shots, seed, {}, [&](uint64_t, const ShotRecord &r) {
        for (uint8_t b : r.measurements) {
            if (b) {
                bad++;
                return;
            }
        }
    });
    return {"mirror", bad == 0, std::to_string(bad) + " of " + std::to_string(shots) + " shots nonzero"};
}

CheckResult check_single_faults(const Circuit &circuit, uint64_t seed, size_t limit) {
    Circuit flat = circuit.flat ? circuit : flatten(circuit);
    size_t tried = 0;
    uint32_t site = 0;
    for (const auto &inst : flat.instructions) {
        if (!is_noise(inst.op)) {
            continue;
        }
        size_t cases = noise_cases(inst).size();
        for (size_t i = 0; i < inst.targets.size(); i += noise_group_size(inst.op), site++) {
            for (uint32_t c = 0; c < cases && tried < limit; c++, tried++) {
                CheckResult r = check_oracle_equivalence(flat, {{site, c}}, seed);
                if (!r.passed) {
                    r.name = "single-fault";
                    r.detail = "site " + std::to_string(site) + " case " + std::to_string(c) + ": " + r.detail;
                    return r;
                }
            }
        }
    }
    return {"single-fault", true, std::to_string(tried) + " faults replayed"};
}

CheckResult check_structure(const BytecodeProgram &prog) {
    std::string broken = check_program(prog);
    return {"structure", broken.empty(), broken.empty() ? "ok" : "violated invariant: " + broken};
}

BytecodeProgram corrupt_program(BytecodeProgram prog, const std::string &kind) {
    if (kind == "axis-operand") {
        BytecodeInstr in;
        in.op = VmOp::ARRAY_ROT;
        in.pos_a = prog.k_max + 1;
        in.angle = 0.1;
        prog.instrs.insert(prog.instrs.begin(), in);
        prog.active_schedule.insert(prog.active_schedule.begin(), 0);
    } else if (kind == "schedule") {
        if (prog.active_schedule.empty()) {
            prog.instrs.push_back(BytecodeInstr{});
            prog.active_schedule.push_back(0);
        }
        prog.active_schedule.back() += 1;
    } else if (kind == "record") {
        prog.parity_lists.push_back({prog.layout.total_records()});
        BytecodeInstr in;
        in.op = VmOp::DETECTOR;
        in.aux = static_cast<uint32_t>(prog.parity_lists.size() - 1);
        prog.instrs.push_back(in);
        prog.active_schedule.push_back(prog.active_schedule.empty() ? 0 : prog.active_schedule.back());
    } else {
        throw std::invalid_argument("unknown corruption kind '" + kind + "'");
    }
    return prog;
}

}  // namespace fsim
