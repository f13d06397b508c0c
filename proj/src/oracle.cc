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

#include "factorsim/oracle.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fsim {

namespace {

void check_size(size_t n) {
    if (n > kOracleMaxQubits) {
        throw std::invalid_argument("dense oracle supports at most " + std::to_string(kOracleMaxQubits) +
                                    " qubits, got " + std::to_string(n));
    }
}

Amp i_pow(int e) {
    static const Amp table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[e & 3];
}

std::vector<Amp> pauli_times(const std::vector<Amp> &v, const PauliString &p) {
    size_t xmask = 0, zmask = 0;
    for (size_t q : p.support()) {
        if (p.x(q)) {
            xmask |= size_t{1} << q;
        }
        if (p.z(q)) {
            zmask |= size_t{1} << q;
        }
    }
    Amp ph = i_pow(p.phase_exp() + static_cast<int>(p.num_y()));
    std::vector<Amp> out(v.size());
    for (size_t b = 0; b < v.size(); b++) {
        Amp c = ph * v[b];
        out[b ^ xmask] = (std::popcount(b & zmask) & 1) ? -c : c;
    }
    return out;
}

void apply_single(DenseState &s, size_t q, Amp m00, Amp m01, Amp m10, Amp m11) {
    size_t bit = size_t{1} << q;
    for (size_t i = 0; i < s.amplitudes.size(); i++) {
        if (i & bit) {
            continue;
        }
        Amp u = s.amplitudes[i], v = s.amplitudes[i | bit];
        s.amplitudes[i] = m00 * u + m01 * v;
        s.amplitudes[i | bit] = m10 * u + m11 * v;
    }
}

}  // namespace

DenseState DenseState::zero(size_t num_qubits) {
    check_size(num_qubits);
    DenseState s;
    s.num_qubits = num_qubits;
    s.amplitudes.assign(size_t{1} << num_qubits, 0);
    s.amplitudes[0] = 1;
    return s;
}

void apply_gate(DenseState &s, Gate g, size_t a, size_t b) {
    const double r = std::sqrt(0.5);
    const Amp I(0, 1);
    switch (g) {
        case Gate::I:
            return;
        case Gate::X:
            return apply_single(s, a, 0, 1, 1, 0);
        case Gate::Y:
            return apply_single(s, a, 0, -I, I, 0);
        case Gate::Z:
            return apply_single(s, a, 1, 0, 0, -1);
        case Gate::H:
            return apply_single(s, a, r, r, r, -r);
        case Gate::S:
            return apply_single(s, a, 1, 0, 0, I);
        case Gate::S_DAG:
            return apply_single(s, a, 1, 0, 0, -I);
        default:
            break;
    }
    size_t ab = size_t{1} << a, bb = size_t{1} << b;
    auto &v = s.amplitudes;
    for (size_t i = 0; i < v.size(); i++) {
        switch (g) {
            case Gate::CX:
                if ((i & ab) && !(i & bb)) {
                    std::swap(v[i], v[i | bb]);
                }
                break;
            case Gate::CY:
                if ((i & ab) && !(i & bb)) {
                    Amp u = v[i], w = v[i | bb];
                    v[i] = -I * w;
                    v[i | bb] = I * u;
                }
                break;
            case Gate::CZ:
                if ((i & ab) && (i & bb)) {
                    v[i] = -v[i];
                }
                break;
            case Gate::SWAP:
                if ((i & ab) && !(i & bb)) {
                    std::swap(v[i], v[(i ^ ab) | bb]);
                }
                break;
            default:
                throw std::invalid_argument("unsupported gate in dense oracle");
        }
    }
}

void apply_pauli(DenseState &s, const PauliString &p) {
    s.amplitudes = pauli_times(s.amplitudes, p);
}

void apply_rotation(DenseState &s, const PauliString &p, double angle) {
    std::vector<Amp> pv = pauli_times(s.amplitudes, p);
    Amp c = std::cos(angle), m = Amp(0, -std::sin(angle));
    for (size_t i = 0; i < pv.size(); i++) {
        s.amplitudes[i] = c * s.amplitudes[i] + m * pv[i];
    }
}

double expectation(const DenseState &s, const PauliString &p) {
    std::vector<Amp> pv = pauli_times(s.amplitudes, p);
    Amp acc = 0;
    for (size_t i = 0; i < pv.size(); i++) {
        acc += std::conj(s.amplitudes[i]) * pv[i];
    }
    return acc.real();
}

bool measure_pauli(DenseState &s, const PauliString &p, int forced, ShotRng &rng) {
    std::vector<Amp> pv = pauli_times(s.amplitudes, p);
    Amp acc = 0;
    for (size_t i = 0; i < pv.size(); i++) {
        acc += std::conj(s.amplitudes[i]) * pv[i];
    }
    double p0 = std::clamp((1 + acc.real()) / 2, 0.0, 1.0);
    bool m;
    if (forced >= 0) {
        m = forced != 0;
        if ((m ? 1 - p0 : p0) < 1e-12) {
            throw std::runtime_error("forced outcome has zero probability");
        }
    } else {
        m = rng.uniform() >= p0;
    }
    double sign = m ? -1 : 1;
    double norm = 1 / std::sqrt(m ? 1 - p0 : p0);
    for (size_t i = 0; i < pv.size(); i++) {
        s.amplitudes[i] = (s.amplitudes[i] + sign * pv[i]) * (0.5 * norm);
    }
    return m;
}

OracleRun dense_run(const Circuit &circuit, const std::map<uint32_t, uint32_t> *faults,
                    const std::vector<int> *forced, uint64_t seed) {
    Circuit flat = circuit.flat ? circuit : flatten(circuit);
    size_t n = flat.num_qubits();
    OracleRun run;
    run.state = DenseState::zero(n);
    ShotRng rng(seed, 0);
    size_t visible = flat.num_measurements();
    size_t hidden = 0;
    for (const auto &inst : flat.instructions) {
        if (inst.op == OpCode::R) {
            hidden += inst.targets.size();
        }
    }
    std::vector<uint8_t> visible_bits(visible, 0);
    std::vector<uint8_t> hidden_bits(hidden, 0);
    size_t next_visible = 0;
    size_t next_hidden = 0;
    size_t next_detector = 0;
    run.detectors.assign(flat.num_detectors(), 0);
    run.observables.assign(flat.num_observables(), 0);
    uint32_t site = 0;
    auto outcome_for = [&](size_t rec) { return forced && rec < forced->size() ? (*forced)[rec] : -1; };
    auto record = [&](uint32_t r) -> uint8_t {
        return r < visible ? visible_bits.at(r) : hidden_bits.at(r - visible);
    };
    auto parity = [&](const Instruction &inst) {
        uint8_t p = 0;
        for (const auto &t : inst.targets) {
            p ^= record(t.value);
        }
        return p;
    };
    for (const auto &inst : flat.instructions) {
        const auto &ts = inst.targets;
        switch (inst.op) {
            case OpCode::H:
            case OpCode::S:
            case OpCode::S_DAG:
            case OpCode::X:
            case OpCode::Y:
            case OpCode::Z:
                for (const auto &t : ts) {
                    apply_gate(run.state, clifford_gate(inst.op), t.value);
                }
                break;
            case OpCode::CX:
            case OpCode::CY:
            case OpCode::CZ:
            case OpCode::SWAP:
                for (size_t i = 0; i < ts.size(); i += 2) {
                    const Target &a = ts[i], &b = ts[i + 1];
                    if (a.is_record || b.is_record) {
                        const Target &rec = a.is_record ? a : b;
                        const Target &q = a.is_record ? b : a;
                        if (record(rec.value)) {
                            Gate g = inst.op == OpCode::CX ? Gate::X : inst.op == OpCode::CY ? Gate::Y : Gate::Z;
                            apply_gate(run.state, g, q.value);
                        }
                    } else {
                        apply_gate(run.state, clifford_gate(inst.op), a.value, b.value);
                    }
                }
                break;
            case OpCode::T:
            case OpCode::T_DAG: {
                Amp ph = std::polar(1.0, (inst.op == OpCode::T ? 1 : -1) * std::numbers::pi / 4);
                for (const auto &t : ts) {
                    apply_single(run.state, t.value, 1, 0, 0, ph);
                }
                break;
            }
            case OpCode::R_X:
            case OpCode::R_Y:
            case OpCode::R_Z: {
                char letter = inst.op == OpCode::R_X ? 'X' : inst.op == OpCode::R_Y ? 'Y' : 'Z';
                for (const auto &t : ts) {
                    apply_rotation(run.state, PauliString::single(n, t.value, letter), inst.args[0] / 2);
                }
                break;
            }
            case OpCode::M:
            case OpCode::MX:
            case OpCode::MY: {
                char letter = inst.op == OpCode::M ? 'Z' : inst.op == OpCode::MX ? 'X' : 'Y';
                for (const auto &t : ts) {
                    size_t rec = next_visible++;
                    visible_bits[rec] =
                        measure_pauli(run.state, PauliString::single(n, t.value, letter), outcome_for(rec), rng);
                }
                break;
            }
            case OpCode::R:
                for (const auto &t : ts) {
                    size_t rec = visible + next_hidden;
                    bool m = measure_pauli(run.state, PauliString::single(n, t.value, 'Z'), outcome_for(rec), rng);
                    hidden_bits[next_hidden++] = m;
                    if (m) {
                        apply_gate(run.state, Gate::X, t.value);
                    }
                }
                break;
            case OpCode::X_ERROR:
            case OpCode::Y_ERROR:
            case OpCode::Z_ERROR:
            case OpCode::DEPOLARIZE1:
            case OpCode::DEPOLARIZE2: {
                size_t group = noise_group_size(inst.op);
                auto cases = noise_cases(inst);
                for (size_t i = 0; i < ts.size(); i += group, site++) {
                    if (faults == nullptr) {
                        continue;
                    }
                    auto it = faults->find(site);
                    if (it == faults->end()) {
                        continue;
                    }
                    const std::string &letters = cases.at(it->second).letters;
                    for (size_t j = 0; j < group; j++) {
                        char c = letters[j];
                        Gate g = c == 'X' ? Gate::X : c == 'Y' ? Gate::Y : c == 'Z' ? Gate::Z : Gate::I;
                        apply_gate(run.state, g, ts[i + j].value);
                    }
                }
                break;
            }
            case OpCode::DETECTOR:
                run.detectors[next_detector++] = parity(inst);
                break;
            case OpCode::OBSERVABLE_INCLUDE: {
                size_t index = static_cast<size_t>(inst.args[0]);
                if (run.observables.size() <= index) {
                    run.observables.resize(index + 1, 0);
                }
                run.observables[index] ^= parity(inst);
                break;
            }
            case OpCode::POSTSELECT:
                if (parity(inst) != (!inst.args.empty() && inst.args[0] == 1)) {
                    run.accepted = false;
                }
                break;
            default:
                break;
        }
        if (!run.accepted) {
            break;
        }
    }
    run.observables.resize(std::max(run.observables.size(), flat.num_observables()), 0);
    run.records = visible_bits;
    run.records.insert(run.records.end(), hidden_bits.begin(), hidden_bits.end());
    return run;
}

DenseState clifford_zero_state(const Tableau &t) {
    size_t n = t.num_qubits();
    DenseState s = DenseState::zero(n);
    // Project a generic vector onto the joint +1 eigenspace of the stabilizers U Z_j U†.
    ShotRng rng(0x5eed, n);
    for (auto &a : s.amplitudes) {
        a = Amp(rng.uniform() - 0.5, rng.uniform() - 0.5);
    }
    for (size_t j = 0; j < n; j++) {
        std::vector<Amp> pv = pauli_times(s.amplitudes, t.z_image(j));
        for (size_t i = 0; i < pv.size(); i++) {
            s.amplitudes[i] = (s.amplitudes[i] + pv[i]) * 0.5;
        }
    }
    double norm = 0;
    for (const auto &a : s.amplitudes) {
        norm += std::norm(a);
    }
    for (auto &a : s.amplitudes) {
        a /= std::sqrt(norm);
    }
    return s;
}

namespace {

// Image of X^x under the tableau, as a product of commuting X images.
PauliString x_word_image(const Tableau &t, size_t x) {
    PauliString p(t.num_qubits());
    for (size_t q = 0; q < t.num_qubits(); q++) {
        if ((x >> q) & 1) {
            p *= t.x_image(q);
        }
    }
    return p;
}

}  // namespace

std::vector<std::vector<Amp>> synthesize_unitary(const Tableau &t) {
    DenseState zero = clifford_zero_state(t);
    std::vector<std::vector<Amp>> cols(zero.amplitudes.size());
    for (size_t x = 0; x < cols.size(); x++) {
        cols[x] = pauli_times(zero.amplitudes, x_word_image(t, x));
    }
    return cols;
}

DenseState expand_factored(const BytecodeProgram &prog, const ShotState &state) {
    const Tableau &u = prog.final_frame;
    size_t n = prog.num_qubits;
    check_size(n);
    DenseState zero = clifford_zero_state(u);
    DenseState out = DenseState::zero(n);
    out.amplitudes.assign(out.amplitudes.size(), 0);
    for (size_t i = 0; i < state.active.size(); i++) {
        if (state.active[i] == Amp(0, 0)) {
            continue;
        }
        size_t x = 0;
        for (size_t b = 0; b < prog.final_axis_qubits.size(); b++) {
            if ((i >> b) & 1) {
                x |= size_t{1} << prog.final_axis_qubits[b];
            }
        }
        std::vector<Amp> col = pauli_times(zero.amplitudes, x_word_image(u, x));
        for (size_t j = 0; j < col.size(); j++) {
            out.amplitudes[j] += state.active[i] * col[j];
        }
    }
    // U F U† = prod U X_q U† * prod U Z_q U† for F = X^x Z^z.
    PauliString frame(n);
    for (size_t q = 0; q < n; q++) {
        if ((state.frame_x[q >> 6] >> (q & 63)) & 1) {
            frame *= u.x_image(q);
        }
    }
    for (size_t q = 0; q < n; q++) {
        if ((state.frame_z[q >> 6] >> (q & 63)) & 1) {
            frame *= u.z_image(q);
        }
    }
    out.amplitudes = pauli_times(out.amplitudes, frame);
    for (auto &a : out.amplitudes) {
        a *= state.gamma;
    }
    return out;
}

double fidelity(const DenseState &a, const DenseState &b) {
    if (a.amplitudes.size() != b.amplitudes.size()) {
        throw std::invalid_argument("fidelity of states with different sizes");
    }
    Amp acc = 0;
    for (size_t i = 0; i < a.amplitudes.size(); i++) {
        acc += std::conj(a.amplitudes[i]) * b.amplitudes[i];
    }
    return std::norm(acc);
}

}  // namespace fsim
