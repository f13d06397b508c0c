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

#include "factorsim/svm.h"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace fsim {

namespace {

// i^e for e in 0..3.
Amp i_pow(int e) {
    switch (e & 3) {
        case 0:
            return {1, 0};
        case 1:
            return {0, 1};
        case 2:
            return {-1, 0};
        default:
            return {0, -1};
    }
}

class Machine {
   public:
    Machine(const BytecodeProgram &prog, ShotState &st, ShotRng &rng, const ShotControls &controls)
        : prog_(prog), st_(st), rng_(rng), controls_(controls) {
    }

    void run() {
        const auto &instrs = prog_.instrs;
        for (size_t i = 0; i < instrs.size(); i++) {
            if (!step(instrs[i])) {
                st_.executed = i + 1;
                return;
            }
            if (controls_.k_trace != nullptr) {
                controls_.k_trace->push_back(st_.k);
            }
        }
        st_.executed = instrs.size();
    }

   private:
    bool fx(uint32_t q) const {
        return (st_.frame_x[q >> 6] >> (q & 63)) & 1;
    }
    bool fz(uint32_t q) const {
        return (st_.frame_z[q >> 6] >> (q & 63)) & 1;
    }
    void set_frame(uint32_t q, bool x, bool z) {
        uint64_t bit = uint64_t{1} << (q & 63);
        st_.frame_x[q >> 6] = (st_.frame_x[q >> 6] & ~bit) | (x ? bit : 0);
        st_.frame_z[q >> 6] = (st_.frame_z[q >> 6] & ~bit) | (z ? bit : 0);
    }

    void frame_clifford(const BytecodeInstr &in) {
        bool two = gate_is_two_qubit(in.gate);
        bool xa = fx(in.qubit_a), za = fz(in.qubit_a);
        bool xb = two && fx(in.qubit_b), zb = two && fz(in.qubit_b);
        int before = (xa & za) + (xb & zb);
        int delta = conjugate_letters(in.gate, xa, za, xb, zb);
        int after = (xa & za) + (xb & zb);
        set_frame(in.qubit_a, xa, za);
        if (two) {
            set_frame(in.qubit_b, xb, zb);
        }
        int e = delta + after - before;
        if (e & 3) {
            st_.gamma *= i_pow(e);
        }
    }

    void apply_pauli(const FramePauli &p) {
        int e = p.xz_phase;
        for (size_t w = 0; w < p.words.size(); w++) {
            uint32_t word = p.words[w];
            e += 2 * std::popcount(p.zs[w] & st_.frame_x[word]);
            st_.frame_x[word] ^= p.xs[w];
            st_.frame_z[word] ^= p.zs[w];
        }
        if (e & 3) {
            st_.gamma *= i_pow(e);
        }
    }

    int forced(uint32_t record) const {
        if (controls_.forced_outcomes == nullptr || record >= controls_.forced_outcomes->size()) {
            return -1;
        }
        return (*controls_.forced_outcomes)[record];
    }

    void write_record(uint32_t record, bool m) {
        int f = forced(record);
        if (f >= 0 && f != static_cast<int>(m)) {
            throw std::runtime_error("forced outcome has zero probability");
        }
        st_.records[record] = m;
    }

    // Frame update for a retired or randomized axis left in |b>: F <- F X_q^b.
    void absorb_bit(uint32_t q, bool b) {
        if (!b) {
            return;
        }
        if (fz(q)) {
            st_.gamma = -st_.gamma;
        }
        set_frame(q, !fx(q), fz(q));
    }

    void measure_active(const BytecodeInstr &in) {
        auto &a = st_.active;
        if (in.basis == 'X') {
            kernels::h(a, in.pos_a);
        }
        double p1 = kernels::prob_one(a, in.pos_a);
        if (std::isnan(p1)) {
            throw std::runtime_error("NaN amplitude in active array at " + instr_str(prog_, in));
        }
        p1 = std::clamp(p1, 0.0, 1.0);
        bool shift = fx(in.qubit_a) ^ in.flip;
        bool b;
        int f = forced(in.record);
        if (f >= 0) {
            b = static_cast<bool>(f) ^ shift;
            if ((b ? p1 : 1 - p1) < kBranchFloor) {
                throw std::runtime_error("forced outcome has zero probability");
            }
        } else {
            b = rng_.uniform() < p1;
            if ((b ? p1 : 1 - p1) < kBranchFloor) {
                b = !b;
            }
        }
        kernels::collapse(a, in.pos_a, b, b ? p1 : 1 - p1, st_.scratch);
        st_.k--;
        st_.records[in.record] = b ^ shift;
        absorb_bit(in.qubit_a, b);
    }

    void noise_block(uint32_t begin, uint32_t end) {
        const NoiseTable &t = prog_.noise;
        if (controls_.forced_faults != nullptr) {
            auto it = controls_.forced_faults->lower_bound(begin);
            for (; it != controls_.forced_faults->end() && it->first < end; ++it) {
                apply_pauli(prog_.paulis[t.case_pauli[t.case_begin[it->first] + it->second]]);
            }
            return;
        }
        st_.fired.clear();
        if (controls_.stratum_sites != nullptr) {
            const auto &s = *controls_.stratum_sites;
            auto it = std::lower_bound(s.begin(), s.end(), begin);
            for (; it != s.end() && *it < end; ++it) {
                st_.fired.push_back(*it);
            }
        } else {
            hazard_sample(t, begin, end, rng_, st_.fired);
        }
        for (uint32_t site : st_.fired) {
            uint32_t c = sample_case(t, site, rng_);
            apply_pauli(prog_.paulis[t.case_pauli[t.case_begin[site] + c]]);
        }
    }

    bool parity(uint32_t list) const {
        bool p = false;
        for (uint32_t r : prog_.parity_lists[list]) {
            p ^= st_.records[r] != 0;
        }
        return p;
    }

    void array_gate(const BytecodeInstr &in) {
        auto &a = st_.active;
        switch (in.gate) {
            case Gate::H:
                kernels::h(a, in.pos_a);
                break;
            case Gate::S:
            case Gate::S_DAG:
                kernels::s(a, in.pos_a, in.gate == Gate::S_DAG);
                break;
            case Gate::CX:
                kernels::cx(a, in.pos_a, in.pos_b);
                break;
            case Gate::CZ:
                kernels::cz(a, in.pos_a, in.pos_b);
                break;
            default:
                throw std::logic_error(std::string("unsupported array gate ") + gate_name(in.gate));
        }
    }

    bool step(const BytecodeInstr &in) {
        switch (in.op) {
            case VmOp::FRAME_CLIFFORD:
                frame_clifford(in);
                break;
            case VmOp::PHASE_SCALAR:
                st_.gamma *= std::polar(1.0, fx(in.qubit_a) ? in.angle : -in.angle);
                break;
            case VmOp::EXPAND:
                kernels::expand(st_.active);
                st_.k++;
                break;
            case VmOp::EXPAND_ROT:
                kernels::expand(st_.active);
                st_.k++;
                kernels::rot_z(st_.active, in.pos_a, fx(in.qubit_a) ? -in.angle : in.angle);
                break;
            case VmOp::ARRAY_ROT:
                kernels::rot_z(st_.active, in.pos_a, fx(in.qubit_a) ? -in.angle : in.angle);
                break;
            case VmOp::ARRAY_GATE:
                array_gate(in);
                break;
            case VmOp::MEAS_DORMANT_STATIC:
                write_record(in.record, fx(in.qubit_a) ^ in.flip);
                break;
            case VmOp::MEAS_DORMANT_RANDOM: {
                bool shift = fx(in.qubit_a) ^ in.flip;
                int f = forced(in.record);
                bool b = f >= 0 ? (static_cast<bool>(f) ^ shift) : rng_.coin();
                st_.records[in.record] = b ^ shift;
                absorb_bit(in.qubit_a, b);
                break;
            }
            case VmOp::MEAS_ACTIVE_INTERFERE:
                measure_active(in);
                break;
            case VmOp::COND_FRAME_PAULI:
                if (st_.records[in.record]) {
                    apply_pauli(prog_.paulis[in.aux]);
                }
                break;
            case VmOp::NOISE_BLOCK:
                noise_block(in.aux, in.aux2);
                break;
            case VmOp::DETECTOR:
                st_.detectors[in.record] = parity(in.aux);
                break;
            case VmOp::OBSERVABLE:
                st_.observables[in.record] ^= parity(in.aux);
                break;
            case VmOp::POSTSELECT:
                if (parity(in.aux) != in.flip) {
                    st_.accepted = false;
                    return false;
                }
                break;
        }
        return true;
    }

    const BytecodeProgram &prog_;
    ShotState &st_;
    ShotRng &rng_;
    const ShotControls &controls_;
};

}  // namespace

ShotState::ShotState(const BytecodeProgram &prog) {
    active.reserve(size_t{1} << prog.k_max);
    if (prog.k_max > kernels::kParallelThreshold) {
        scratch.reserve(size_t{1} << prog.k_max);
    }
    size_t words = (prog.num_qubits + 63) / 64;
    frame_x.assign(words, 0);
    frame_z.assign(words, 0);
    records.assign(prog.layout.total_records(), 0);
    detectors.assign(prog.layout.num_detectors, 0);
    observables.assign(prog.layout.num_observables, 0);
    fired.reserve(prog.noise.num_sites());
    reset();
}

void ShotState::reset() {
    active.assign(1, Amp(1, 0));
    std::fill(frame_x.begin(), frame_x.end(), 0);
    std::fill(frame_z.begin(), frame_z.end(), 0);
    gamma = 1;
    k = 0;
    std::fill(records.begin(), records.end(), 0);
    std::fill(detectors.begin(), detectors.end(), 0);
    std::fill(observables.begin(), observables.end(), 0);
    accepted = true;
    executed = 0;
}

void run_shot(const BytecodeProgram &prog, ShotState &state, ShotRng &rng, const ShotControls &controls) {
    state.reset();
    Machine(prog, state, rng, controls).run();
}

ShotRecord extract_record(const BytecodeProgram &prog, const ShotState &state) {
    ShotRecord r;
    r.measurements.assign(state.records.begin(), state.records.begin() + prog.layout.num_measurements);
    r.detectors = state.detectors;
    r.observables = state.observables;
    r.accepted = state.accepted;
    return r;
}

std::vector<double> site_probabilities(const BytecodeProgram &prog) {
    return prog.noise.site_probability;
}

void sample(const BytecodeProgram &prog, uint64_t shots, uint64_t seed, const SampleOptions &options,
            const std::function<void(uint64_t, const ShotRecord &)> &sink) {
    int workers = std::max(1, options.workers);
    std::optional<StratumSampler> stratum;
    if (options.stratum) {
        stratum.emplace(prog.noise.site_probability, *options.stratum);
    }
    const uint64_t batch = 4096;
    std::vector<ShotRecord> buffer(std::min(batch, shots));
    std::vector<ShotState> states;
    states.reserve(workers);
    for (int t = 0; t < workers; t++) {
        states.emplace_back(prog);
    }
    std::vector<std::vector<uint32_t>> fired(workers);
    for (uint64_t start = 0; start < shots; start += batch) {
        int64_t count = static_cast<int64_t>(std::min(batch, shots - start));
#pragma omp parallel for num_threads(workers) schedule(dynamic, 64) if (workers > 1)
        for (int64_t j = 0; j < count; j++) {
            int t = omp_get_thread_num();
            ShotRng rng(seed, start + j);
            ShotControls controls;
            if (stratum) {
                stratum->draw(rng, fired[t]);
                controls.stratum_sites = &fired[t];
            }
            run_shot(prog, states[t], rng, controls);
            buffer[j] = extract_record(prog, states[t]);
            if (stratum) {
                buffer[j].weight = stratum->weight();
            }
        }
        for (int64_t j = 0; j < count; j++) {
            sink(start + j, buffer[j]);
        }
    }
}

std::vector<ShotRecord> sample_records(const BytecodeProgram &prog, uint64_t shots, uint64_t seed,
                                       const SampleOptions &options) {
    std::vector<ShotRecord> out;
    out.reserve(shots);
    sample(prog, shots, seed, options, [&](uint64_t, const ShotRecord &r) { out.push_back(r); });
    return out;
}

double expectation_probe(const BytecodeProgram &prog, const ShotState &state, const PauliString &observable) {
    if (!observable.is_hermitian()) {
        throw std::invalid_argument("expectation probe needs a Hermitian observable");
    }
    PauliString v = prog.final_frame_inverse.apply(observable);
    double sign = v.is_negative() ? -1 : 1;
    for (size_t w = 0; w < v.num_words(); w++) {
        int anti = std::popcount(v.xs()[w] & state.frame_z[w]) + std::popcount(v.zs()[w] & state.frame_x[w]);
        if (anti & 1) {
            sign = -sign;
        }
    }
    std::vector<int> axis_of(prog.num_qubits, -1);
    for (size_t i = 0; i < prog.final_axis_qubits.size(); i++) {
        axis_of[prog.final_axis_qubits[i]] = static_cast<int>(i);
    }
    size_t xmask = 0, zmask = 0;
    int ny = 0;
    for (size_t q : v.support()) {
        int axis = axis_of[q];
        if (axis < 0) {
            if (v.x(q)) {
                return 0;
            }
            continue;
        }
        if (v.x(q)) {
            xmask |= size_t{1} << axis;
        }
        if (v.z(q)) {
            zmask |= size_t{1} << axis;
        }
        ny += v.x(q) && v.z(q);
    }
    const auto &a = state.active;
    Amp acc = 0;
    for (size_t i = 0; i < a.size(); i++) {
        Amp term = std::conj(a[i ^ xmask]) * a[i];
        acc += (std::popcount(i & zmask) & 1) ? -term : term;
    }
    acc *= i_pow(ny);
    return sign * acc.real();
}

}  // namespace fsim
