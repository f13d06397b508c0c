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

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "factorsim/bytecode.h"
#include "json.hpp"

namespace fsim {

const char *vm_op_name(VmOp op) {
    switch (op) {
        case VmOp::FRAME_CLIFFORD:
            return "FRAME_CLIFFORD";
        case VmOp::PHASE_SCALAR:
            return "PHASE_SCALAR";
        case VmOp::EXPAND:
            return "EXPAND";
        case VmOp::EXPAND_ROT:
            return "EXPAND_ROT";
        case VmOp::ARRAY_ROT:
            return "ARRAY_ROT";
        case VmOp::ARRAY_GATE:
            return "ARRAY_GATE";
        case VmOp::MEAS_DORMANT_STATIC:
            return "MEAS_DORMANT_STATIC";
        case VmOp::MEAS_DORMANT_RANDOM:
            return "MEAS_DORMANT_RANDOM";
        case VmOp::MEAS_ACTIVE_INTERFERE:
            return "MEAS_ACTIVE_INTERFERE";
        case VmOp::COND_FRAME_PAULI:
            return "COND_FRAME_PAULI";
        case VmOp::NOISE_BLOCK:
            return "NOISE_BLOCK";
        case VmOp::DETECTOR:
            return "DETECTOR";
        case VmOp::OBSERVABLE:
            return "OBSERVABLE";
        case VmOp::POSTSELECT:
            return "POSTSELECT";
    }
    return "?";
}

FramePauli FramePauli::from_pauli(const PauliString &p) {
    FramePauli f;
    auto xs = p.xs();
    auto zs = p.zs();
    for (size_t w = 0; w < xs.size(); w++) {
        if (xs[w] | zs[w]) {
            f.words.push_back(static_cast<uint32_t>(w));
            f.xs.push_back(xs[w]);
            f.zs.push_back(zs[w]);
        }
    }
    f.xz_phase = static_cast<uint8_t>((p.phase_exp() + p.num_y()) & 3);
    return f;
}

namespace {

class Planner {
   public:
    explicit Planner(const HirProgram &hir)
        : hir_(hir), w_(hir.num_qubits), active_(hir.num_qubits, false), pos_of_(hir.num_qubits, -1) {
        prog_.num_qubits = hir.num_qubits;
        prog_.layout = hir.layout;
        prog_.stats = hir.stats;
        prog_.noise.case_begin.push_back(0);
        prog_.noise.cumulative_hazard.push_back(0);
    }

    BytecodeProgram run() {
        for (const auto &op : hir_.ops) {
            std::visit([&](const auto &o) { lower(o); }, op);
        }
        prog_.k_max = 0;
        for (uint32_t k : prog_.active_schedule) {
            prog_.k_max = std::max(prog_.k_max, k);
        }
        prog_.stats.k_max = prog_.k_max;
        prog_.final_frame = Tableau::compose(w_.inverse(), hir_.final_frame.forward());
        prog_.final_frame_inverse = Tableau::compose(hir_.final_frame.inverse(), w_.forward());
        prog_.final_axis_qubits = qubit_at_;
        return std::move(prog_);
    }

   private:
    void emit(BytecodeInstr in) {
        prog_.instrs.push_back(in);
        prog_.active_schedule.push_back(k());
    }

    uint32_t k() const {
        return static_cast<uint32_t>(qubit_at_.size());
    }

    uint32_t pos(uint32_t q) const {
        return static_cast<uint32_t>(pos_of_[q]);
    }

    void frame_gate(Gate g, uint32_t a, uint32_t b = 0) {
        BytecodeInstr in;
        in.op = VmOp::FRAME_CLIFFORD;
        in.gate = g;
        in.qubit_a = a;
        in.qubit_b = b;
        emit(in);
        w_.absorb_physical(g, a, b);
    }

    void array_gate(Gate g, uint32_t a, uint32_t b = 0) {
        BytecodeInstr in;
        in.op = VmOp::ARRAY_GATE;
        in.gate = g;
        in.qubit_a = a;
        in.qubit_b = b;
        in.pos_a = pos(a);
        in.pos_b = gate_is_two_qubit(g) ? pos(b) : 0;
        emit(in);
    }

    void apply_localization(const LocalizationResult &loc) {
        for (const auto &g : loc.gates) {
            GateEffect effect = classify_gate(g, active_);
            frame_gate(g.gate, g.a, g.b);
            if (effect == GateEffect::Array) {
                array_gate(g.gate, g.a, g.b);
            }
        }
    }

    void lower(const RotOp &rot) {
        PauliString gen = w_.to_physical(rot.generator);
        double angle = rot.angle;
        if (gen.is_negative()) {
            gen.set_phase_exp(0);
            angle = -angle;
        }
        LocalizationResult loc = localize(gen, active_);
        apply_localization(loc);
        angle *= loc.sign;
        uint32_t v = loc.axis;
        if (loc.basis == 'X') {
            frame_gate(Gate::H, v);
            if (active_[v]) {
                array_gate(Gate::H, v);
            } else {
                active_[v] = true;
                pos_of_[v] = static_cast<int>(k());
                qubit_at_.push_back(v);
                BytecodeInstr in;
                in.op = VmOp::EXPAND;
                in.qubit_a = v;
                in.pos_a = pos(v);
                emit(in);
            }
        }
        BytecodeInstr in;
        in.qubit_a = v;
        in.angle = angle;
        if (active_[v]) {
            in.op = VmOp::ARRAY_ROT;
            in.pos_a = pos(v);
        } else {
            in.op = VmOp::PHASE_SCALAR;
        }
        emit(in);
    }

    void lower(const MeasOp &meas) {
        PauliString obs = w_.to_physical(meas.observable);
        bool flip = obs.is_negative();
        obs.set_phase_exp(0);
        LocalizationResult loc = localize(obs, active_);
        apply_localization(loc);
        flip ^= loc.sign < 0;
        uint32_t v = loc.axis;
        BytecodeInstr in;
        in.qubit_a = v;
        in.record = meas.record;
        in.flip = flip;
        if (loc.basis == 'X') {
            frame_gate(Gate::H, v);
            if (active_[v]) {
                array_gate(Gate::H, v);
            } else {
                in.op = VmOp::MEAS_DORMANT_RANDOM;
                emit(in);
                return;
            }
        }
        if (!active_[v]) {
            in.op = VmOp::MEAS_DORMANT_STATIC;
            emit(in);
            return;
        }
        in.op = VmOp::MEAS_ACTIVE_INTERFERE;
        in.basis = 'Z';
        in.pos_a = pos(v);
        retire(v);
        prog_.stats.active_measurements++;
        emit(in);
    }

    void retire(uint32_t v) {
        uint32_t p = pos(v);
        qubit_at_.erase(qubit_at_.begin() + p);
        for (uint32_t i = p; i < qubit_at_.size(); i++) {
            pos_of_[qubit_at_[i]] = static_cast<int>(i);
        }
        pos_of_[v] = -1;
        active_[v] = false;
    }

    uint32_t add_pauli(const PauliString &p) {
        prog_.paulis.push_back(FramePauli::from_pauli(p));
        return static_cast<uint32_t>(prog_.paulis.size() - 1);
    }

    uint32_t add_parity(const std::vector<uint32_t> &recs) {
        prog_.parity_lists.push_back(recs);
        return static_cast<uint32_t>(prog_.parity_lists.size() - 1);
    }

    void lower(const NoiseOp &noise) {
        NoiseTable &t = prog_.noise;
        if (noise.site != t.num_sites()) {
            throw std::logic_error("noise sites out of order");
        }
        double p = std::min(1.0, noise.total_probability());
        t.site_probability.push_back(p);
        double hazard = 0;
        if (p >= 1) {
            t.certain_sites.push_back(noise.site);
        } else {
            hazard = -std::log1p(-p);
        }
        t.cumulative_hazard.push_back(t.cumulative_hazard.back() + hazard);
        double acc = 0;
        for (const auto &c : noise.cases) {
            acc += c.probability;
            t.case_probability.push_back(c.probability);
            t.case_cdf.push_back(p > 0 ? std::min(1.0, acc / noise.total_probability()) : 1.0);
            t.case_pauli.push_back(add_pauli(w_.to_physical(c.pauli)));
        }
        t.case_begin.push_back(static_cast<uint32_t>(t.case_cdf.size()));
        BytecodeInstr in;
        in.op = VmOp::NOISE_BLOCK;
        in.aux = noise.site;
        in.aux2 = noise.site + 1;
        emit(in);
    }

    void lower(const CondPauliOp &cond) {
        BytecodeInstr in;
        in.op = VmOp::COND_FRAME_PAULI;
        in.record = cond.record;
        in.aux = add_pauli(w_.to_physical(cond.pauli));
        emit(in);
    }

    void lower(const DetectorOp &det) {
        BytecodeInstr in;
        in.op = VmOp::DETECTOR;
        in.record = det.index;
        in.aux = add_parity(det.records);
        emit(in);
    }

    void lower(const ObservableOp &obs) {
        BytecodeInstr in;
        in.op = VmOp::OBSERVABLE;
        in.record = obs.index;
        in.aux = add_parity(obs.records);
        emit(in);
    }

    void lower(const PostSelectOp &ps) {
        BytecodeInstr in;
        in.op = VmOp::POSTSELECT;
        in.aux = add_parity(ps.records);
        in.flip = ps.expected;
        emit(in);
    }

    const HirProgram &hir_;
    BytecodeProgram prog_;
    // Product of all localization gates so far; maps HIR coordinates to runtime coordinates.
    CliffordFrame w_;
    std::vector<bool> active_;
    std::vector<int> pos_of_;
    std::vector<uint32_t> qubit_at_;
};

bool touches_array(VmOp op) {
    return op == VmOp::EXPAND || op == VmOp::EXPAND_ROT || op == VmOp::ARRAY_ROT || op == VmOp::ARRAY_GATE ||
           op == VmOp::MEAS_ACTIVE_INTERFERE;
}

std::string rotation_suffix(double angle) {
    double t = std::numbers::pi / 8;
    if (std::abs(angle - t) < 1e-12) {
        return "_T";
    }
    if (std::abs(angle + t) < 1e-12) {
        return "_T_DAG";
    }
    std::ostringstream out;
    out << "_ROT(" << angle << ")";
    return out.str();
}

std::string frame_pauli_str(const FramePauli &f, size_t num_qubits) {
    PauliString p(num_qubits);
    for (size_t i = 0; i < f.words.size(); i++) {
        p.xs_mut()[f.words[i]] = f.xs[i];
        p.zs_mut()[f.words[i]] = f.zs[i];
    }
    p.set_phase_exp(static_cast<int>(f.xz_phase) - static_cast<int>(p.num_y()));
    return p.sparse_str();
}

std::string records_str(const std::vector<uint32_t> &recs) {
    std::string out;
    for (uint32_t r : recs) {
        out += " rec[" + std::to_string(r) + "]";
    }
    return out;
}

}  // namespace

BytecodeProgram plan_and_emit(const HirProgram &hir) {
    return Planner(hir).run();
}

std::vector<uint32_t> recompute_schedule(const std::vector<BytecodeInstr> &instrs) {
    std::vector<uint32_t> out;
    out.reserve(instrs.size());
    uint32_t k = 0;
    for (const auto &in : instrs) {
        if (in.op == VmOp::EXPAND || in.op == VmOp::EXPAND_ROT) {
            k++;
        } else if (in.op == VmOp::MEAS_ACTIVE_INTERFERE) {
            k--;
        }
        out.push_back(k);
    }
    return out;
}

BytecodeProgram optimize_bytecode(BytecodeProgram prog) {
    std::vector<BytecodeInstr> out;
    out.reserve(prog.instrs.size());
    for (const auto &in : prog.instrs) {
        if (!out.empty()) {
            BytecodeInstr &last = out.back();
            if (last.op == VmOp::EXPAND && in.op == VmOp::ARRAY_ROT && in.pos_a == last.pos_a) {
                last.op = VmOp::EXPAND_ROT;
                last.angle = in.angle;
                continue;
            }
            if (last.op == VmOp::ARRAY_GATE && last.gate == Gate::H && in.op == VmOp::MEAS_ACTIVE_INTERFERE &&
                in.basis == 'Z' && in.pos_a == last.pos_a) {
                last = in;
                last.basis = 'X';
                continue;
            }
            if (last.op == VmOp::NOISE_BLOCK && in.op == VmOp::NOISE_BLOCK && last.aux2 == in.aux) {
                last.aux2 = in.aux2;
                continue;
            }
        }
        out.push_back(in);
    }
    prog.instrs = std::move(out);
    prog.active_schedule = recompute_schedule(prog.instrs);
    return prog;
}

BytecodeProgram compile(const Circuit &circuit, const LowerOptions &options) {
    HirProgram hir = optimize_hir(lower_to_hir(circuit, options));
    return optimize_bytecode(plan_and_emit(hir));
}

ScheduleCost estimate_schedule_cost(const HirProgram &hir) {
    BytecodeProgram prog = plan_and_emit(hir);
    ScheduleCost cost;
    cost.k_max = prog.k_max;
    for (size_t i = 0; i < prog.instrs.size(); i++) {
        if (touches_array(prog.instrs[i].op)) {
            cost.work += std::ldexp(1.0, static_cast<int>(prog.active_schedule[i]));
        }
    }
    return cost;
}

std::string instr_str(const BytecodeProgram &prog, const BytecodeInstr &in) {
    std::ostringstream out;
    out << "OP_";
    switch (in.op) {
        case VmOp::FRAME_CLIFFORD:
            out << "FRAME_" << gate_name(in.gate) << ' ' << in.qubit_a;
            if (gate_is_two_qubit(in.gate)) {
                out << ' ' << in.qubit_b;
            }
            break;
        case VmOp::PHASE_SCALAR:
            out << "PHASE" << rotation_suffix(in.angle) << ' ' << in.qubit_a;
            break;
        case VmOp::EXPAND:
            out << "EXPAND " << in.qubit_a;
            break;
        case VmOp::EXPAND_ROT:
            out << "EXPAND" << rotation_suffix(in.angle) << ' ' << in.qubit_a;
            break;
        case VmOp::ARRAY_ROT:
            out << "ARRAY" << rotation_suffix(in.angle) << ' ' << in.qubit_a;
            break;
        case VmOp::ARRAY_GATE:
            out << "ARRAY_" << gate_name(in.gate) << ' ' << in.qubit_a;
            if (gate_is_two_qubit(in.gate)) {
                out << ' ' << in.qubit_b;
            }
            break;
        case VmOp::MEAS_DORMANT_STATIC:
        case VmOp::MEAS_DORMANT_RANDOM:
            out << vm_op_name(in.op) << ' ' << in.qubit_a << (in.flip ? " inverted" : "") << " -> rec[" << in.record
                << "]";
            break;
        case VmOp::MEAS_ACTIVE_INTERFERE:
            out << "MEAS_ACTIVE_INTERFERE " << in.qubit_a << " basis=" << in.basis << (in.flip ? " inverted" : "")
                << " -> rec[" << in.record << "]";
            break;
        case VmOp::COND_FRAME_PAULI:
            out << "COND_FRAME_PAULI " << frame_pauli_str(prog.paulis[in.aux], prog.num_qubits) << " if rec["
                << in.record << "]";
            break;
        case VmOp::NOISE_BLOCK:
            out << "NOISE_BLOCK sites=[" << in.aux << ".." << in.aux2 << ")";
            break;
        case VmOp::DETECTOR:
            out << "DETECTOR D" << in.record << records_str(prog.parity_lists[in.aux]);
            break;
        case VmOp::OBSERVABLE:
            out << "OBSERVABLE L" << in.record << records_str(prog.parity_lists[in.aux]);
            break;
        case VmOp::POSTSELECT:
            out << "POSTSELECT" << records_str(prog.parity_lists[in.aux]) << " == " << (in.flip ? 1 : 0);
            break;
    }
    return out.str();
}

std::string disassemble(const BytecodeProgram &prog) {
    std::string out;
    for (const auto &in : prog.instrs) {
        out += instr_str(prog, in);
        out += '\n';
    }
    return out;
}

std::string stats_json(const BytecodeProgram &prog) {
    nlohmann::ordered_json j;
    j["N"] = prog.stats.n_qubits;
    j["C"] = prog.stats.clifford_ops;
    j["M"] = prog.stats.measurements;
    j["T"] = prog.stats.nonclifford_rotations;
    j["E"] = prog.stats.noise_mechanisms;
    j["M_active"] = prog.stats.active_measurements;
    j["k_max"] = prog.k_max;
    j["instructions"] = prog.instrs.size();
    return j.dump(2);
}

std::string check_program(const BytecodeProgram &prog) {
    if (prog.active_schedule.size() != prog.instrs.size()) {
        return "schedule-length";
    }
    uint32_t total_records = prog.layout.total_records();
    uint32_t k = 0;
    uint32_t peak = 0;
    for (size_t i = 0; i < prog.instrs.size(); i++) {
        const auto &in = prog.instrs[i];
        if (in.qubit_a >= std::max<size_t>(prog.num_qubits, 1) ||
            (gate_is_two_qubit(in.gate) && in.qubit_b >= prog.num_qubits)) {
            return "qubit-operand-range";
        }
        switch (in.op) {
            case VmOp::EXPAND:
            case VmOp::EXPAND_ROT:
                if (in.pos_a != k) {
                    return "expand-axis-position";
                }
                k++;
                break;
            case VmOp::ARRAY_ROT:
            case VmOp::ARRAY_GATE:
                if (in.pos_a >= k || (in.op == VmOp::ARRAY_GATE && gate_is_two_qubit(in.gate) &&
                                      (in.pos_b >= k || in.pos_b == in.pos_a))) {
                    return "active-axis-operand";
                }
                break;
            case VmOp::MEAS_ACTIVE_INTERFERE:
                if (in.pos_a >= k) {
                    return "active-axis-operand";
                }
                k--;
                [[fallthrough]];
            case VmOp::MEAS_DORMANT_STATIC:
            case VmOp::MEAS_DORMANT_RANDOM:
                if (in.record >= total_records) {
                    return "record-index-range";
                }
                break;
            case VmOp::COND_FRAME_PAULI:
                if (in.record >= total_records || in.aux >= prog.paulis.size()) {
                    return "conditional-operand-range";
                }
                break;
            case VmOp::NOISE_BLOCK:
                if (in.aux >= in.aux2 || in.aux2 > prog.noise.num_sites()) {
                    return "noise-block-range";
                }
                break;
            case VmOp::DETECTOR:
            case VmOp::OBSERVABLE:
            case VmOp::POSTSELECT:
                if (in.aux >= prog.parity_lists.size()) {
                    return "parity-list-range";
                }
                for (uint32_t r : prog.parity_lists[in.aux]) {
                    if (r >= total_records) {
                        return "record-index-range";
                    }
                }
                break;
            default:
                break;
        }
        peak = std::max(peak, k);
        if (prog.active_schedule[i] != k) {
            return "active-schedule";
        }
    }
    if (peak != prog.k_max) {
        return "k-max";
    }
    if (k != prog.final_axis_qubits.size()) {
        return "final-axis-map";
    }
    return "";
}

}  // namespace fsim
