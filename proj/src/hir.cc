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

#include "factorsim/hir.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace fsim {

double NoiseOp::total_probability() const {
    double total = 0;
    for (const auto &c : cases) {
        total += c.probability;
    }
    return total;
}

std::optional<int> angle_in_eighths(double angle) {
    double unit = std::numbers::pi / 8;
    double r = std::round(angle / unit);
    if (std::abs(angle - r * unit) < 1e-12 && std::abs(r) < 1e9) {
        return static_cast<int>(r);
    }
    return std::nullopt;
}

namespace {

class Lowering {
   public:
    Lowering(const Circuit &flat, const LowerOptions &options) : options_(options) {
        hir_.num_qubits = flat.num_qubits();
        hir_.final_frame = CliffordFrame(hir_.num_qubits);
        hir_.layout.num_measurements = static_cast<uint32_t>(flat.num_measurements());
        hir_.layout.num_observables = static_cast<uint32_t>(flat.num_observables());
        hir_.stats.n_qubits = hir_.num_qubits;
    }

    HirProgram run(const Circuit &flat) {
        for (const auto &inst : flat.instructions) {
            lower(inst);
        }
        hir_.layout.num_hidden = hidden_;
        hir_.layout.num_detectors = detectors_;
        hir_.stats.measurements = visible_ + hidden_;
        hir_.stats.noise_mechanisms = sites_;
        return std::move(hir_);
    }

   private:
    PauliString physical(size_t q, char letter) const {
        return PauliString::single(hir_.num_qubits, q, letter);
    }

    PauliString mapped(size_t q, char letter) const {
        return hir_.final_frame.heisenberg_map(physical(q, letter));
    }

    void add_rotation(size_t q, char letter, double angle, std::optional<int> eighths) {
        RotOp rot{mapped(q, letter), angle, eighths};
        if (rot.generator.is_negative()) {
            rot.generator.set_phase_exp(0);
            rot.angle = -rot.angle;
            if (rot.eighths) {
                rot.eighths = -*rot.eighths;
            }
        }
        hir_.ops.emplace_back(std::move(rot));
        hir_.stats.nonclifford_rotations++;
    }

    std::vector<uint32_t> records_of(const Instruction &inst) const {
        std::vector<uint32_t> out;
        for (const auto &t : inst.targets) {
            out.push_back(t.value);
        }
        return out;
    }

    void lower(const Instruction &inst) {
        const auto &ts = inst.targets;
        switch (inst.op) {
            case OpCode::H:
            case OpCode::S:
            case OpCode::S_DAG:
            case OpCode::X:
            case OpCode::Y:
            case OpCode::Z:
                for (const auto &t : ts) {
                    hir_.final_frame.absorb_physical(clifford_gate(inst.op), t.value);
                    hir_.stats.clifford_ops++;
                }
                break;
            case OpCode::CX:
            case OpCode::CY:
            case OpCode::CZ:
            case OpCode::SWAP:
                for (size_t i = 0; i < ts.size(); i += 2) {
                    const Target &a = ts[i];
                    const Target &b = ts[i + 1];
                    if (a.is_record || b.is_record) {
                        const Target &rec = a.is_record ? a : b;
                        const Target &q = a.is_record ? b : a;
                        char letter = inst.op == OpCode::CX ? 'X' : inst.op == OpCode::CY ? 'Y' : 'Z';
                        hir_.ops.emplace_back(CondPauliOp{mapped(q.value, letter), rec.value});
                    } else {
                        hir_.final_frame.absorb_physical(clifford_gate(inst.op), a.value, b.value);
                        hir_.stats.clifford_ops++;
                    }
                }
                break;
            case OpCode::T:
            case OpCode::T_DAG: {
                int e = inst.op == OpCode::T ? 1 : -1;
                for (const auto &t : ts) {
                    add_rotation(t.value, 'Z', e * std::numbers::pi / 8, e);
                }
                break;
            }
            case OpCode::R_X:
            case OpCode::R_Y:
            case OpCode::R_Z: {
                char letter = inst.op == OpCode::R_X ? 'X' : inst.op == OpCode::R_Y ? 'Y' : 'Z';
                double angle = inst.args[0] / 2;
                for (const auto &t : ts) {
                    add_rotation(t.value, letter, angle, angle_in_eighths(angle));
                }
                break;
            }
            case OpCode::M:
            case OpCode::MX:
            case OpCode::MY: {
                char letter = inst.op == OpCode::M ? 'Z' : inst.op == OpCode::MX ? 'X' : 'Y';
                for (const auto &t : ts) {
                    hir_.ops.emplace_back(MeasOp{mapped(t.value, letter), visible_++});
                }
                break;
            }
            case OpCode::R:
                for (const auto &t : ts) {
                    uint32_t rec = hir_.layout.num_measurements + hidden_++;
                    hir_.ops.emplace_back(MeasOp{mapped(t.value, 'Z'), rec});
                    hir_.ops.emplace_back(CondPauliOp{mapped(t.value, 'X'), rec});
                }
                break;
            case OpCode::X_ERROR:
            case OpCode::Y_ERROR:
            case OpCode::Z_ERROR:
            case OpCode::DEPOLARIZE1:
            case OpCode::DEPOLARIZE2: {
                size_t group = noise_group_size(inst.op);
                auto specs = noise_cases(inst);
                for (size_t i = 0; i < ts.size(); i += group) {
                    NoiseOp noise;
                    noise.site = sites_++;
                    for (const auto &spec : specs) {
                        PauliString p(hir_.num_qubits);
                        for (size_t j = 0; j < group; j++) {
                            p.set_letter(ts[i + j].value, spec.letters[j]);
                        }
                        noise.cases.push_back({spec.probability, hir_.final_frame.heisenberg_map(p)});
                    }
                    hir_.ops.emplace_back(std::move(noise));
                }
                break;
            }
            case OpCode::DETECTOR: {
                uint32_t index = detectors_++;
                auto recs = records_of(inst);
                hir_.ops.emplace_back(DetectorOp{index, recs});
                if (std::find(options_.postselect_detectors.begin(), options_.postselect_detectors.end(), index) !=
                    options_.postselect_detectors.end()) {
                    hir_.ops.emplace_back(PostSelectOp{recs, false});
                }
                break;
            }
            case OpCode::OBSERVABLE_INCLUDE:
                hir_.ops.emplace_back(ObservableOp{static_cast<uint32_t>(inst.args[0]), records_of(inst)});
                break;
            case OpCode::POSTSELECT:
                hir_.ops.emplace_back(PostSelectOp{records_of(inst), !inst.args.empty() && inst.args[0] == 1});
                break;
            case OpCode::TICK:
            case OpCode::QUBIT_COORDS:
                break;
            case OpCode::REPEAT:
                throw std::logic_error("lowering requires a flattened circuit");
        }
    }

    const LowerOptions &options_;
    HirProgram hir_;
    uint32_t visible_ = 0;
    uint32_t hidden_ = 0;
    uint32_t sites_ = 0;
    uint32_t detectors_ = 0;
};

std::string records_str(const std::vector<uint32_t> &recs) {
    std::string out;
    for (uint32_t r : recs) {
        out += " rec[" + std::to_string(r) + "]";
    }
    return out;
}

}  // namespace

HirProgram lower_to_hir(const Circuit &circuit, const LowerOptions &options) {
    Circuit flat = circuit.flat ? circuit : flatten(circuit);
    uint64_t detectors = flat.num_detectors();
    for (uint32_t d : options.postselect_detectors) {
        if (d >= detectors) {
            throw std::invalid_argument("post-selected detector D" + std::to_string(d) + " does not exist");
        }
    }
    return Lowering(flat, options).run(flat);
}

std::string hir_op_str(const HirOp &op) {
    std::ostringstream out;
    std::visit(
        [&](const auto &o) {
            using T = std::decay_t<decltype(o)>;
            if constexpr (std::is_same_v<T, RotOp>) {
                if (o.eighths == 1) {
                    out << "T " << o.generator.sparse_str();
                } else if (o.eighths == -1) {
                    out << "T_DAG " << o.generator.sparse_str();
                } else {
                    out << "ROT(" << o.angle << ") " << o.generator.sparse_str();
                }
            } else if constexpr (std::is_same_v<T, MeasOp>) {
                out << "MEAS " << o.observable.sparse_str() << " -> rec[" << o.record << "]";
            } else if constexpr (std::is_same_v<T, NoiseOp>) {
                out << "NOISE site=" << o.site;
            } else if constexpr (std::is_same_v<T, CondPauliOp>) {
                out << "COND_PAULI " << o.pauli.sparse_str() << " if rec[" << o.record << "]";
            } else if constexpr (std::is_same_v<T, DetectorOp>) {
                out << "DETECTOR D" << o.index << records_str(o.records);
            } else if constexpr (std::is_same_v<T, ObservableOp>) {
                out << "OBSERVABLE L" << o.index << records_str(o.records);
            } else {
                out << "POSTSELECT" << records_str(o.records) << " == " << (o.expected ? 1 : 0);
            }
        },
        op);
    return out.str();
}

std::string dump_hir(const HirProgram &hir) {
    std::string out;
    for (const auto &op : hir.ops) {
        out += hir_op_str(op);
        out += '\n';
    }
    return out;
}

HirProgram optimize_hir(HirProgram hir) {
    return schedule_pass(peephole_pass(std::move(hir)));
}

}  // namespace fsim
