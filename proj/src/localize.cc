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

#include "factorsim/localize.h"

#include <stdexcept>

namespace fsim {

LocalizationResult localize(const PauliString &pauli, const std::vector<bool> &active) {
    if (!pauli.has_support()) {
        throw std::invalid_argument("cannot localize the identity");
    }
    if (!pauli.is_hermitian()) {
        throw std::invalid_argument("cannot localize a non-Hermitian Pauli");
    }
    size_t n = pauli.num_qubits();
    PauliString work = pauli;
    LocalizationResult result;
    auto emit = [&](Gate g, size_t a, size_t b) {
        result.gates.push_back({g, static_cast<uint32_t>(a), static_cast<uint32_t>(b)});
        conjugate_by_gate(work, g, a, b);
    };

    std::vector<size_t> support = pauli.support();
    if (pauli.has_x_support()) {
        size_t pivot = n;
        for (size_t q : support) {
            if (pauli.x(q) && !active[q]) {
                pivot = q;
                break;
            }
        }
        if (pivot == n) {
            for (size_t q : support) {
                if (pauli.x(q)) {
                    pivot = q;
                    break;
                }
            }
        }
        for (size_t q : support) {
            if (q != pivot && pauli.x(q)) {
                emit(Gate::CX, pivot, q);
            }
        }
        for (size_t q : work.support()) {
            if (q != pivot && work.z(q)) {
                emit(Gate::CZ, pivot, q);
            }
        }
        if (work.z(pivot)) {
            emit(Gate::S, pivot, 0);
        }
        result.axis = static_cast<uint32_t>(pivot);
        result.basis = 'X';
    } else {
        size_t pivot = n;
        for (size_t q : support) {
            if (active[q]) {
                pivot = q;
                break;
            }
        }
        if (pivot == n) {
            pivot = support.front();
        }
        for (size_t q : support) {
            if (q != pivot) {
                emit(Gate::CX, q, pivot);
            }
        }
        result.axis = static_cast<uint32_t>(pivot);
        result.basis = 'Z';
    }
    if (work.weight() != 1) {
        throw std::logic_error("localization failed to reach a single qubit");
    }
    result.sign = work.phase_exp() == 2 ? -1 : 1;
    return result;
}

GateEffect classify_gate(const VirtualGate &g, const std::vector<bool> &active) {
    switch (g.gate) {
        case Gate::CX:
            if (!active[g.a]) {
                return GateEffect::FrameOnly;
            }
            if (active[g.b]) {
                return GateEffect::Array;
            }
            throw std::logic_error("CX from an active control onto a dormant target");
        case Gate::CZ:
            return active[g.a] && active[g.b] ? GateEffect::Array : GateEffect::FrameOnly;
        case Gate::S:
        case Gate::S_DAG:
        case Gate::Z:
            return active[g.a] ? GateEffect::Array : GateEffect::FrameOnly;
        default:
            if (!active[g.a]) {
                throw std::logic_error(std::string(gate_name(g.gate)) + " on a dormant qubit is not frame-only");
            }
            return GateEffect::Array;
    }
}

}  // namespace fsim
