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

#include "factorsim/tableau.h"

#include <bit>
#include <stdexcept>

namespace fsim {

Tableau Tableau::identity(size_t num_qubits) {
    Tableau t;
    t.xs_.reserve(num_qubits);
    t.zs_.reserve(num_qubits);
    for (size_t q = 0; q < num_qubits; q++) {
        t.xs_.push_back(PauliString::single(num_qubits, q, 'X'));
        t.zs_.push_back(PauliString::single(num_qubits, q, 'Z'));
    }
    return t;
}

PauliString Tableau::apply(const PauliString &p) const {
    size_t n = num_qubits();
    if (p.num_qubits() != n) {
        throw std::invalid_argument("Pauli length does not match tableau");
    }
    PauliString out(n);
    // Y_j = i X_j Z_j, so each Y contributes one factor of i on top of the images.
    out.set_phase_exp(static_cast<int>(p.phase_exp() + p.num_y()));
    auto xs = p.xs();
    auto zs = p.zs();
    for (size_t w = 0; w < xs.size(); w++) {
        uint64_t bits = xs[w] | zs[w];
        while (bits) {
            size_t q = w * 64 + static_cast<size_t>(std::countr_zero(bits));
            bits &= bits - 1;
            if (p.x(q)) {
                out *= xs_[q];
            }
            if (p.z(q)) {
                out *= zs_[q];
            }
        }
    }
    return out;
}

void Tableau::left_mul_gate(Gate g, size_t a, size_t b) {
    for (size_t q = 0; q < num_qubits(); q++) {
        conjugate_by_gate(xs_[q], g, a, b);
        conjugate_by_gate(zs_[q], g, a, b);
    }
}

void Tableau::right_mul_gate(Gate g, size_t a, size_t b) {
    size_t n = num_qubits();
    auto image_of = [&](size_t q, char letter) {
        PauliString gen = PauliString::single(n, q, letter);
        conjugate_by_gate(gen, g, a, b);
        return apply(gen);
    };
    PauliString xa = image_of(a, 'X');
    PauliString za = image_of(a, 'Z');
    if (gate_is_two_qubit(g)) {
        PauliString xb = image_of(b, 'X');
        PauliString zb = image_of(b, 'Z');
        xs_[b] = std::move(xb);
        zs_[b] = std::move(zb);
    }
    xs_[a] = std::move(xa);
    zs_[a] = std::move(za);
}

void Tableau::left_mul_pauli_rotation(const PauliString &p, int quarter_turns) {
    for (size_t q = 0; q < num_qubits(); q++) {
        conjugate_by_pauli_rotation(xs_[q], p, quarter_turns);
        conjugate_by_pauli_rotation(zs_[q], p, quarter_turns);
    }
}

void Tableau::right_mul_pauli_rotation(const PauliString &p, int quarter_turns) {
    size_t n = num_qubits();
    std::vector<std::pair<size_t, PauliString>> new_x, new_z;
    for (size_t q = 0; q < n; q++) {
        if (p.x(q) || p.z(q)) {
            PauliString gx = PauliString::single(n, q, 'X');
            PauliString gz = PauliString::single(n, q, 'Z');
            conjugate_by_pauli_rotation(gx, p, quarter_turns);
            conjugate_by_pauli_rotation(gz, p, quarter_turns);
            new_x.emplace_back(q, apply(gx));
            new_z.emplace_back(q, apply(gz));
        }
    }
    for (auto &[q, img] : new_x) {
        xs_[q] = std::move(img);
    }
    for (auto &[q, img] : new_z) {
        zs_[q] = std::move(img);
    }
}

Tableau Tableau::compose(const Tableau &first, const Tableau &second) {
    if (first.num_qubits() != second.num_qubits()) {
        throw std::invalid_argument("tableau size mismatch");
    }
    Tableau out;
    for (size_t q = 0; q < first.num_qubits(); q++) {
        out.xs_.push_back(second.apply(first.xs_[q]));
        out.zs_.push_back(second.apply(first.zs_[q]));
    }
    return out;
}

bool Tableau::is_symplectic() const {
    size_t n = num_qubits();
    for (size_t i = 0; i < n; i++) {
        if (!xs_[i].is_hermitian() || !zs_[i].is_hermitian()) {
            return false;
        }
        for (size_t j = 0; j < n; j++) {
            if (commutes(xs_[i], zs_[j]) != (i != j)) {
                return false;
            }
            if (j > i && (!commutes(xs_[i], xs_[j]) || !commutes(zs_[i], zs_[j]))) {
                return false;
            }
        }
    }
    return true;
}

void CliffordFrame::absorb_physical(Gate g, size_t a, size_t b) {
    forward_.left_mul_gate(g, a, b);
    inverse_.right_mul_gate(gate_dagger(g), a, b);
}

void CliffordFrame::append_virtual(Gate g, size_t a, size_t b) {
    forward_.right_mul_gate(g, a, b);
    inverse_.left_mul_gate(gate_dagger(g), a, b);
}

void CliffordFrame::append_virtual_rotation(const PauliString &p, int quarter_turns) {
    forward_.right_mul_pauli_rotation(p, quarter_turns);
    inverse_.left_mul_pauli_rotation(p, -quarter_turns);
}

}  // namespace fsim
