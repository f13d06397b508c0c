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

#include "factorsim/pauli.h"

#include <bit>
#include <stdexcept>

namespace fsim {

bool gate_is_two_qubit(Gate g) {
    return g == Gate::CX || g == Gate::CY || g == Gate::CZ || g == Gate::SWAP;
}

Gate gate_dagger(Gate g) {
    if (g == Gate::S) {
        return Gate::S_DAG;
    }
    if (g == Gate::S_DAG) {
        return Gate::S;
    }
    return g;
}

const char *gate_name(Gate g) {
    switch (g) {
        case Gate::I:
            return "I";
        case Gate::X:
            return "X";
        case Gate::Y:
            return "Y";
        case Gate::Z:
            return "Z";
        case Gate::H:
            return "H";
        case Gate::S:
            return "S";
        case Gate::S_DAG:
            return "S_DAG";
        case Gate::CX:
            return "CX";
        case Gate::CY:
            return "CY";
        case Gate::CZ:
            return "CZ";
        case Gate::SWAP:
            return "SWAP";
    }
    return "?";
}

PauliString::PauliString(size_t num_qubits)
    : num_qubits_(num_qubits), xs_((num_qubits + 63) / 64, 0), zs_((num_qubits + 63) / 64, 0) {
}

static int parse_sign_prefix(std::string_view &text) {
    int phase = 0;
    if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
        phase = text[0] == '-' ? 2 : 0;
        text.remove_prefix(1);
    }
    if (!text.empty() && text[0] == 'i') {
        phase += 1;
        text.remove_prefix(1);
    }
    return phase;
}

PauliString PauliString::from_str(std::string_view text) {
    int phase = parse_sign_prefix(text);
    PauliString result(text.size());
    for (size_t q = 0; q < text.size(); q++) {
        result.set_letter(q, text[q]);
    }
    result.set_phase_exp(phase);
    return result;
}

PauliString PauliString::from_sparse(size_t num_qubits, std::string_view text) {
    int phase = parse_sign_prefix(text);
    PauliString result(num_qubits);
    size_t i = 0;
    while (i < text.size()) {
        if (text[i] == '*') {
            i++;
            continue;
        }
        char letter = text[i++];
        size_t q = 0;
        size_t digits = 0;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
            q = q * 10 + static_cast<size_t>(text[i] - '0');
            i++;
            digits++;
        }
        if (digits == 0 || q >= num_qubits) {
            throw std::invalid_argument("bad sparse Pauli text: " + std::string(text));
        }
        result.set_letter(q, letter);
    }
    result.set_phase_exp(phase);
    return result;
}

PauliString PauliString::single(size_t num_qubits, size_t qubit, char letter) {
    PauliString result(num_qubits);
    result.set_letter(qubit, letter);
    return result;
}

void PauliString::set_x(size_t q, bool v) {
    uint64_t m = uint64_t{1} << (q & 63);
    xs_[q >> 6] = v ? (xs_[q >> 6] | m) : (xs_[q >> 6] & ~m);
}

void PauliString::set_z(size_t q, bool v) {
    uint64_t m = uint64_t{1} << (q & 63);
    zs_[q >> 6] = v ? (zs_[q >> 6] | m) : (zs_[q >> 6] & ~m);
}

char PauliString::letter(size_t q) const {
    static constexpr char table[4] = {'_', 'X', 'Z', 'Y'};
    return table[x(q) | (z(q) << 1)];
}

void PauliString::set_letter(size_t q, char letter) {
    if (q >= num_qubits_) {
        throw std::out_of_range("qubit out of range");
    }
    switch (letter) {
        case 'I':
        case '_':
            set_x(q, false);
            set_z(q, false);
            break;
        case 'X':
            set_x(q, true);
            set_z(q, false);
            break;
        case 'Y':
            set_x(q, true);
            set_z(q, true);
            break;
        case 'Z':
            set_x(q, false);
            set_z(q, true);
            break;
        default:
            throw std::invalid_argument(std::string("not a Pauli letter: ") + letter);
    }
}

bool PauliString::has_support() const {
    for (size_t w = 0; w < xs_.size(); w++) {
        if (xs_[w] | zs_[w]) {
            return true;
        }
    }
    return false;
}

bool PauliString::has_x_support() const {
    for (uint64_t w : xs_) {
        if (w) {
            return true;
        }
    }
    return false;
}

bool PauliString::is_identity() const {
    return phase_ == 0 && !has_support();
}

size_t PauliString::weight() const {
    size_t n = 0;
    for (size_t w = 0; w < xs_.size(); w++) {
        n += std::popcount(xs_[w] | zs_[w]);
    }
    return n;
}

size_t PauliString::num_y() const {
    size_t n = 0;
    for (size_t w = 0; w < xs_.size(); w++) {
        n += std::popcount(xs_[w] & zs_[w]);
    }
    return n;
}

std::vector<size_t> PauliString::support() const {
    std::vector<size_t> out;
    for (size_t w = 0; w < xs_.size(); w++) {
        uint64_t bits = xs_[w] | zs_[w];
        while (bits) {
            out.push_back(w * 64 + static_cast<size_t>(std::countr_zero(bits)));
            bits &= bits - 1;
        }
    }
    return out;
}

PauliString &PauliString::operator*=(const PauliString &rhs) {
    if (rhs.num_qubits_ != num_qubits_) {
        throw std::invalid_argument("Pauli length mismatch");
    }
    // Work in the X^x Z^z product form: (X^x1 Z^z1)(X^x2 Z^z2) = (-1)^{z1.x2} X^{x1^x2} Z^{z1^z2}.
    int e = phase_ + rhs.phase_;
    uint64_t ys = 0;
    for (size_t w = 0; w < xs_.size(); w++) {
        ys += std::popcount(xs_[w] & zs_[w]) + std::popcount(rhs.xs_[w] & rhs.zs_[w]);
        ys += 2 * std::popcount(zs_[w] & rhs.xs_[w]);
        xs_[w] ^= rhs.xs_[w];
        zs_[w] ^= rhs.zs_[w];
        ys -= std::popcount(xs_[w] & zs_[w]);
    }
    set_phase_exp(static_cast<int>((static_cast<uint64_t>(e) + ys) & 3));
    return *this;
}

PauliString operator*(const PauliString &a, const PauliString &b) {
    PauliString r = a;
    r *= b;
    return r;
}

PauliString PauliString::unsigned_copy() const {
    PauliString r = *this;
    r.phase_ = 0;
    return r;
}

static const char *phase_prefix(uint8_t phase) {
    static const char *prefixes[4] = {"+", "+i", "-", "-i"};
    return prefixes[phase & 3];
}

std::string PauliString::str() const {
    std::string out = phase_prefix(phase_);
    for (size_t q = 0; q < num_qubits_; q++) {
        out.push_back(letter(q));
    }
    return out;
}

std::string PauliString::sparse_str() const {
    std::string out = phase_prefix(phase_);
    bool first = true;
    for (size_t q : support()) {
        if (!first) {
            out.push_back('*');
        }
        first = false;
        out.push_back(letter(q));
        out += std::to_string(q);
    }
    if (first) {
        out.push_back('I');
    }
    return out;
}

bool commutes(const PauliString &a, const PauliString &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument("Pauli length mismatch");
    }
    auto ax = a.xs(), az = a.zs(), bx = b.xs(), bz = b.zs();
    uint64_t acc = 0;
    for (size_t w = 0; w < ax.size(); w++) {
        acc ^= (ax[w] & bz[w]) ^ (az[w] & bx[w]);
    }
    return (std::popcount(acc) & 1) == 0;
}

int conjugate_letters(Gate g, bool &xa, bool &za, bool &xb, bool &zb) {
    int sign = 0;
    switch (g) {
        case Gate::I:
            break;
        case Gate::X:
            sign = za;
            break;
        case Gate::Y:
            sign = xa ^ za;
            break;
        case Gate::Z:
            sign = xa;
            break;
        case Gate::H:
            sign = xa & za;
            std::swap(xa, za);
            break;
        case Gate::S:
            // X -> Y, Y -> -X.
            sign = xa & za;
            za ^= xa;
            break;
        case Gate::S_DAG:
            // X -> -Y, Y -> X.
            sign = xa & !za;
            za ^= xa;
            break;
        case Gate::CX:
            sign = xa & zb & !(xb ^ za);
            xb ^= xa;
            za ^= zb;
            break;
        case Gate::CZ:
            sign = xa & xb & (za ^ zb);
            za ^= xb;
            zb ^= xa;
            break;
        case Gate::CY: {
            // CY = S_b CX S_b†, so conjugate by S_DAG on b, then CX, then S on b.
            bool unused_x = false, unused_z = false;
            int e = conjugate_letters(Gate::S_DAG, xb, zb, unused_x, unused_z);
            e += conjugate_letters(Gate::CX, xa, za, xb, zb);
            e += conjugate_letters(Gate::S, xb, zb, unused_x, unused_z);
            return e & 3;
        }
        case Gate::SWAP:
            std::swap(xa, xb);
            std::swap(za, zb);
            break;
    }
    return sign ? 2 : 0;
}

void conjugate_by_gate(PauliString &p, Gate g, size_t a, size_t b) {
    bool xa = p.x(a), za = p.z(a);
    bool xb = false, zb = false;
    bool two = gate_is_two_qubit(g);
    if (two) {
        if (a == b) {
            throw std::invalid_argument("two-qubit gate on a single qubit");
        }
        xb = p.x(b);
        zb = p.z(b);
    }
    int e = conjugate_letters(g, xa, za, xb, zb);
    p.set_x(a, xa);
    p.set_z(a, za);
    if (two) {
        p.set_x(b, xb);
        p.set_z(b, zb);
    }
    p.add_phase_exp(e);
}

void conjugate_by_pauli_rotation(PauliString &q, const PauliString &p, int quarter_turns) {
    int t = ((quarter_turns % 4) + 4) % 4;
    if (t == 0 || commutes(q, p)) {
        return;
    }
    // R Q R† = exp(-i t pi/2 P) Q for anticommuting Q.
    if (t == 2) {
        q.add_phase_exp(2);
        return;
    }
    PauliString out = p * q;
    out.add_phase_exp(t == 1 ? 3 : 1);
    q = std::move(out);
}

}  // namespace fsim
