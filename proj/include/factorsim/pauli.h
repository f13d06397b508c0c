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

#ifndef FACTORSIM_PAULI_H
#define FACTORSIM_PAULI_H

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fsim {

/// Clifford gates that the frame machinery knows how to conjugate through.
enum class Gate : uint8_t { I, X, Y, Z, H, S, S_DAG, CX, CY, CZ, SWAP };

bool gate_is_two_qubit(Gate g);
Gate gate_dagger(Gate g);
const char *gate_name(Gate g);

/// An N-qubit Pauli operator i^phase * (P_0 ⊗ ... ⊗ P_{N-1}) with each P_j in {I, X, Y, Z}.
///
/// Letters are stored as packed bits: x=1,z=0 is X; x=0,z=1 is Z; x=z=1 is Y. The phase exponent
/// is relative to the Hermitian letters, so a string is Hermitian iff its phase exponent is even.
/// Converting to the product form X^x Z^z costs one extra factor of i per Y, since Y = iXZ.
class PauliString {
   public:
    PauliString() = default;
    explicit PauliString(size_t num_qubits);

    /// Parses dense text like "+X_ZY" or "-iXX". An optional sign prefix is one of
    /// "+", "-", "i", "+i", "-i". Accepts "I" or "_" for identity.
    static PauliString from_str(std::string_view text);
    /// Parses sparse text like "+X0*Z3" (or "-Y2") over a fixed number of qubits.
    static PauliString from_sparse(size_t num_qubits, std::string_view text);
    static PauliString single(size_t num_qubits, size_t qubit, char letter);

    size_t num_qubits() const {
        return num_qubits_;
    }
    size_t num_words() const {
        return xs_.size();
    }
    bool x(size_t q) const {
        return (xs_[q >> 6] >> (q & 63)) & 1;
    }
    bool z(size_t q) const {
        return (zs_[q >> 6] >> (q & 63)) & 1;
    }
    void set_x(size_t q, bool v);
    void set_z(size_t q, bool v);
    char letter(size_t q) const;
    void set_letter(size_t q, char letter);

    uint8_t phase_exp() const {
        return phase_;
    }
    void set_phase_exp(int e) {
        phase_ = static_cast<uint8_t>(((e % 4) + 4) % 4);
    }
    void add_phase_exp(int e) {
        set_phase_exp(phase_ + e);
    }
    bool is_negative() const {
        return phase_ == 2;
    }

    std::span<const uint64_t> xs() const {
        return xs_;
    }
    std::span<const uint64_t> zs() const {
        return zs_;
    }
    std::span<uint64_t> xs_mut() {
        return xs_;
    }
    std::span<uint64_t> zs_mut() {
        return zs_;
    }

    bool is_identity() const;
    bool has_support() const;
    bool has_x_support() const;
    bool is_hermitian() const {
        return (phase_ & 1) == 0;
    }
    size_t weight() const;
    size_t num_y() const;
    std::vector<size_t> support() const;

    PauliString &operator*=(const PauliString &rhs);
    bool operator==(const PauliString &other) const = default;

    /// Same letters, phase zeroed.
    PauliString unsigned_copy() const;

    std::string str() const;
    std::string sparse_str() const;

   private:
    size_t num_qubits_ = 0;
    std::vector<uint64_t> xs_;
    std::vector<uint64_t> zs_;
    uint8_t phase_ = 0;
};

PauliString operator*(const PauliString &a, const PauliString &b);

/// True iff the symplectic inner product vanishes.
bool commutes(const PauliString &a, const PauliString &b);

/// P <- G P G†. For two-qubit gates `a` is the control (or first) qubit and `b` the target.
void conjugate_by_gate(PauliString &p, Gate g, size_t a, size_t b = 0);

/// Q <- R Q R† with R = exp(-i * quarter_turns * (pi/4) * P). P must be Hermitian.
void conjugate_by_pauli_rotation(PauliString &q, const PauliString &p, int quarter_turns);

/// Letter-level action of a Clifford gate on one or two qubits of a Pauli.
///
/// Works on (x, z) bit pairs and returns the phase exponent change. Shared by PauliString
/// conjugation and the per-shot Pauli frame.
int conjugate_letters(Gate g, bool &xa, bool &za, bool &xb, bool &zb);

}  // namespace fsim

#endif
