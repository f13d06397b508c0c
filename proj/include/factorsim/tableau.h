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

#ifndef FACTORSIM_TABLEAU_H
#define FACTORSIM_TABLEAU_H

#include <vector>

#include "factorsim/pauli.h"

namespace fsim {

/// Conjugation map P -> U P U† of an N-qubit Clifford U, stored as the images of X_j and Z_j.
class Tableau {
   public:
    Tableau() = default;
    static Tableau identity(size_t num_qubits);

    size_t num_qubits() const {
        return xs_.size();
    }
    const PauliString &x_image(size_t q) const {
        return xs_[q];
    }
    const PauliString &z_image(size_t q) const {
        return zs_[q];
    }

    /// U P U†. Cost is O(weight(P) * N / 64).
    PauliString apply(const PauliString &p) const;

    /// U <- G U (conjugate every image by G).
    void left_mul_gate(Gate g, size_t a, size_t b = 0);
    /// U <- U G (rewrite the rows touched by G).
    void right_mul_gate(Gate g, size_t a, size_t b = 0);
    /// U <- R U with R = exp(-i t pi/4 P).
    void left_mul_pauli_rotation(const PauliString &p, int quarter_turns);
    /// U <- U R with R = exp(-i t pi/4 P).
    void right_mul_pauli_rotation(const PauliString &p, int quarter_turns);

    /// Map of `first` followed by `second`, i.e. the tableau of second * first.
    static Tableau compose(const Tableau &first, const Tableau &second);

    /// Images are Hermitian, pairwise commuting except X_j/Z_j which anticommute.
    bool is_symplectic() const;

    bool operator==(const Tableau &other) const = default;

   private:
    std::vector<PauliString> xs_;
    std::vector<PauliString> zs_;
};

/// The offline Clifford coordinate frame U_C, stored together with its inverse so that
/// Heisenberg mapping never needs a tableau inversion.
class CliffordFrame {
   public:
    CliffordFrame() = default;
    explicit CliffordFrame(size_t num_qubits)
        : forward_(Tableau::identity(num_qubits)), inverse_(Tableau::identity(num_qubits)) {
    }

    size_t num_qubits() const {
        return forward_.num_qubits();
    }
    const Tableau &forward() const {
        return forward_;
    }
    const Tableau &inverse() const {
        return inverse_;
    }

    /// A physical gate acts after the frame: U_C <- G U_C.
    void absorb_physical(Gate g, size_t a, size_t b = 0);
    /// A virtual gate acts before the frame: U_C <- U_C G.
    void append_virtual(Gate g, size_t a, size_t b = 0);
    void append_virtual_rotation(const PauliString &p, int quarter_turns);

    /// U_C† P U_C.
    PauliString heisenberg_map(const PauliString &physical) const {
        return inverse_.apply(physical);
    }
    /// U_C P U_C†.
    PauliString to_physical(const PauliString &virt) const {
        return forward_.apply(virt);
    }

    bool operator==(const CliffordFrame &other) const = default;

   private:
    Tableau forward_;
    Tableau inverse_;
};

}  // namespace fsim

#endif
