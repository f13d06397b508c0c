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

#ifndef FACTORSIM_LOCALIZE_H
#define FACTORSIM_LOCALIZE_H

#include <vector>

#include "factorsim/pauli.h"

namespace fsim {

struct VirtualGate {
    Gate gate = Gate::I;
    uint32_t a = 0;
    uint32_t b = 0;

    bool operator==(const VirtualGate &) const = default;
};

/// V such that V P V† = sign * (X or Z on `axis`).
struct LocalizationResult {
    std::vector<VirtualGate> gates;
    uint32_t axis = 0;
    char basis = 'Z';
    int sign = 1;
};

/// Compresses a non-identity Hermitian Pauli onto a single virtual qubit.
///
/// With X support, a pivot from the X support is chosen (dormant if any X support is dormant,
/// otherwise the lowest active one), CX gates clear the remaining X support, CZ gates clear the
/// Z support and an S turns a leftover Y into X. A pure Z string is gathered with CX gates into
/// a pivot that is active whenever any of its support is. Every emitted two-qubit gate either has
/// a dormant control or acts only on active qubits, so the dormant |0> block is never disturbed.
LocalizationResult localize(const PauliString &pauli, const std::vector<bool> &active);

/// How a localization gate acts on the state |phi>_A ⊗ |0>_D.
enum class GateEffect {
    /// Identity on the state, only the frames change.
    FrameOnly,
    /// Needs a matching operation on the active array.
    Array,
};

/// Throws std::logic_error for a gate that would leak the active state into a dormant qubit.
GateEffect classify_gate(const VirtualGate &g, const std::vector<bool> &active);

}  // namespace fsim

#endif
