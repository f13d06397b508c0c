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

#include <cmath>
#include <numbers>

#include "factorsim/bytecode.h"
#include "factorsim/hir.h"

namespace fsim {

namespace {

/// Whether a rotation about `gen` can be moved across `op` without changing semantics.
bool rotation_commutes_with(const HirOp &op, const PauliString &gen) {
    if (auto *r = std::get_if<RotOp>(&op)) {
        return commutes(r->generator, gen);
    }
    if (auto *m = std::get_if<MeasOp>(&op)) {
        return commutes(m->observable, gen);
    }
    if (auto *c = std::get_if<CondPauliOp>(&op)) {
        return commutes(c->pauli, gen);
    }
    // Noise never moves relative to quantum operations.
    return !std::holds_alternative<NoiseOp>(op);
}

void conjugate_op(HirOp &op, const PauliString &p, int quarter_turns) {
    std::visit(
        [&](auto &o) {
            using T = std::decay_t<decltype(o)>;
            if constexpr (std::is_same_v<T, RotOp>) {
                conjugate_by_pauli_rotation(o.generator, p, quarter_turns);
                if (o.generator.is_negative()) {
                    o.generator.set_phase_exp(0);
                    o.angle = -o.angle;
                    if (o.eighths) {
                        o.eighths = -*o.eighths;
                    }
                }
            } else if constexpr (std::is_same_v<T, MeasOp>) {
                conjugate_by_pauli_rotation(o.observable, p, quarter_turns);
            } else if constexpr (std::is_same_v<T, NoiseOp>) {
                for (auto &c : o.cases) {
                    conjugate_by_pauli_rotation(c.pauli, p, quarter_turns);
                }
            } else if constexpr (std::is_same_v<T, CondPauliOp>) {
                conjugate_by_pauli_rotation(o.pauli, p, quarter_turns);
            }
        },
        op);
}

/// Splits the rotation at `index` into a Clifford part, pushed past every later op into the
/// final frame, and a remainder strictly inside (-pi/4, pi/4). Returns true if anything changed.
bool reduce_rotation(HirProgram &hir, size_t index) {
    auto &rot = std::get<RotOp>(hir.ops[index]);
    int quarter = 0;
    bool remainder_zero = false;
    if (rot.eighths) {
        int e = *rot.eighths;
        quarter = e / 2;
        int rem = e - 2 * quarter;
        remainder_zero = rem == 0;
        rot.eighths = rem;
        rot.angle = rem * std::numbers::pi / 8;
    } else {
        double unit = std::numbers::pi / 4;
        double v = rot.angle / unit;
        double nearest = std::round(v);
        if (std::abs(rot.angle - nearest * unit) < 1e-12) {
            quarter = static_cast<int>(nearest);
            remainder_zero = true;
        } else {
            quarter = static_cast<int>(std::trunc(v));
            rot.angle -= quarter * unit;
        }
    }
    if (quarter % 4 == 0 && !remainder_zero) {
        return false;
    }
    if (quarter % 4 != 0) {
        PauliString gen = rot.generator;
        // Moving R = exp(-i q pi/4 P) to the end rewrites each later op as R† O R.
        for (size_t j = index + 1; j < hir.ops.size(); j++) {
            conjugate_op(hir.ops[j], gen, -quarter);
        }
        hir.final_frame.append_virtual_rotation(gen, quarter);
    }
    if (remainder_zero) {
        hir.ops.erase(hir.ops.begin() + static_cast<std::ptrdiff_t>(index));
    }
    return true;
}

/// Merges the rotation at `index` into an earlier rotation with the same generator that it can
/// commute back to. Returns the merged index, or -1.
std::ptrdiff_t fuse_backwards(HirProgram &hir, size_t index) {
    const auto &rot = std::get<RotOp>(hir.ops[index]);
    for (size_t j = index; j-- > 0;) {
        if (auto *prev = std::get_if<RotOp>(&hir.ops[j])) {
            if (prev->generator == rot.generator) {
                prev->angle += rot.angle;
                if (prev->eighths && rot.eighths) {
                    prev->eighths = *prev->eighths + *rot.eighths;
                    prev->angle = *prev->eighths * std::numbers::pi / 8;
                } else {
                    prev->eighths = angle_in_eighths(prev->angle);
                }
                hir.ops.erase(hir.ops.begin() + static_cast<std::ptrdiff_t>(index));
                return static_cast<std::ptrdiff_t>(j);
            }
        }
        if (!rotation_commutes_with(hir.ops[j], rot.generator)) {
            return -1;
        }
    }
    return -1;
}

bool meas_can_pass(const HirOp &earlier, const MeasOp &meas) {
    if (auto *r = std::get_if<RotOp>(&earlier)) {
        return commutes(r->generator, meas.observable);
    }
    if (auto *m = std::get_if<MeasOp>(&earlier)) {
        return commutes(m->observable, meas.observable);
    }
    if (auto *c = std::get_if<CondPauliOp>(&earlier)) {
        return c->record != meas.record && commutes(c->pauli, meas.observable);
    }
    return std::holds_alternative<DetectorOp>(earlier) || std::holds_alternative<ObservableOp>(earlier);
}

}  // namespace

HirProgram peephole_pass(HirProgram hir) {
    // A rewrite at position j only changes ops at or after j, so scanning resumes there.
    size_t i = 0;
    while (i < hir.ops.size()) {
        if (!std::holds_alternative<RotOp>(hir.ops[i])) {
            i++;
            continue;
        }
        std::ptrdiff_t merged = fuse_backwards(hir, i);
        if (merged >= 0) {
            i = static_cast<size_t>(merged);
            reduce_rotation(hir, i);
            continue;
        }
        if (!reduce_rotation(hir, i)) {
            i++;
        }
    }
    return hir;
}

HirProgram schedule_pass(HirProgram hir) {
    HirProgram moved = hir;
    auto &ops = moved.ops;
    for (size_t i = 0; i < ops.size(); i++) {
        if (!std::holds_alternative<MeasOp>(ops[i])) {
            continue;
        }
        size_t j = i;
        while (j > 0 && meas_can_pass(ops[j - 1], std::get<MeasOp>(ops[j]))) {
            std::swap(ops[j - 1], ops[j]);
            j--;
        }
    }
    ScheduleCost before = estimate_schedule_cost(hir);
    ScheduleCost after = estimate_schedule_cost(moved);
    if (after.k_max < before.k_max || (after.k_max == before.k_max && after.work <= before.work)) {
        return moved;
    }
    return hir;
}

}  // namespace fsim
