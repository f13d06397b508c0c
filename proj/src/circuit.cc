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

#include "factorsim/circuit.h"

#include <array>
#include <charconv>
#include <cmath>
#include <sstream>

namespace fsim {

namespace {

struct OpInfo {
    OpCode op;
    const char *name;
};

constexpr std::array<OpInfo, 30> kOps = {{
    {OpCode::H, "H"},
    {OpCode::S, "S"},
    {OpCode::S_DAG, "S_DAG"},
    {OpCode::X, "X"},
    {OpCode::Y, "Y"},
    {OpCode::Z, "Z"},
    {OpCode::CX, "CX"},
    {OpCode::CY, "CY"},
    {OpCode::CZ, "CZ"},
    {OpCode::SWAP, "SWAP"},
    {OpCode::T, "T"},
    {OpCode::T_DAG, "T_DAG"},
    {OpCode::R_X, "R_X"},
    {OpCode::R_Y, "R_Y"},
    {OpCode::R_Z, "R_Z"},
    {OpCode::M, "M"},
    {OpCode::MX, "MX"},
    {OpCode::MY, "MY"},
    {OpCode::R, "R"},
    {OpCode::X_ERROR, "X_ERROR"},
    {OpCode::Y_ERROR, "Y_ERROR"},
    {OpCode::Z_ERROR, "Z_ERROR"},
    {OpCode::DEPOLARIZE1, "DEPOLARIZE1"},
    {OpCode::DEPOLARIZE2, "DEPOLARIZE2"},
    {OpCode::DETECTOR, "DETECTOR"},
    {OpCode::OBSERVABLE_INCLUDE, "OBSERVABLE_INCLUDE"},
    {OpCode::POSTSELECT, "POSTSELECT"},
    {OpCode::TICK, "TICK"},
    {OpCode::QUBIT_COORDS, "QUBIT_COORDS"},
    {OpCode::REPEAT, "REPEAT"},
}};

bool is_two_qubit_op(OpCode op) {
    return op == OpCode::CX || op == OpCode::CY || op == OpCode::CZ || op == OpCode::SWAP ||
           op == OpCode::DEPOLARIZE2;
}

bool takes_record_targets_only(OpCode op) {
    return op == OpCode::DETECTOR || op == OpCode::OBSERVABLE_INCLUDE || op == OpCode::POSTSELECT;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view s, size_t line) {
    s = trim(s);
    double v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
        throw CircuitError("malformed argument '" + std::string(s) + "'", line);
    }
    return v;
}

uint64_t parse_uint(std::string_view s, size_t line, const char *what) {
    uint64_t v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw CircuitError(std::string("malformed ") + what + " '" + std::string(s) + "'", line);
    }
    return v;
}

Target parse_target(std::string_view tok, size_t line) {
    if (tok.starts_with("rec[")) {
        if (!tok.ends_with("]") || tok.size() < 7 || tok[4] != '-') {
            throw CircuitError("malformed record target '" + std::string(tok) + "'", line);
        }
        uint64_t k = parse_uint(tok.substr(5, tok.size() - 6), line, "record lookback");
        if (k == 0 || k > UINT32_MAX) {
            throw CircuitError("record lookback must be rec[-k] with k >= 1", line);
        }
        return Target{static_cast<uint32_t>(k), true};
    }
    if (!tok.empty() && tok[0] == '-') {
        throw CircuitError("negative qubit index '" + std::string(tok) + "'", line);
    }
    uint64_t q = parse_uint(tok, line, "qubit target");
    if (q >= (uint64_t{1} << 24)) {
        throw CircuitError("qubit index too large", line);
    }
    return Target{static_cast<uint32_t>(q), false};
}

void validate_instruction(const Instruction &inst, size_t line) {
    OpCode op = inst.op;
    auto fail = [&](const std::string &msg) {
        throw CircuitError(std::string(opcode_name(op)) + ": " + msg, line);
    };
    bool any_record = false;
    for (const auto &t : inst.targets) {
        any_record |= t.is_record;
    }
    if (takes_record_targets_only(op)) {
        for (const auto &t : inst.targets) {
            if (!t.is_record) {
                fail("expects only rec[-k] targets");
            }
        }
    } else if (any_record && op != OpCode::CX && op != OpCode::CY && op != OpCode::CZ) {
        fail("does not accept record targets");
    }
    if (op == OpCode::TICK && !inst.targets.empty()) {
        fail("takes no targets");
    }
    if (is_two_qubit_op(op)) {
        if (inst.targets.size() % 2 != 0) {
            fail("needs an even number of targets");
        }
        for (size_t i = 0; i < inst.targets.size(); i += 2) {
            const Target &a = inst.targets[i];
            const Target &b = inst.targets[i + 1];
            if (a.is_record && b.is_record) {
                fail("both targets of a pair are records");
            }
            if (b.is_record && op != OpCode::CZ) {
                fail("record control must come first");
            }
            if (!a.is_record && !b.is_record && a.value == b.value) {
                fail("pair targets the same qubit twice");
            }
        }
    }
    size_t nargs = inst.args.size();
    if (is_rotation(op)) {
        bool parametric = op == OpCode::R_X || op == OpCode::R_Y || op == OpCode::R_Z;
        if (nargs != (parametric ? 1u : 0u)) {
            fail(parametric ? "needs exactly one angle argument" : "takes no arguments");
        }
    } else if (is_noise(op)) {
        if (nargs != 1) {
            fail("needs exactly one probability argument");
        }
        if (!(inst.args[0] >= 0 && inst.args[0] <= 1)) {
            fail("probability must be in [0, 1]");
        }
    } else if (op == OpCode::OBSERVABLE_INCLUDE) {
        if (nargs != 1 || inst.args[0] < 0 || inst.args[0] != std::floor(inst.args[0])) {
            fail("needs one non-negative integer observable index");
        }
    } else if (op == OpCode::POSTSELECT) {
        if (nargs > 1 || (nargs == 1 && inst.args[0] != 0 && inst.args[0] != 1)) {
            fail("takes an optional expected parity of 0 or 1");
        }
    } else if (op != OpCode::DETECTOR && op != OpCode::QUBIT_COORDS && nargs != 0) {
        fail("takes no arguments");
    }
}

Instruction parse_line(std::string_view text, size_t line) {
    size_t name_end = 0;
    while (name_end < text.size() && text[name_end] != '(' && text[name_end] != ' ' && text[name_end] != '\t') {
        name_end++;
    }
    std::string name(text.substr(0, name_end));
    for (auto &c : name) {
        c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
    auto op = opcode_from_name(name);
    if (!op.has_value() || *op == OpCode::REPEAT) {
        throw CircuitError("unknown opcode '" + name + "'", line);
    }
    Instruction inst;
    inst.op = *op;
    std::string_view rest = text.substr(name_end);
    if (!rest.empty() && rest[0] == '(') {
        size_t close = rest.find(')');
        if (close == std::string_view::npos) {
            throw CircuitError("unterminated argument list", line);
        }
        std::string_view args = rest.substr(1, close - 1);
        if (!trim(args).empty()) {
            size_t start = 0;
            while (true) {
                size_t comma = args.find(',', start);
                inst.args.push_back(parse_double(args.substr(start, comma - start), line));
                if (comma == std::string_view::npos) {
                    break;
                }
                start = comma + 1;
            }
        }
        rest = rest.substr(close + 1);
    }
    std::istringstream ss{std::string(rest)};
    std::string tok;
    while (ss >> tok) {
        inst.targets.push_back(parse_target(tok, line));
    }
    validate_instruction(inst, line);
    return inst;
}

void append_flattened(const Circuit &c, Circuit &out, uint64_t &measurements) {
    for (const auto &inst : c.instructions) {
        if (inst.op == OpCode::REPEAT) {
            for (uint64_t r = 0; r < inst.repeat_count; r++) {
                append_flattened(*inst.body, out, measurements);
            }
            continue;
        }
        Instruction copy = inst;
        if (!c.flat) {
            for (auto &t : copy.targets) {
                if (t.is_record) {
                    if (t.value > measurements) {
                        throw CircuitError("rec[-" + std::to_string(t.value) + "] looks back past the start of the record");
                    }
                    t.value = static_cast<uint32_t>(measurements - t.value);
                }
            }
        }
        if (is_measurement(copy.op)) {
            measurements += copy.targets.size();
        }
        out.instructions.push_back(std::move(copy));
    }
}

void write_circuit(const Circuit &c, std::ostream &out, const std::string &indent, uint64_t &measurements) {
    for (const auto &inst : c.instructions) {
        if (inst.op == OpCode::REPEAT) {
            out << indent << "REPEAT " << inst.repeat_count << " {\n";
            uint64_t inner = measurements;
            write_circuit(*inst.body, out, indent + "    ", inner);
            measurements += inst.body->num_measurements() * inst.repeat_count;
            out << indent << "}\n";
            continue;
        }
        out << indent << opcode_name(inst.op);
        if (!inst.args.empty()) {
            out << '(';
            for (size_t i = 0; i < inst.args.size(); i++) {
                out << (i ? "," : "") << format_double(inst.args[i]);
            }
            out << ')';
        }
        for (const auto &t : inst.targets) {
            if (t.is_record) {
                uint64_t k = c.flat ? measurements - t.value : t.value;
                out << " rec[-" << k << ']';
            } else {
                out << ' ' << t.value;
            }
        }
        out << '\n';
        if (is_measurement(inst.op)) {
            measurements += inst.targets.size();
        }
    }
}

}  // namespace

CircuitError::CircuitError(const std::string &msg, size_t line)
    : std::invalid_argument(line ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {
}

const char *opcode_name(OpCode op) {
    for (const auto &info : kOps) {
        if (info.op == op) {
            return info.name;
        }
    }
    return "?";
}

std::optional<OpCode> opcode_from_name(std::string_view name) {
    if (name == "CNOT") {
        return OpCode::CX;
    }
    if (name == "MZ") {
        return OpCode::M;
    }
    for (const auto &info : kOps) {
        if (name == info.name) {
            return info.op;
        }
    }
    return std::nullopt;
}

bool is_clifford_gate(OpCode op) {
    return op <= OpCode::SWAP;
}

bool is_rotation(OpCode op) {
    return op >= OpCode::T && op <= OpCode::R_Z;
}

bool is_measurement(OpCode op) {
    return op == OpCode::M || op == OpCode::MX || op == OpCode::MY;
}

bool is_noise(OpCode op) {
    return op >= OpCode::X_ERROR && op <= OpCode::DEPOLARIZE2;
}

Gate clifford_gate(OpCode op) {
    switch (op) {
        case OpCode::H:
            return Gate::H;
        case OpCode::S:
            return Gate::S;
        case OpCode::S_DAG:
            return Gate::S_DAG;
        case OpCode::X:
            return Gate::X;
        case OpCode::Y:
            return Gate::Y;
        case OpCode::Z:
            return Gate::Z;
        case OpCode::CX:
            return Gate::CX;
        case OpCode::CY:
            return Gate::CY;
        case OpCode::CZ:
            return Gate::CZ;
        case OpCode::SWAP:
            return Gate::SWAP;
        default:
            throw std::invalid_argument(std::string("not a Clifford gate: ") + opcode_name(op));
    }
}

bool Instruction::operator==(const Instruction &other) const {
    if (op != other.op || targets != other.targets || args != other.args || repeat_count != other.repeat_count) {
        return false;
    }
    if (static_cast<bool>(body) != static_cast<bool>(other.body)) {
        return false;
    }
    return !body || *body == *other.body;
}

bool Circuit::operator==(const Circuit &other) const {
    return flat == other.flat && instructions == other.instructions;
}

uint32_t Circuit::num_qubits() const {
    uint32_t n = 0;
    for (const auto &inst : instructions) {
        if (inst.op == OpCode::REPEAT) {
            n = std::max(n, inst.body->num_qubits());
            continue;
        }
        for (const auto &t : inst.targets) {
            if (!t.is_record) {
                n = std::max(n, t.value + 1);
            }
        }
    }
    return n;
}

uint64_t Circuit::num_measurements() const {
    uint64_t n = 0;
    for (const auto &inst : instructions) {
        if (inst.op == OpCode::REPEAT) {
            n += inst.repeat_count * inst.body->num_measurements();
        } else if (is_measurement(inst.op)) {
            n += inst.targets.size();
        }
    }
    return n;
}

uint64_t Circuit::num_detectors() const {
    uint64_t n = 0;
    for (const auto &inst : instructions) {
        if (inst.op == OpCode::REPEAT) {
            n += inst.repeat_count * inst.body->num_detectors();
        } else if (inst.op == OpCode::DETECTOR) {
            n++;
        }
    }
    return n;
}

uint64_t Circuit::num_observables() const {
    uint64_t n = 0;
    for (const auto &inst : instructions) {
        if (inst.op == OpCode::REPEAT) {
            n = std::max(n, inst.body->num_observables());
        } else if (inst.op == OpCode::OBSERVABLE_INCLUDE) {
            n = std::max(n, static_cast<uint64_t>(inst.args[0]) + 1);
        }
    }
    return n;
}

uint64_t Circuit::num_noise_sites() const {
    uint64_t n = 0;
    for (const auto &inst : instructions) {
        if (inst.op == OpCode::REPEAT) {
            n += inst.repeat_count * inst.body->num_noise_sites();
        } else if (is_noise(inst.op)) {
            n += inst.targets.size() / noise_group_size(inst.op);
        }
    }
    return n;
}

uint64_t Circuit::flattened_size() const {
    uint64_t n = 0;
    for (const auto &inst : instructions) {
        n += inst.op == OpCode::REPEAT ? inst.repeat_count * inst.body->flattened_size() : 1;
    }
    return n;
}

std::string Circuit::str() const {
    std::ostringstream out;
    uint64_t measurements = 0;
    write_circuit(*this, out, "", measurements);
    return out.str();
}

Circuit parse_circuit(std::string_view text) {
    struct Frame {
        Circuit circuit;
        uint64_t count = 0;
        size_t line = 0;
    };
    std::vector<Frame> stack(1);
    size_t line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        line_no++;
        size_t hash = line.find('#');
        if (hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            if (end == text.size()) {
                break;
            }
            continue;
        }
        if (line == "}") {
            if (stack.size() == 1) {
                throw CircuitError("unmatched '}'", line_no);
            }
            Frame done = std::move(stack.back());
            stack.pop_back();
            Instruction rep;
            rep.op = OpCode::REPEAT;
            rep.repeat_count = done.count;
            rep.body = std::make_shared<const Circuit>(std::move(done.circuit));
            stack.back().circuit.instructions.push_back(std::move(rep));
        } else if (line.starts_with("REPEAT ") || line.starts_with("repeat ")) {
            std::string_view rest = trim(line.substr(7));
            if (!rest.ends_with("{")) {
                throw CircuitError("REPEAT line must end with '{'", line_no);
            }
            uint64_t count = parse_uint(trim(rest.substr(0, rest.size() - 1)), line_no, "repeat count");
            if (count < 1) {
                throw CircuitError("REPEAT count must be at least 1", line_no);
            }
            Frame f;
            f.count = count;
            f.line = line_no;
            stack.push_back(std::move(f));
        } else {
            stack.back().circuit.instructions.push_back(parse_line(line, line_no));
        }
        if (end == text.size()) {
            break;
        }
    }
    if (stack.size() != 1) {
        throw CircuitError("unterminated REPEAT block", stack.back().line);
    }
    return std::move(stack[0].circuit);
}

Circuit flatten(const Circuit &circuit) {
    Circuit out;
    uint64_t measurements = 0;
    append_flattened(circuit, out, measurements);
    out.flat = true;
    return out;
}

size_t noise_group_size(OpCode op) {
    return op == OpCode::DEPOLARIZE2 ? 2 : 1;
}

std::vector<NoiseCaseSpec> noise_cases(const Instruction &inst) {
    double p = inst.args.at(0);
    switch (inst.op) {
        case OpCode::X_ERROR:
            return {{p, "X"}};
        case OpCode::Y_ERROR:
            return {{p, "Y"}};
        case OpCode::Z_ERROR:
            return {{p, "Z"}};
        case OpCode::DEPOLARIZE1:
            return {{p / 3, "X"}, {p / 3, "Y"}, {p / 3, "Z"}};
        case OpCode::DEPOLARIZE2: {
            std::vector<NoiseCaseSpec> out;
            const char letters[4] = {'I', 'X', 'Y', 'Z'};
            for (int a = 0; a < 4; a++) {
                for (int b = 0; b < 4; b++) {
                    if (a || b) {
                        out.push_back({p / 15, std::string{letters[a], letters[b]}});
                    }
                }
            }
            return out;
        }
        default:
            throw std::invalid_argument("not a noise channel");
    }
}

}  // namespace fsim
