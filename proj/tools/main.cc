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

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "factorsim/analysis.h"
#include "factorsim/bytecode.h"
#include "factorsim/circuit.h"
#include "factorsim/record_io.h"
#include "factorsim/svm.h"
#include "factorsim/oracle.h"
#include "factorsim/validate.h"

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

std::string read_source(const std::string &path) {
    if (path == "-") {
        return {std::istreambuf_iterator<char>(std::cin), {}};
    }
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    return {std::istreambuf_iterator<char>(in), {}};
}

int default_workers() {
    if (const char *env = std::getenv("FACTORSIM_WORKERS")) {
        int w = std::atoi(env);
        if (w > 0) {
            return w;
        }
    }
    return 1;
}

struct Config {
    std::string circuit = "-";
    std::string emit = "bytecode";
    std::vector<uint32_t> postselect;
    uint64_t shots = 1;
    uint64_t seed = 0;
    std::string format = "01";
    int workers = default_workers();
    std::optional<uint32_t> stratum;
    bool keep_rejected = false;
    std::string out;

    std::vector<std::string> validate_files;
    bool mirror = false;
    uint64_t fuzz = 0;
    uint64_t mirror_shots = 1000;
    std::string corruption;

    uint64_t k1 = 0, n1 = 0, k2 = 0, n2 = 0;
    uint64_t mc_samples = 100000;
    double y = 0;
};

fsim::LowerOptions lower_options(const Config &cfg) {
    fsim::LowerOptions opts;
    opts.postselect_detectors = cfg.postselect;
    return opts;
}

int cmd_compile(const Config &cfg) {
    fsim::Circuit circuit = fsim::parse_circuit(read_source(cfg.circuit));
    if (cfg.emit == "hir") {
        std::cout << fsim::dump_hir(fsim::optimize_hir(fsim::lower_to_hir(circuit, lower_options(cfg))));
        return kOk;
    }
    fsim::BytecodeProgram prog = fsim::compile(circuit, lower_options(cfg));
    if (cfg.emit == "stats") {
        std::cout << fsim::stats_json(prog) << '\n';
    } else {
        std::cout << fsim::disassemble(prog);
    }
    return kOk;
}

int cmd_sample(const Config &cfg) {
    fsim::Circuit circuit = fsim::parse_circuit(read_source(cfg.circuit));
    fsim::BytecodeProgram prog = fsim::compile(circuit, lower_options(cfg));
    fsim::RecordFormat format = fsim::parse_record_format(cfg.format);
    if (cfg.stratum && format != fsim::RecordFormat::WeightedCsv) {
        format = fsim::RecordFormat::WeightedCsv;
    }
    std::ofstream file;
    if (!cfg.out.empty()) {
        file.open(cfg.out, std::ios::binary);
        if (!file) {
            throw std::runtime_error("cannot open " + cfg.out + " for writing");
        }
    }
    std::ostream &out = cfg.out.empty() ? std::cout : file;
    fsim::RecordWriter writer(out, format, cfg.keep_rejected);
    fsim::SampleOptions opts;
    opts.workers = cfg.workers;
    opts.stratum = cfg.stratum;
    fsim::sample(prog, cfg.shots, cfg.seed, opts,
                 [&](uint64_t shot, const fsim::ShotRecord &r) { writer.write(shot, r); });
    out.flush();
    if (!out) {
        throw std::runtime_error("write failed");
    }
    return kOk;
}

bool report(const fsim::CheckResult &r, const std::string &subject) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << ' ' << subject << ": " << r.detail << '\n';
    return r.passed;
}

int cmd_validate(const Config &cfg) {
    bool ok = true;
    for (const auto &path : cfg.validate_files) {
        fsim::Circuit circuit = fsim::flatten(fsim::parse_circuit(read_source(path)));
        fsim::BytecodeProgram prog = fsim::compile(circuit);
        if (!cfg.corruption.empty()) {
            prog = fsim::corrupt_program(prog, cfg.corruption);
        }
        ok &= report(fsim::check_structure(prog), path);
        if (!cfg.corruption.empty()) {
            continue;
        }
        if (circuit.num_qubits() <= fsim::kOracleMaxQubits) {
            ok &= report(fsim::check_oracle_equivalence(circuit, {}, cfg.seed), path);
            ok &= report(fsim::check_single_faults(circuit, cfg.seed), path);
        }
        if (cfg.mirror) {
            ok &= report(fsim::check_mirror(circuit, cfg.mirror_shots, cfg.seed), path);
        }
    }
    uint64_t fuzz = cfg.fuzz;
    if (cfg.validate_files.empty() && fuzz == 0) {
        fuzz = 25;
    }
    for (uint64_t i = 0; i < fuzz; i++) {
        uint64_t s = cfg.seed + i;
        fsim::RandomCircuitSpec spec;
        spec.num_qubits = 2 + s % 5;
        fsim::Circuit circuit = fsim::random_circuit(spec, s);
        auto faults = fsim::random_fault_plan(circuit, 0.3, s);
        ok &= report(fsim::check_checkpoints(circuit, faults, s), "fuzz#" + std::to_string(s));
        fsim::Circuit mirror = fsim::random_mirror_circuit(2 + s % 7, 24, 8, s);
        ok &= report(fsim::check_mirror(mirror, cfg.mirror_shots, s), "mirror#" + std::to_string(s));
    }
    return ok ? kOk : kFailed;
}

int cmd_ratio(const Config &cfg) {
    fsim::RatioInterval r = fsim::ratio_credible_interval(cfg.k1, cfg.n1, cfg.k2, cfg.n2, cfg.mc_samples, cfg.seed);
    std::printf("%.10g %.10g %.10g\n", r.median, r.lo, r.hi);
    return kOk;
}

int cmd_tbound(const Config &cfg) {
    std::printf("%.12g\n", fsim::t_fidelity_bound(cfg.y));
    return kOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Frame-factored Clifford+T circuit compiler and sampler"};
    app.require_subcommand(1);
    Config cfg;

    auto *compile = app.add_subcommand("compile", "Compile a circuit and print an artifact");
    compile->add_option("circuit", cfg.circuit, "Circuit file, or - for stdin");
    compile->add_option("--emit", cfg.emit, "Artifact to print")->check(CLI::IsMember({"hir", "bytecode", "stats"}));
    compile->add_option("--postselect-detectors", cfg.postselect, "Detectors required to be 0")->delimiter(',');

    auto *sample = app.add_subcommand("sample", "Sample measurement, detector and observable records");
    sample->add_option("circuit", cfg.circuit, "Circuit file, or - for stdin");
    sample->add_option("--shots", cfg.shots, "Number of shots")->check(CLI::PositiveNumber);
    sample->add_option("--seed", cfg.seed, "RNG seed");
    sample->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"01", "bin", "csv"}));
    sample->add_option("--workers", cfg.workers, "Worker threads (default from FACTORSIM_WORKERS)")
        ->check(CLI::PositiveNumber);
    sample->add_option("--stratum", cfg.stratum, "Condition every shot on exactly this many faults");
    sample->add_option("--postselect-detectors", cfg.postselect, "Detectors required to be 0")->delimiter(',');
    sample->add_flag("--keep-rejected", cfg.keep_rejected, "Also emit post-selection rejects");
    sample->add_option("--out", cfg.out, "Output file (default stdout)");

    auto *validate = app.add_subcommand("validate", "Cross-check circuits against the dense oracle");
    validate->add_option("circuits", cfg.validate_files, "Circuit files")->check(CLI::ExistingFile);
    validate->add_flag("--mirror", cfg.mirror, "Treat the circuits as mirror circuits (all-zero records)");
    validate->add_option("--fuzz", cfg.fuzz, "Number of random circuits to check");
    validate->add_option("--seed", cfg.seed, "Base seed");
    validate->add_option("--shots", cfg.mirror_shots, "Shots per mirror check")->check(CLI::PositiveNumber);
    validate->add_option("--inject-corruption", cfg.corruption, "Negative control: corrupt the bytecode")
        ->check(CLI::IsMember({"axis-operand", "schedule", "record"}));

    auto *analyze = app.add_subcommand("analyze", "Statistics on sampled counts");
    analyze->require_subcommand(1);
    auto *ratio = analyze->add_subcommand("ratio", "Credible interval for a ratio of two rates");
    ratio->add_option("--k1", cfg.k1)->required();
    ratio->add_option("--n1", cfg.n1)->required();
    ratio->add_option("--k2", cfg.k2)->required();
    ratio->add_option("--n2", cfg.n2)->required();
    ratio->add_option("--samples", cfg.mc_samples);
    ratio->add_option("--seed", cfg.seed);
    auto *tbound = analyze->add_subcommand("tbound", "Lower bound on T-state fidelity from <Y>");
    tbound->add_option("--y", cfg.y)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }
    if ((ratio->parsed() && (cfg.k1 > cfg.n1 || cfg.k2 > cfg.n2 || cfg.n1 == 0 || cfg.n2 == 0)) ||
        (tbound->parsed() && !(std::abs(cfg.y) <= 1))) {
        std::cerr << "error: invalid analysis arguments\n";
        return kUsage;
    }

    try {
        if (compile->parsed()) {
            return cmd_compile(cfg);
        }
        if (sample->parsed()) {
            return cmd_sample(cfg);
        }
        if (validate->parsed()) {
            return cmd_validate(cfg);
        }
        if (ratio->parsed()) {
            return cmd_ratio(cfg);
        }
        return cmd_tbound(cfg);
    } catch (const fsim::CircuitError &e) {
        std::cerr << "circuit error: " << e.what() << '\n';
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
    }
    return kFailed;
}
