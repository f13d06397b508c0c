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

#include <benchmark/benchmark.h>

#include <cmath>

#include "factorsim/bytecode.h"
#include "factorsim/circuit.h"
#include "factorsim/kernels.h"
#include "factorsim/svm.h"

namespace {

using fsim::Amp;

std::vector<Amp> make_array(int k) {
    std::vector<Amp> a(size_t{1} << k);
    double norm = std::sqrt(static_cast<double>(a.size()));
    for (size_t i = 0; i < a.size(); i++) {
        a[i] = Amp(std::cos(0.1 * i), std::sin(0.3 * i)) / norm;
    }
    return a;
}

template <void (*Kernel)(std::vector<Amp> &, uint32_t, double)>
void BM_rot_z(benchmark::State &state) {
    auto a = make_array(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        Kernel(a, 3, 0.3926990816987241);
        benchmark::DoNotOptimize(a.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(a.size()));
}

template <void (*Kernel)(std::vector<Amp> &, uint32_t)>
void BM_h(benchmark::State &state) {
    auto a = make_array(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        Kernel(a, 1);
        benchmark::DoNotOptimize(a.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(a.size()));
}

template <double (*Kernel)(const std::vector<Amp> &, uint32_t)>
void BM_prob_one(benchmark::State &state) {
    auto a = make_array(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(Kernel(a, 2));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(a.size()));
}

BENCHMARK(BM_rot_z<fsim::kernels::serial::rot_z>)->Name("rot_z/serial")->DenseRange(12, 22, 5);
BENCHMARK(BM_rot_z<fsim::kernels::omp::rot_z>)->Name("rot_z/omp")->DenseRange(12, 22, 5);
BENCHMARK(BM_h<fsim::kernels::serial::h>)->Name("h/serial")->DenseRange(12, 22, 5);
BENCHMARK(BM_h<fsim::kernels::omp::h>)->Name("h/omp")->DenseRange(12, 22, 5);
BENCHMARK(BM_prob_one<fsim::kernels::serial::prob_one>)->Name("prob_one/serial")->DenseRange(12, 22, 5);
BENCHMARK(BM_prob_one<fsim::kernels::omp::prob_one>)->Name("prob_one/omp")->DenseRange(12, 22, 5);

void BM_sample_mirror(benchmark::State &state) {
    fsim::Circuit c = fsim::parse_circuit(
        "H 0\nT 0\nT 0\nT 0\nCX 0 1\nDEPOLARIZE1(0.001) 0 1\nCX 0 1\nT_DAG 0\nH 0\nM 0 1\n");
    fsim::BytecodeProgram prog = fsim::compile(c);
    fsim::SampleOptions opts;
    opts.workers = static_cast<int>(state.range(0));
    for (auto _ : state) {
        uint64_t ones = 0;
        fsim::sample(prog, 10000, 7, opts, [&](uint64_t, const fsim::ShotRecord &r) { ones += r.measurements[0]; });
        benchmark::DoNotOptimize(ones);
    }
    state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_sample_mirror)->Name("sample_worked_example/workers")->Arg(1)->Arg(2);

}  // namespace

BENCHMARK_MAIN();
