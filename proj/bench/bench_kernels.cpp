// Copyright 2026 The PedEval Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "pedeval/metrics_instance.hpp"
#include "pedeval/reference.hpp"
#include "pedeval/synth.hpp"

namespace {

using namespace pedeval;

// One shared fixture: a mid-sized synthetic dataset and its risk rows
// (12 classes stress the ranked metrics most).
struct Fixture {
  Dataset ds;
  SamplerConfig sampler;
  RiskGridConfig grid;
  std::vector<EvalRow> rows;
  std::vector<InstanceSeries> series;

  Fixture() {
    SynthSpec spec;
    spec.n_instances = 2000;
    spec.seed = 11;
    ds = synth_dataset(spec);
    auto samples = sample_dataset(ds, Task::risk, sampler, grid, 1);
    auto preds = synth_predictions(ds, spec, sampler, grid);
    std::vector<PredictionRecord> risk_preds;
    for (auto& p : preds) {
      if (p.task == Task::risk) {
        risk_preds.push_back(std::move(p));
      }
    }
    rows = join(samples, risk_preds, JoinPolicy::strict);
    series = group_instances(rows);
  }
};

const Fixture& fixture() {
  static Fixture f;
  return f;
}

void BM_accumulate_serial(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        reference::accumulate_serial(f.rows, f.grid.n_regions));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(f.rows.size()));
}

void BM_accumulate_parallel(benchmark::State& state) {
  const auto& f = fixture();
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(accumulate(f.rows, f.grid.n_regions, threads));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(f.rows.size()));
}

void BM_per_class_ranked_serial(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        reference::per_class_ranked_serial(f.rows, f.grid.n_regions));
  }
}

void BM_per_class_ranked_parallel(benchmark::State& state) {
  const auto& f = fixture();
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        per_class_ranked(f.rows, f.grid.n_regions, threads));
  }
}

void BM_instance_report_serial(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        reference::instance_report_serial(f.series, f.grid.n_regions));
  }
}

void BM_instance_report_parallel(benchmark::State& state) {
  const auto& f = fixture();
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        instance_report(f.series, f.grid.n_regions, threads));
  }
}

void BM_sample_dataset_serial(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        reference::sample_dataset_serial(f.ds, Task::risk, f.sampler, f.grid));
  }
}

void BM_sample_dataset_parallel(benchmark::State& state) {
  const auto& f = fixture();
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        sample_dataset(f.ds, Task::risk, f.sampler, f.grid, threads));
  }
}

}  // namespace

BENCHMARK(BM_accumulate_serial);
BENCHMARK(BM_accumulate_parallel)->Arg(2)->Arg(4)->Arg(8);
BENCHMARK(BM_per_class_ranked_serial);
BENCHMARK(BM_per_class_ranked_parallel)->Arg(2)->Arg(4)->Arg(8);
BENCHMARK(BM_instance_report_serial);
BENCHMARK(BM_instance_report_parallel)->Arg(2)->Arg(4)->Arg(8);
BENCHMARK(BM_sample_dataset_serial);
BENCHMARK(BM_sample_dataset_parallel)->Arg(2)->Arg(4)->Arg(8);

BENCHMARK_MAIN();
