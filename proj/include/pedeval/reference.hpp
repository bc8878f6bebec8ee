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

#ifndef PEDEVAL_REFERENCE_HPP_
#define PEDEVAL_REFERENCE_HPP_

#include "pedeval/metrics_instance.hpp"
#include "pedeval/sampler.hpp"

namespace pedeval::reference {

// Plain serial counterparts of the parallel kernels. They skip the blocked
// reduction and thread plumbing entirely, so tests can pin the parallel
// results against an independent code path and benchmarks can measure the
// speedup.

ConfusionAccumulator accumulate_serial(const std::vector<EvalRow>& rows,
                                       int n_classes);

std::vector<PerClassRanked> per_class_ranked_serial(
    const std::vector<EvalRow>& rows, int n_classes);

InstanceReport instance_report_serial(
    const std::vector<InstanceSeries>& series_list, int n_classes,
    int wrong_label_offset = 1, bool with_per_class_delta = false);

std::vector<TaskSample> sample_dataset_serial(const Dataset& ds, Task task,
                                              const SamplerConfig& cfg,
                                              const RiskGridConfig& grid);

}  // namespace pedeval::reference

#endif  // PEDEVAL_REFERENCE_HPP_
