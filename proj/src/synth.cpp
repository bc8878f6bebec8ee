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

#include "pedeval/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "pedeval/canonical_json.hpp"
#include "pedeval/errors.hpp"

namespace pedeval {

namespace {

// mt19937_64 with hand-rolled transforms: identical draws on every
// platform, unlike std::uniform_*_distribution whose algorithm is
// implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double unit() {  // [0, 1)
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {  // inclusive
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<std::int64_t>(eng_() % span);
  }

  bool bernoulli(double p) { return unit() < p; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(
          uniform_int(0, static_cast<std::int64_t>(i) - 1));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 eng_;
};

int pick_weighted3(Rng& rng, double w0, double w1) {
  const double u = rng.unit();
  if (u < w0) return 0;
  if (u < w0 + w1) return 1;
  return 2;
}

double intention_draw(Rng& rng, IntentionLaw law) {
  if (law == IntentionLaw::uniform) {
    return rng.unit();
  }
  // Two triangular humps around 0.15 and 0.85.
  const double center = rng.bernoulli(0.5) ? 0.15 : 0.85;
  const double noise = (rng.unit() - rng.unit()) * 0.25;
  return std::clamp(center + noise, 0.0, 1.0);
}

std::string zero_pad(std::int64_t v, int width) {
  std::string s = std::to_string(v);
  while (static_cast<int>(s.size()) < width) {
    s.insert(s.begin(), '0');
  }
  return s;
}

std::vector<double> noisy_confidences(Rng& rng, int arity, int base_label) {
  std::vector<double> q(static_cast<std::size_t>(arity));
  double sum = 0.0;
  for (double& v : q) {
    v = 0.05 + rng.unit();
    sum += v;
  }
  std::vector<double> conf(static_cast<std::size_t>(arity));
  for (int c = 0; c < arity; ++c) {
    const double base = c == base_label ? 1.0 : 0.0;
    conf[static_cast<std::size_t>(c)] =
        round6(0.7 * base + 0.3 * (q[static_cast<std::size_t>(c)] / sum));
  }
  return conf;
}

std::vector<double> onehot(int arity, int label) {
  std::vector<double> conf(static_cast<std::size_t>(arity), 0.0);
  conf[static_cast<std::size_t>(label)] = 1.0;
  return conf;
}

}  // namespace

std::string to_string(IntentionLaw law) {
  return law == IntentionLaw::uniform ? "uniform" : "bimodal";
}

IntentionLaw intention_law_from_string(const std::string& s) {
  if (s == "uniform") return IntentionLaw::uniform;
  if (s == "bimodal") return IntentionLaw::bimodal;
  throw ValidationError("unknown intention law: '" + s + "'");
}

std::string to_string(PredictorKind kind) {
  switch (kind) {
    case PredictorKind::oracle: return "oracle";
    case PredictorKind::noisy: return "noisy";
    case PredictorKind::constant: return "constant";
    case PredictorKind::anti_oracle: return "anti_oracle";
  }
  return "oracle";
}

PredictorKind predictor_from_string(const std::string& s) {
  if (s == "oracle") return PredictorKind::oracle;
  if (s == "noisy") return PredictorKind::noisy;
  if (s == "constant") return PredictorKind::constant;
  if (s == "anti_oracle") return PredictorKind::anti_oracle;
  throw ValidationError("unknown predictor: '" + s + "'");
}

void validate(const SynthSpec& spec) {
  if (spec.n_instances < 1) {
    throw ValidationError("n_instances must be positive");
  }
  if (spec.track_len_min < 1 || spec.track_len_min > spec.track_len_max) {
    throw ValidationError("track length range must satisfy 1 <= min <= max");
  }
  if (spec.crossing_frac < 0.0 || spec.crossing_frac > 1.0) {
    throw ValidationError("crossing_frac must lie in [0, 1]");
  }
  if (spec.noise_eps < 0.0 || spec.noise_eps > 1.0) {
    throw ValidationError("noise_eps must lie in [0, 1]");
  }
  if (spec.const_conf < 0.0 || spec.const_conf > 1.0) {
    throw ValidationError("const_conf must lie in [0, 1]");
  }
  if (spec.video_width < 1 || spec.video_height < 1 || spec.fps < 1) {
    throw ValidationError("video dimensions and fps must be positive");
  }
}

std::string effective_model_name(const SynthSpec& spec) {
  return spec.model_name.empty() ? "synth_" + to_string(spec.predictor)
                                 : spec.model_name;
}

Dataset synth_dataset(const SynthSpec& spec) {
  validate(spec);
  Rng rng(spec.seed);

  Dataset ds;
  ds.name = "synth";
  ds.split = Split::test;
  const int n_videos =
      static_cast<int>(std::min<std::int64_t>(4, spec.n_instances));
  for (int v = 0; v < n_videos; ++v) {
    VideoMeta meta;
    meta.video_id = "vid_" + zero_pad(v, 4);
    meta.width = spec.video_width;
    meta.height = spec.video_height;
    meta.fps = spec.fps;
    ds.videos.push_back(std::move(meta));
  }

  // Quota-based crossing assignment so label marginals are exact.
  const auto n_crossing = static_cast<std::int64_t>(
      std::llround(static_cast<double>(spec.n_instances) *
                   spec.crossing_frac));
  std::vector<std::int64_t> order(static_cast<std::size_t>(spec.n_instances));
  for (std::int64_t i = 0; i < spec.n_instances; ++i) {
    order[static_cast<std::size_t>(i)] = i;
  }
  rng.shuffle(order);
  std::vector<bool> crosses(static_cast<std::size_t>(spec.n_instances),
                            false);
  for (std::int64_t k = 0; k < n_crossing; ++k) {
    crosses[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] =
        true;
  }

  const int id_width = std::max(
      4, static_cast<int>(std::to_string(spec.n_instances).size()));
  for (std::int64_t i = 0; i < spec.n_instances; ++i) {
    PedestrianInstance inst;
    inst.ped_id = "ped_" + zero_pad(i, id_width);
    inst.video_id = ds.videos[static_cast<std::size_t>(i % n_videos)].video_id;
    inst.crossing_label = crosses[static_cast<std::size_t>(i)]
                              ? CrossingLabel::crossing
                              : CrossingLabel::non_crossing;

    const std::int64_t len =
        rng.uniform_int(spec.track_len_min, spec.track_len_max);
    const std::int64_t first = rng.uniform_int(0, 300);
    const std::int64_t last = first + len - 1;

    // Linear-plus-noise motion.
    const double x0 = rng.uniform(50.0, spec.video_width - 50.0);
    const double vx = rng.uniform(-8.0, 8.0);
    const double h0 = rng.uniform(30.0, 250.0);
    const double vh = rng.uniform(-0.5, 0.5);
    const double y_base = rng.uniform(spec.video_height * 0.5,
                                      spec.video_height * 0.95);

    const bool stationary = rng.bernoulli(0.15);
    const double base_speed = stationary ? 0.0 : rng.uniform(0.5, 45.0);
    const double walk_prob = rng.uniform(0.3, 0.9);
    const SignalState signal =
        static_cast<SignalState>(pick_weighted3(rng, 0.25, 0.25));
    inst.road_type = static_cast<RoadType>(pick_weighted3(rng, 0.3, 0.5));

    for (std::int64_t t = 0; t < len; ++t) {
      FrameObservation f;
      f.frame_index = first + t;
      const double td = static_cast<double>(t);
      const double cx = x0 + vx * td + rng.uniform(-2.0, 2.0);
      const double h =
          std::max(10.0, h0 + vh * td + rng.uniform(-3.0, 3.0));
      const double w = h * 0.4;
      f.bbox[0] = round6(cx - w / 2.0);
      f.bbox[1] = round6(y_base - h);
      f.bbox[2] = round6(cx + w / 2.0);
      f.bbox[3] = round6(y_base);
      f.occlusion = rng.bernoulli(0.1)
                        ? (rng.bernoulli(0.3) ? Occlusion::full
                                              : Occlusion::partial)
                        : Occlusion::none;
      f.walking = rng.bernoulli(walk_prob);
      f.signal_state = signal;
      f.ego_speed = stationary
                        ? 0.0
                        : round6(std::max(0.0, base_speed +
                                                   rng.uniform(-1.0, 1.0)));
      inst.frames.push_back(f);
    }

    // One instance in ten lacks intention annotations, like datasets whose
    // intention labels are unusable; the intention sampler skips them.
    if (!rng.bernoulli(0.1)) {
      inst.intention_prob = round6(intention_draw(rng, spec.intention_law));
      inst.exp_start_point = first;
      inst.critical_point =
          rng.uniform_int(std::min(first + 14, last), last);
    }

    if (crosses[static_cast<std::size_t>(i)] && len >= 45) {
      inst.crossing_point = first + rng.uniform_int(44, len - 1);
    } else {
      inst.crossing_point = last;
    }
    ds.instances.push_back(std::move(inst));
  }
  validate_dataset(ds);
  return ds;
}

std::vector<PredictionRecord> synth_predictions(const Dataset& ds,
                                                const SynthSpec& spec,
                                                const SamplerConfig& cfg,
                                                const RiskGridConfig& grid) {
  validate(spec);
  // Offset keeps the predictor stream independent of the dataset stream.
  Rng rng(spec.seed ^ 0x9e3779b97f4a7c15ULL);
  const std::string model = effective_model_name(spec);

  std::vector<PredictionRecord> out;
  for (const Task task : {Task::intention, Task::action, Task::risk}) {
    const int arity = task_arity(task, grid);
    for (const TaskSample& s : sample_dataset(ds, task, cfg, grid, 1)) {
      PredictionRecord rec;
      rec.sample_id = s.sample_id;
      rec.model = model;
      rec.task = task;
      switch (spec.predictor) {
        case PredictorKind::oracle:
          rec.confidences = onehot(arity, s.label);
          break;
        case PredictorKind::anti_oracle:
          rec.confidences = onehot(arity, (s.label + 1) % arity);
          break;
        case PredictorKind::constant: {
          rec.confidences.assign(
              static_cast<std::size_t>(arity),
              arity > 1
                  ? round6((1.0 - spec.const_conf) / (arity - 1))
                  : 1.0);
          rec.confidences[0] = round6(spec.const_conf);
          break;
        }
        case PredictorKind::noisy: {
          int base = s.label;
          if (rng.bernoulli(spec.noise_eps) && arity > 1) {
            const int shift =
                static_cast<int>(rng.uniform_int(1, arity - 1));
            base = (s.label + shift) % arity;
          }
          rec.confidences = noisy_confidences(rng, arity, base);
          break;
        }
      }
      out.push_back(std::move(rec));
    }
  }
  return out;
}

}  // namespace pedeval
