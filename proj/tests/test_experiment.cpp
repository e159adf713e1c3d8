// Copyright 2026 hexctl contributors
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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hexctl/errors.hpp"
#include "hexctl/experiment.hpp"

using namespace hexctl;

namespace {

std::string slurp_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("presets resolve and unknown names are config errors") {
  ExperimentSpec stand = preset_experiment("stand");
  CHECK(stand.step_frequency == 0.0);
  CHECK(stand.duration == 10.0);
  ExperimentSpec tripod = preset_experiment("tripod-0.5");
  CHECK(tripod.velocity.vx == 0.5);
  CHECK(tripod.gait_name == "tripod");
  CHECK_THROWS_AS(preset_experiment("warp-9"), ConfigError);
}

TEST_CASE("experiment specs load from flat config files") {
  auto dir = std::filesystem::temp_directory_path() / "hexctl_spec_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "exp.cfg").string();
  {
    std::ofstream out(path);
    out << "experiment.name = sidestep\n"
           "experiment.gait = tripod\n"
           "experiment.vy = 0.2\n"
           "experiment.step_frequency = 1.2\n"
           "experiment.duration = 5\n";
  }
  ExperimentSpec spec = experiment_from_file(path);
  CHECK(spec.name == "sidestep");
  CHECK(spec.velocity.vy == 0.2);
  CHECK(spec.step_frequency == 1.2);
  CHECK(spec.duration == 5.0);

  {
    std::ofstream out(path);
    out << "experiment.model_config = /no/such/file.cfg\n"
           "experiment.duration = 1\n";
  }
  CHECK_THROWS_AS(experiment_from_file(path), ConfigError);
}

TEST_CASE("run_experiment writes log, metrics and summary deterministically") {
  auto dir = std::filesystem::temp_directory_path() / "hexctl_exp_test";
  std::filesystem::remove_all(dir);

  ExperimentSpec spec = preset_experiment("stand");
  spec.duration = 1.5;
  spec.out_dir = (dir / "a").string();
  ExperimentResult a = run_experiment(spec);
  CHECK_FALSE(a.diverged);
  CHECK(std::filesystem::exists(a.log_path));
  CHECK(std::filesystem::exists(a.metrics_path));
  CHECK(std::filesystem::exists(a.summary_path));
  CHECK(a.report.forward_velocity_mean < 0.005);

  spec.out_dir = (dir / "b").string();
  ExperimentResult b = run_experiment(spec);
  CHECK(slurp_file(a.log_path) == slurp_file(b.log_path));
  CHECK(slurp_file(a.metrics_path) == slurp_file(b.metrics_path));
}

TEST_CASE("custom gaits defined in the model config drive episodes") {
  auto dir = std::filesystem::temp_directory_path() / "hexctl_wave_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const std::string cfg_path = (dir / "wave.cfg").string();
  {
    std::ofstream out(cfg_path);
    out << "gait.wave.offsets = 0 0.5 0.1666666666666667 0.6666666666666666 "
           "0.3333333333333333 0.8333333333333334\n"
           "gait.wave.duty = 0.8\n";
  }
  ExperimentSpec spec;
  spec.name = "wave";
  spec.model_config_path = cfg_path;
  spec.gait_name = "wave";
  spec.velocity.vx = 0.1;
  spec.step_frequency = 0.5;
  spec.duration = 3.0;
  spec.out_dir = dir.string();
  ExperimentResult res = run_experiment(spec);
  CHECK_FALSE(res.diverged);
  CHECK(read_episode_csv(res.log_path).meta.gait == "wave");
}

TEST_CASE("metrics recompute from the written log byte-for-byte") {
  auto dir = std::filesystem::temp_directory_path() / "hexctl_exp_metrics";
  std::filesystem::remove_all(dir);
  ExperimentSpec spec = preset_experiment("stand");
  spec.duration = 1.0;
  spec.out_dir = dir.string();
  ExperimentResult res = run_experiment(spec);

  EpisodeLog log = read_episode_csv(res.log_path);
  MetricsReport recomputed = compute_metrics(log, default_model());
  CHECK(metrics_csv(recomputed) == slurp_file(res.metrics_path));
}
