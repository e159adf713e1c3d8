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

#include "hexctl/experiment.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hexctl/errors.hpp"

namespace hexctl {
namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

ExperimentSpec experiment_from_file(const std::string& path) {
  ConfigMap cfg = ConfigMap::parse(slurp(path));
  ExperimentSpec spec;
  spec.name = cfg.get_string("experiment.name", spec.name);
  spec.model_config_path =
      cfg.get_string("experiment.model_config", spec.model_config_path);
  spec.gait_name = cfg.get_string("experiment.gait", spec.gait_name);
  spec.velocity.vx = cfg.get_double("experiment.vx", spec.velocity.vx);
  spec.velocity.vy = cfg.get_double("experiment.vy", spec.velocity.vy);
  spec.velocity.wz = cfg.get_double("experiment.wz", spec.velocity.wz);
  spec.step_frequency =
      cfg.get_double("experiment.step_frequency", spec.step_frequency);
  spec.duration = cfg.get_double("experiment.duration", spec.duration);
  spec.out_dir = cfg.get_string("experiment.out_dir", spec.out_dir);
  if (!(spec.duration > 0)) throw ValidationError("experiment.duration: must be > 0");
  if (!spec.model_config_path.empty() &&
      !std::filesystem::exists(spec.model_config_path))
    throw ConfigError("experiment.model_config: no such file " +
                      spec.model_config_path);
  return spec;
}

ExperimentSpec preset_experiment(const std::string& name) {
  ExperimentSpec spec;
  spec.name = name;
  if (name == "stand") {
    spec.step_frequency = 0.0;
    spec.duration = 10.0;
  } else if (name == "tripod-0.3") {
    spec.velocity.vx = 0.3;
    spec.step_frequency = 1.0;
    spec.duration = 30.0;
  } else if (name == "tripod-0.5") {
    spec.velocity.vx = 0.5;
    spec.step_frequency = 1.0;
    spec.duration = 40.0;
  } else if (name == "amble-0.25") {
    spec.gait_name = "amble";
    spec.velocity.vx = 0.25;
    spec.step_frequency = 0.75;
    spec.duration = 20.0;
  } else if (name == "resonance-0.75") {
    spec.velocity.vx = 0.3;
    spec.step_frequency = 0.75;
    spec.duration = 30.0;
  } else if (name == "resonance-1.0") {
    spec.velocity.vx = 0.3;
    spec.step_frequency = 1.0;
    spec.duration = 30.0;
  } else {
    throw ConfigError("unknown preset \"" + name + "\"");
  }
  return spec;
}

std::vector<std::string> preset_names() {
  return {"stand",      "tripod-0.3",      "tripod-0.5",
          "amble-0.25", "resonance-0.75", "resonance-1.0"};
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  RobotModel model = spec.model_config_path.empty()
                         ? default_model()
                         : load_model(slurp(spec.model_config_path));
  ConfigMap cfg = spec.model_config_path.empty()
                      ? ConfigMap()
                      : ConfigMap::parse(slurp(spec.model_config_path));
  GaitDefinition gait = gait_from_config(cfg, spec.gait_name);
  ControllerConfig controller_config = controller_from_config(cfg);
  SimParams params;
  params.contact = contact_from_config(cfg);

  EpisodeMeta meta;
  meta.name = spec.name;
  meta.seed = spec.seed;

  std::filesystem::create_directories(spec.out_dir);
  const std::string base =
      (std::filesystem::path(spec.out_dir) / spec.name).string();

  EpisodeResult episode =
      run_episode(model, gait, controller_config, spec.velocity,
                  spec.step_frequency, spec.duration, params, meta);

  ExperimentResult result;
  result.meta = episode.log.meta;
  result.diverged = episode.diverged;
  result.divergence_reason = episode.divergence_reason;
  result.log_path = base + ".log.csv";
  result.metrics_path = base + ".metrics.csv";
  result.summary_path = base + ".summary.txt";

  write_episode_csv(episode.log, result.log_path);
  result.report = compute_metrics(episode.log, model);
  write_text_file(result.metrics_path, metrics_csv(result.report));
  std::string summary = metrics_summary(result.report, episode.log.meta);
  if (episode.diverged)
    summary += "DIVERGED: " + episode.divergence_reason + "\n";
  write_text_file(result.summary_path, summary);
  return result;
}

}  // namespace hexctl
