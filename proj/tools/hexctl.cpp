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

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hexctl/dynamics.hpp"
#include "hexctl/errors.hpp"
#include "hexctl/experiment.hpp"
#include "hexctl/gait.hpp"
#include "hexctl/impedance.hpp"
#include "hexctl/kinematics.hpp"
#include "hexctl/metrics.hpp"
#include "hexctl/model.hpp"
#include "hexctl/sim.hpp"
#include "hexctl/trajectory.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitDivergence = 3;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw hexctl::ConfigError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

hexctl::RobotModel model_from_path(const std::string& path) {
  return path.empty() ? hexctl::default_model()
                      : hexctl::load_model(slurp(path));
}

int cmd_run(const std::string& spec_path, const std::string& preset,
            const std::string& out_dir, double duration, std::uint64_t seed) {
  using namespace hexctl;
  if (preset == "resonance-pair") {
    // Paired step-frequency comparison at the same commanded speed.
    std::string lateral_summary = "resonance comparison (lateral velocity rms)\n";
    for (const char* half_name : {"resonance-0.75", "resonance-1.0"}) {
      const std::string half = half_name;
      ExperimentSpec spec = preset_experiment(half);
      if (!out_dir.empty()) spec.out_dir = out_dir;
      if (duration > 0) spec.duration = duration;
      spec.seed = seed;
      ExperimentResult res = run_experiment(spec);
      char buf[160];
      std::snprintf(buf, sizeof(buf), "  %s Hz: lateral rms %.6g m/s%s\n",
                    half == "resonance-0.75" ? "0.75" : "1.00",
                    res.report.lateral_velocity_rms,
                    res.diverged ? " (diverged)" : "");
      lateral_summary += buf;
      std::cout << "wrote " << res.log_path << "\n"
                << metrics_summary(res.report, res.meta);
      if (res.diverged) {
        std::cerr << "divergence: " << res.divergence_reason << "\n";
        return kExitDivergence;
      }
    }
    const std::string cmp_path =
        (std::filesystem::path(out_dir.empty() ? "." : out_dir) /
         "resonance-pair.summary.txt")
            .string();
    write_text_file(cmp_path, lateral_summary);
    std::cout << lateral_summary << "wrote " << cmp_path << "\n";
    return kExitOk;
  }

  ExperimentSpec spec;
  if (!preset.empty())
    spec = preset_experiment(preset);
  else if (!spec_path.empty())
    spec = experiment_from_file(spec_path);
  else
    throw ConfigError("run: give a spec file or --preset");
  if (!out_dir.empty()) spec.out_dir = out_dir;
  if (duration > 0) spec.duration = duration;
  spec.seed = seed;

  ExperimentResult res = run_experiment(spec);
  std::cout << "wrote " << res.log_path << "\n"
            << "wrote " << res.metrics_path << "\n"
            << metrics_summary(res.report, res.meta);
  if (res.diverged) {
    std::cerr << "divergence: " << res.divergence_reason << "\n";
    return kExitDivergence;
  }
  return kExitOk;
}

int cmd_metrics(const std::string& log_path, const std::string& model_path,
                const std::string& out_dir) {
  using namespace hexctl;
  EpisodeLog log = read_episode_csv(log_path);
  RobotModel model = model_from_path(model_path);
  MetricsReport report = compute_metrics(log, model);
  std::cout << metrics_summary(report, log.meta);
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    const std::string base =
        (std::filesystem::path(out_dir) / log.meta.name).string();
    write_text_file(base + ".metrics.csv", metrics_csv(report));
    write_text_file(base + ".summary.txt", metrics_summary(report, log.meta));
    std::cout << "wrote " << base << ".metrics.csv\n";
  } else {
    std::cout << metrics_csv(report);
  }
  return kExitOk;
}

int cmd_model_validate(const std::string& model_path) {
  using namespace hexctl;
  RobotModel model = model_from_path(model_path);  // throws on violations
  std::cout << serialize_model(model);
  std::cout << "# model ok\n";
  return kExitOk;
}

int cmd_gait_inspect(const std::string& gait_name,
                     const std::string& model_path, int samples) {
  using namespace hexctl;
  ConfigMap cfg =
      model_path.empty() ? ConfigMap() : ConfigMap::parse(slurp(model_path));
  GaitDefinition gait = gait_from_config(cfg, gait_name);
  std::cout << "phase";
  for (const char* leg : kLegShortNames)
    std::cout << "," << leg << "_mode," << leg << "_progress";
  std::cout << "\n";
  for (int k = 0; k < samples; ++k) {
    double phase = static_cast<double>(k) / samples;
    GaitPhaseState state = make_phase_state(phase, gait);
    std::printf("%.6f", phase);
    for (int i = 0; i < kNumLegs; ++i)
      std::printf(",%s,%.6f", kLegModeNames[static_cast<int>(state.legs[i].mode)],
                  state.legs[i].local_progress);
    std::printf("\n");
  }
  return kExitOk;
}

int cmd_traj_dump(const std::string& gait_name, const std::string& model_path,
                  double vx, double vy, double wz, double frequency,
                  double clearance, const std::string& out_dir, int samples) {
  using namespace hexctl;
  ConfigMap cfg =
      model_path.empty() ? ConfigMap() : ConfigMap::parse(slurp(model_path));
  RobotModel model = model_from_path(model_path);
  GaitDefinition gait = gait_from_config(cfg, gait_name);
  BodyVelocity velocity{vx, vy, wz};
  std::filesystem::create_directories(out_dir);
  for (LegId id : kAllLegs) {
    LegTrajectory traj =
        build_trajectory(model, id, gait, velocity, frequency, clearance);
    const std::string path =
        (std::filesystem::path(out_dir) /
         (std::string("traj_") + kLegShortNames[leg_index(id)] + ".csv"))
            .string();
    std::ofstream out(path);
    out << "t,x,y,z,xd,yd,zd\n";
    char buf[256];
    double t = 0.0;
    for (int seg = 0; seg < kSegmentsPerStep; ++seg) {
      const BezierSegment& segment = traj.segments[seg];
      for (int k = 0; k < samples; ++k) {
        double u = static_cast<double>(k) / samples;
        Vec3 p = segment.position(u);
        Vec3 v = segment.velocity(u);
        std::snprintf(buf, sizeof(buf),
                      "%.6f,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g\n",
                      t + u * segment.duration, p.x(), p.y(), p.z(), v.x(),
                      v.y(), v.z());
        out << buf;
      }
      t += segment.duration;
    }
    std::cout << "wrote " << path << "\n";
  }
  return kExitOk;
}

int cmd_kin_check(const std::string& model_path, int samples) {
  using namespace hexctl;
  RobotModel model = model_from_path(model_path);
  const LegModel& leg = model.legs[0];
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  double max_roundtrip = 0.0, max_jacobian = 0.0, max_power = 0.0;
  const double h = 1e-6;
  for (int k = 0; k < samples; ++k) {
    Vec3 q;
    do {
      for (int j = 0; j < 3; ++j) {
        const Interval& lim = leg.joint_limits[j];
        q[j] = lim.lo + unit(rng) * lim.width();
      }
    } while (planar_radius(leg, q) < 1e-3);  // outward workspace only
    const Vec3 tip = fk(leg, q);
    max_roundtrip = std::max(max_roundtrip, (fk(leg, ik(leg, tip)) - tip).norm());

    const Mat3 J = jacobian(leg, q);
    for (int j = 0; j < 3; ++j) {
      Vec3 qp = q, qm = q;
      qp[j] += h;
      qm[j] -= h;
      const Vec3 col = (fk(leg, qp) - fk(leg, qm)) / (2.0 * h);
      max_jacobian = std::max(max_jacobian, (J.col(j) - col).norm());
    }

    // Virtual work: tau . qdot == F . (J qdot).
    Vec3 qdot(unit(rng) - 0.5, unit(rng) - 0.5, unit(rng) - 0.5);
    Vec3 force(unit(rng) - 0.5, unit(rng) - 0.5, unit(rng) - 0.5);
    force *= 100.0;
    const double lhs = (J.transpose() * force).dot(qdot);
    const double rhs = force.dot(J * qdot);
    max_power = std::max(max_power, std::abs(lhs - rhs));
  }
  std::printf("kin check over %d samples\n", samples);
  std::printf("  ik(fk) round-trip max error: %.3e m\n", max_roundtrip);
  std::printf("  jacobian vs central differences max error: %.3e\n",
              max_jacobian);
  std::printf("  virtual-work identity max error: %.3e W\n", max_power);
  return kExitOk;
}

int cmd_dyn_check(const std::string& model_path, int samples) {
  using namespace hexctl;
  RobotModel model = model_from_path(model_path);
  const LegModel& leg = model.legs[0];
  const Vec3 gravity(0, 0, -kGravity);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  // Gravity statics against the potential-energy gradient.
  auto potential = [&](const Vec3& q) {
    const Mat3 R1 = Eigen::AngleAxisd(q[0], Vec3::UnitZ()).toRotationMatrix();
    const Mat3 R2 =
        R1 * Eigen::AngleAxisd(-q[1], Vec3::UnitY()).toRotationMatrix();
    const Mat3 R3 = R1 * Eigen::AngleAxisd(-(q[1] - q[2]), Vec3::UnitY())
                             .toRotationMatrix();
    const Vec3 o1 = R1 * Vec3(leg.l_coxa, 0, 0);
    const Vec3 o2 = o1 + R2 * Vec3(leg.l_femur, 0, 0);
    const Vec3 c0 = R1 * Vec3(leg.link_com_offsets[0], 0, 0);
    const Vec3 c1 = o1 + R2 * Vec3(leg.link_com_offsets[1], 0, 0);
    const Vec3 c2 = o2 + R3 * Vec3(leg.link_com_offsets[2], 0, 0);
    return -(leg.link_masses[0] * gravity.dot(c0) +
             leg.link_masses[1] * gravity.dot(c1) +
             leg.link_masses[2] * gravity.dot(c2));
  };
  double max_statics = 0.0;
  const double h = 1e-5;
  for (int k = 0; k < samples; ++k) {
    Vec3 q;
    for (int j = 0; j < 3; ++j) {
      const Interval& lim = leg.joint_limits[j];
      q[j] = lim.lo + unit(rng) * lim.width();
    }
    const Vec3 tau =
        inverse_dynamics(leg, q, Vec3::Zero(), Vec3::Zero(), gravity);
    for (int j = 0; j < 3; ++j) {
      Vec3 qp = q, qm = q;
      qp[j] += h;
      qm[j] -= h;
      const double grad = (potential(qp) - potential(qm)) / (2.0 * h);
      max_statics = std::max(max_statics, std::abs(tau[j] - grad));
    }
  }

  // Stance solve residuals.
  StanceProblem hex;
  for (LegId id : kAllLegs)
    hex.foot_positions.push_back(default_foothold(model, id));
  hex.body_wrench = standing_wrench(model.body.mass);
  const StanceSolution hex_sol = solve_stance_forces(hex);

  StanceProblem tripod = hex;
  tripod.foot_positions = {default_foothold(model, LegId::kFrontLeft),
                           default_foothold(model, LegId::kMiddleRight),
                           default_foothold(model, LegId::kRearLeft)};
  const StanceSolution tri_sol = solve_stance_forces(tripod);

  std::printf("dyn check over %d samples\n", samples);
  std::printf("  gravity statics vs potential gradient max error: %.3e N*m\n",
              max_statics);
  std::printf("  6-foot stance residual ||Ax-b||: %.3e\n", hex_sol.residual);
  std::printf("  tripod stance residual ||Ax-b||: %.3e\n", tri_sol.residual);
  std::printf("  per-foot vertical share, 6-foot stance: %.6f N (mg/6 = %.6f)\n",
              hex_sol.forces[0].z(), model.body.mass * kGravity / 6.0);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hexapod locomotion control library driver"};
  app.require_subcommand(1);

  std::string spec_path, preset, out_dir, model_path, log_path;
  std::string gait_name = "tripod";
  std::string leg_name;
  double duration = 0.0;
  std::uint64_t seed = 0;
  int samples = 0;
  double vx = 0.5, vy = 0.0, wz = 0.0, frequency = 1.0, clearance = 0.08;

  CLI::App* run = app.add_subcommand("run", "run an experiment episode");
  run->add_option("spec", spec_path, "experiment spec file");
  run->add_option("--preset", preset, "built-in preset name");
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--duration", duration, "override duration (s)");
  run->add_option("--seed", seed, "seed recorded in outputs");

  CLI::App* metrics = app.add_subcommand("metrics", "recompute metrics from a log");
  metrics->add_option("log", log_path, "episode log CSV")->required();
  metrics->add_option("--model", model_path, "model config file");
  metrics->add_option("--out", out_dir, "output directory");

  CLI::App* model_cmd = app.add_subcommand("model", "model utilities");
  CLI::App* model_validate =
      model_cmd->add_subcommand("validate", "resolve and validate the model");
  model_validate->add_option("--config", model_path, "model config file");

  CLI::App* gait_cmd = app.add_subcommand("gait", "gait utilities");
  CLI::App* gait_inspect =
      gait_cmd->add_subcommand("inspect", "print the mode timeline as CSV");
  gait_inspect->add_option("--gait", gait_name, "gait name");
  gait_inspect->add_option("--config", model_path, "config file");
  gait_inspect->add_option("--samples", samples, "rows over one cycle");

  CLI::App* traj_cmd = app.add_subcommand("traj", "trajectory utilities");
  CLI::App* traj_dump =
      traj_cmd->add_subcommand("dump", "sample tip trajectories to CSV");
  traj_dump->add_option("--gait", gait_name, "gait name");
  traj_dump->add_option("--config", model_path, "config file");
  traj_dump->add_option("--vx", vx, "forward velocity (m/s)");
  traj_dump->add_option("--vy", vy, "lateral velocity (m/s)");
  traj_dump->add_option("--wz", wz, "yaw rate (rad/s)");
  traj_dump->add_option("--frequency", frequency, "step frequency (Hz)");
  traj_dump->add_option("--clearance", clearance, "swing clearance (m)");
  traj_dump->add_option("--out", out_dir, "output directory");
  traj_dump->add_option("--samples", samples, "samples per segment");

  CLI::App* kin_cmd = app.add_subcommand("kin", "kinematics utilities");
  CLI::App* kin_check = kin_cmd->add_subcommand("check", "run the round-trip suite");
  kin_check->add_option("--config", model_path, "model config file");
  kin_check->add_option("--samples", samples, "random samples");

  CLI::App* dyn_cmd = app.add_subcommand("dyn", "dynamics utilities");
  CLI::App* dyn_check = dyn_cmd->add_subcommand("check", "run the oracle suites");
  dyn_check->add_option("--config", model_path, "model config file");
  dyn_check->add_option("--samples", samples, "random samples");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed())
      return cmd_run(spec_path, preset, out_dir, duration, seed);
    if (metrics->parsed()) return cmd_metrics(log_path, model_path, out_dir);
    if (model_validate->parsed()) return cmd_model_validate(model_path);
    if (gait_inspect->parsed())
      return cmd_gait_inspect(gait_name, model_path,
                              samples > 0 ? samples : 200);
    if (traj_dump->parsed())
      return cmd_traj_dump(gait_name, model_path, vx, vy, wz, frequency,
                           clearance, out_dir.empty() ? "." : out_dir,
                           samples > 0 ? samples : 100);
    if (kin_check->parsed())
      return cmd_kin_check(model_path, samples > 0 ? samples : 20000);
    if (dyn_check->parsed())
      return cmd_dyn_check(model_path, samples > 0 ? samples : 2000);
  } catch (const hexctl::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const hexctl::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const hexctl::WorkspaceError& e) {
    std::cerr << "workspace error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const hexctl::DivergenceError& e) {
    std::cerr << "divergence: " << e.what() << "\n";
    return kExitDivergence;
  } catch (const hexctl::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cerr << app.help();
  return 1;
}
