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

#include "hexctl/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "hexctl/errors.hpp"

namespace hexctl {
namespace {

// Column offsets in the fixed episode schema.
constexpr int kColTime = 0;
constexpr int kColPz = 3;
constexpr int kColVx = 8;
constexpr int kColVy = 9;
constexpr int kColCmdTips = 14;
constexpr int kColActTips = 32;
constexpr int kColTorques = 50;
constexpr int kColPhase = 92;

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

}  // namespace

MetricsReport compute_metrics(const EpisodeLog& log, const RobotModel& model) {
  MetricsReport rep;
  rep.ticks = static_cast<long>(log.rows.size());
  if (log.rows.empty()) return rep;
  const double tick_period = log.meta.control_rate > 0.0
                                 ? 1.0 / log.meta.control_rate
                                 : 0.0;
  rep.duration =
      log.rows.back()[kColTime] - log.rows.front()[kColTime] + tick_period;

  std::array<double, kNumLegs> sq_sum{};
  double vx_sum = 0.0, vx_err_sq = 0.0, vy_sq = 0.0;

  for (const auto& row : log.rows) {
    for (int i = 0; i < kNumLegs; ++i) {
      double dx = row[kColCmdTips + 3 * i] - row[kColActTips + 3 * i];
      double dy = row[kColCmdTips + 3 * i + 1] - row[kColActTips + 3 * i + 1];
      double dz = row[kColCmdTips + 3 * i + 2] - row[kColActTips + 3 * i + 2];
      double err = std::sqrt(dx * dx + dy * dy + dz * dz);
      sq_sum[i] += err * err;
      rep.tip_max_error[i] = std::max(rep.tip_max_error[i], err);
    }
    vx_sum += row[kColVx];
    double verr = row[kColVx] - log.meta.command.vx;
    vx_err_sq += verr * verr;
    vy_sq += row[kColVy] * row[kColVy];

    for (int i = 0; i < kNumLegs; ++i) {
      for (int j = 0; j < 3; ++j) {
        double tau = std::abs(row[kColTorques + 3 * i + j]);
        if (tau > model.envelope.continuous_torque[j])
          ++rep.continuous_violations[j];
        if (tau > model.envelope.peak_torque[j]) ++rep.peak_violations[j];
        if (j == 1) rep.max_femur_torque = std::max(rep.max_femur_torque, tau);
      }
    }
  }

  const double n = static_cast<double>(rep.ticks);
  for (int i = 0; i < kNumLegs; ++i)
    rep.tip_rms_error[i] = std::sqrt(sq_sum[i] / n);
  rep.forward_velocity_mean = vx_sum / n;
  rep.forward_velocity_rms_error = std::sqrt(vx_err_sq / n);
  rep.lateral_velocity_rms = std::sqrt(vy_sq / n);

  // Height peak-to-peak per gait cycle, cycles delimited by phase wraps.
  double lo = log.rows.front()[kColPz], hi = lo;
  double prev_phase = log.rows.front()[kColPhase];
  double p2p_sum = 0.0;
  long cycles = 0;
  bool any_wrap = false;
  for (size_t k = 1; k < log.rows.size(); ++k) {
    const double phase = log.rows[k][kColPhase];
    if (phase < prev_phase) {  // wrapped: close the cycle
      p2p_sum += hi - lo;
      ++cycles;
      any_wrap = true;
      lo = hi = log.rows[k][kColPz];
    } else {
      lo = std::min(lo, log.rows[k][kColPz]);
      hi = std::max(hi, log.rows[k][kColPz]);
    }
    prev_phase = phase;
  }
  if (!any_wrap) {  // constant phase: the whole log is one segment
    p2p_sum = hi - lo;
    cycles = 1;
  }
  rep.height_cycles = cycles;
  rep.height_p2p_mean = cycles > 0 ? p2p_sum / cycles : 0.0;
  return rep;
}

std::string metrics_csv(const MetricsReport& r) {
  std::string out = "metric,value\n";
  out += "ticks," + std::to_string(r.ticks) + "\n";
  out += "duration_s," + fmt(r.duration) + "\n";
  for (int i = 0; i < kNumLegs; ++i) {
    out += std::string("tip_rms_error_m_") + kLegShortNames[i] + "," +
           fmt(r.tip_rms_error[i]) + "\n";
    out += std::string("tip_max_error_m_") + kLegShortNames[i] + "," +
           fmt(r.tip_max_error[i]) + "\n";
  }
  out += "height_p2p_mean_m," + fmt(r.height_p2p_mean) + "\n";
  out += "height_cycles," + std::to_string(r.height_cycles) + "\n";
  out += "forward_velocity_mean_mps," + fmt(r.forward_velocity_mean) + "\n";
  out += "forward_velocity_rms_error_mps," +
         fmt(r.forward_velocity_rms_error) + "\n";
  out += "lateral_velocity_rms_mps," + fmt(r.lateral_velocity_rms) + "\n";
  for (int j = 0; j < 3; ++j)
    out += std::string("continuous_violations_") + kJointNames[j] + "," +
           std::to_string(r.continuous_violations[j]) + "\n";
  for (int j = 0; j < 3; ++j)
    out += std::string("peak_violations_") + kJointNames[j] + "," +
           std::to_string(r.peak_violations[j]) + "\n";
  out += "max_femur_torque_nm," + fmt(r.max_femur_torque) + "\n";
  return out;
}

std::string metrics_summary(const MetricsReport& r, const EpisodeMeta& meta) {
  char buf[512];
  std::string out;
  std::snprintf(buf, sizeof(buf),
                "episode %s: gait %s, command (%.3g, %.3g) m/s, %.3g rad/s at "
                "%.3g Hz for %.4g s (%ld ticks)\n",
                meta.name.c_str(), meta.gait.c_str(), meta.command.vx,
                meta.command.vy, meta.command.wz, meta.step_frequency,
                r.duration, r.ticks);
  out += buf;
  std::snprintf(buf, sizeof(buf),
                "forward velocity: mean %.4g m/s (command %.4g), rms error "
                "%.4g m/s; lateral rms %.4g m/s\n",
                r.forward_velocity_mean, meta.command.vx,
                r.forward_velocity_rms_error, r.lateral_velocity_rms);
  out += buf;
  std::snprintf(buf, sizeof(buf),
                "body height: %.4g m peak-to-peak averaged over %ld cycles\n",
                r.height_p2p_mean, r.height_cycles);
  out += buf;
  double worst_rms = 0, worst_max = 0;
  for (int i = 0; i < kNumLegs; ++i) {
    worst_rms = std::max(worst_rms, r.tip_rms_error[i]);
    worst_max = std::max(worst_max, r.tip_max_error[i]);
  }
  std::snprintf(buf, sizeof(buf),
                "tip tracking: worst rms %.4g m, worst max %.4g m\n", worst_rms,
                worst_max);
  out += buf;
  std::snprintf(
      buf, sizeof(buf),
      "torque envelope: continuous violations (coxa %ld, femur %ld, tibia "
      "%ld), peak violations (%ld, %ld, %ld), max femur %.4g N*m\n",
      r.continuous_violations[0], r.continuous_violations[1],
      r.continuous_violations[2], r.peak_violations[0], r.peak_violations[1],
      r.peak_violations[2], r.max_femur_torque);
  out += buf;
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << content;
}

}  // namespace hexctl
