// Copyright 2026 The rcpcc Authors
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

#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace rcpcc::abr {

/// Session score: sum q(R_i) - mu * sum K_i - sum |q(R_{i+1}) - q(R_i)|.
/// Larger is better.
struct QoEParams {
  double mu = 0.5;
  std::function<double(int)> quality = default_quality;

  static double default_quality(int level) { return 25.0 - 5.0 * level; }
};

enum class Action : std::uint8_t { kHold, kCoarser, kFiner, kRollback };

const char* to_string(Action a);

struct SessionRecord {
  std::size_t frame = 0;
  int level = 0;
  std::size_t queue = 0;  // frames waiting when this frame was enqueued
  std::size_t bytes = 0;  // encoded size of this frame
  double timestamp_s = 0;
  Action action = Action::kHold;

  friend bool operator==(const SessionRecord&, const SessionRecord&) = default;
};

struct SessionLog {
  std::vector<SessionRecord> records;

  /// Columns: frame,level,queue,bytes,timestamp,action
  void write_csv(std::ostream& os) const;
  std::string to_csv() const;
  /// Throws InvalidArgument on malformed rows or non-contiguous frame ids.
  static SessionLog read_csv(std::istream& is);

  std::size_t max_queue() const;
  double mean_queue() const;
};

struct QoEReport {
  double score = 0;
  double quality_sum = 0;
  double queue_penalty = 0;   // mu * sum K_i
  double switch_penalty = 0;  // sum |delta q|
  std::size_t frames = 0;
  std::size_t switches = 0;

  double per_frame() const { return frames ? score / static_cast<double>(frames) : 0.0; }
};

/// Throws InvalidArgument for an empty log or mu < 0.
QoEReport evaluate_qoe(const SessionLog& log, const QoEParams& params = {});

struct ControllerConfig {
  int k_high = 5;
  int k_low = 1;
  int stable_window = 10;
  int probation_window = 10;
  int cooldown = 5;
  int failed_memory = 30;
  double growth_slope = 0.5;  // frames per frame over the history window

  /// Throws InvalidArgument unless all windows are positive and k_low < k_high.
  void validate() const;
};

struct ControllerState {
  int level = 0;
  std::int64_t frame = 0;  // steps taken so far
  std::int64_t last_switch = -(std::int64_t{1} << 40);
  int stable_run = 0;
  std::deque<std::size_t> history;
  std::vector<std::int64_t> failed_until;  // per level, exclusive frame bound
  bool probation = false;
  int pre_attempt_level = 0;
  std::int64_t probation_start = 0;

  static ControllerState initial(int ladder_size, int start_level = 0);
};

struct ControllerStep {
  ControllerState state;
  int level = 0;
  Action action = Action::kHold;
};

/// Pure transition: observes the queue length before the next frame is
/// enqueued and returns the level to encode that frame at.
ControllerStep controller_step(const ControllerState& state, std::size_t observed_queue,
                               const ControllerConfig& config, int ladder_size);

/// True when the least-squares slope of `history` is at least `slope`.
bool queue_growing(const std::deque<std::size_t>& history, double slope);

/// Audits a session produced by the controller: single-step moves, cooldown
/// between non-rollback switches, failed-level memory, level bounds. Returns
/// human-readable violations; empty means the session is clean.
std::vector<std::string> check_invariants(const SessionLog& log,
                                          const ControllerConfig& config,
                                          int ladder_size);

}  // namespace rcpcc::abr
