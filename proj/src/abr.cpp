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

#include "rcpcc/abr.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <sstream>

#include "rcpcc/common.hpp"
#include "rcpcc/metrics.hpp"

namespace rcpcc::abr {

const char*
to_string(Action a)
{
  switch (a) {
  case Action::kHold:
    return "hold";
  case Action::kCoarser:
    return "coarser";
  case Action::kFiner:
    return "finer";
  case Action::kRollback:
    return "rollback";
  }
  return "?";
}

namespace {

Action
parse_action(const std::string& s)
{
  for (auto a : {Action::kHold, Action::kCoarser, Action::kFiner, Action::kRollback})
    if (s == to_string(a))
      return a;
  throw Error(ErrorCode::kInvalidArgument, "unknown controller action '" + s + "'");
}

}  // namespace

void
SessionLog::write_csv(std::ostream& os) const
{
  os << "frame,level,queue,bytes,timestamp,action\n";
  for (const auto& r : records)
    os << r.frame << ',' << r.level << ',' << r.queue << ',' << r.bytes << ','
       << fmt_num(r.timestamp_s, 3) << ',' << to_string(r.action) << '\n';
}

std::string
SessionLog::to_csv() const
{
  std::ostringstream os;
  write_csv(os);
  return os.str();
}

SessionLog
SessionLog::read_csv(std::istream& is)
{
  SessionLog log;
  std::string line;
  if (!std::getline(is, line) || line.rfind("frame,level,queue", 0) != 0)
    throw Error(ErrorCode::kInvalidArgument, "session CSV: missing header");
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty())
      continue;
    std::istringstream ls(line);
    SessionRecord r;
    std::string action;
    char c1, c2, c3, c4, c5;
    if (!(ls >> r.frame >> c1 >> r.level >> c2 >> r.queue >> c3 >> r.bytes >> c4
          >> r.timestamp_s >> c5)
        || c1 != ',' || c2 != ',' || c3 != ',' || c4 != ',' || c5 != ','
        || !std::getline(ls, action))
      throw Error(ErrorCode::kInvalidArgument,
                  "session CSV line " + std::to_string(lineno) + " is malformed");
    if (!action.empty() && action.back() == '\r')
      action.pop_back();
    r.action = parse_action(action);
    if (r.frame != log.records.size())
      throw Error(ErrorCode::kInvalidArgument, "session CSV: frame ids not contiguous");
    log.records.push_back(r);
  }
  return log;
}

std::size_t
SessionLog::max_queue() const
{
  std::size_t m = 0;
  for (const auto& r : records)
    m = std::max(m, r.queue);
  return m;
}

double
SessionLog::mean_queue() const
{
  if (records.empty())
    return 0.0;
  double s = 0;
  for (const auto& r : records)
    s += static_cast<double>(r.queue);
  return s / static_cast<double>(records.size());
}

QoEReport
evaluate_qoe(const SessionLog& log, const QoEParams& params)
{
  if (log.records.empty())
    throw Error(ErrorCode::kInvalidArgument, "empty session log");
  if (!(params.mu >= 0))
    throw Error(ErrorCode::kInvalidArgument, "mu must be non-negative");
  QoEReport q;
  q.frames = log.records.size();
  for (std::size_t k = 0; k < log.records.size(); ++k) {
    const auto& r = log.records[k];
    q.quality_sum += params.quality(r.level);
    q.queue_penalty += params.mu * static_cast<double>(r.queue);
    if (k + 1 < log.records.size()) {
      const double d = params.quality(log.records[k + 1].level) - params.quality(r.level);
      q.switch_penalty += std::fabs(d);
      q.switches += log.records[k + 1].level != r.level;
    }
  }
  q.score = q.quality_sum - q.queue_penalty - q.switch_penalty;
  return q;
}

//============================================================================

void
ControllerConfig::validate() const
{
  if (k_low < 0 || k_high <= 0 || stable_window <= 0 || probation_window <= 0
      || cooldown <= 0 || failed_memory <= 0)
    throw Error(ErrorCode::kInvalidArgument, "controller windows must be positive");
  if (k_low >= k_high)
    throw Error(ErrorCode::kInvalidArgument, "k_low must be below k_high");
  if (!(growth_slope > 0))
    throw Error(ErrorCode::kInvalidArgument, "growth slope must be positive");
}

ControllerState
ControllerState::initial(int ladder_size, int start_level)
{
  if (ladder_size <= 0)
    throw Error(ErrorCode::kInvalidArgument, "ladder must not be empty");
  ControllerState s;
  s.level = std::clamp(start_level, 0, ladder_size - 1);
  s.failed_until.assign(static_cast<std::size_t>(ladder_size), 0);
  return s;
}

bool
queue_growing(const std::deque<std::size_t>& history, double slope)
{
  const std::size_t n = history.size();
  if (n < 2)
    return false;
  const double mean_x = (static_cast<double>(n) - 1) / 2;
  double mean_y = 0;
  for (auto v : history)
    mean_y += static_cast<double>(v);
  mean_y /= static_cast<double>(n);
  double sxy = 0, sxx = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double dx = static_cast<double>(k) - mean_x;
    sxy += dx * (static_cast<double>(history[k]) - mean_y);
    sxx += dx * dx;
  }
  return sxy / sxx >= slope;
}

ControllerStep
controller_step(const ControllerState& state, std::size_t observed_queue,
                const ControllerConfig& config, int ladder_size)
{
  if (ladder_size <= 0)
    throw Error(ErrorCode::kInvalidArgument, "ladder must not be empty");
  ControllerStep out{state, 0, Action::kHold};
  ControllerState& s = out.state;
  if (s.failed_until.size() != static_cast<std::size_t>(ladder_size))
    s.failed_until.resize(static_cast<std::size_t>(ladder_size), 0);
  s.level = std::clamp(s.level, 0, ladder_size - 1);

  const std::int64_t now = s.frame;
  s.history.push_back(observed_queue);
  while (s.history.size() > static_cast<std::size_t>(config.stable_window))
    s.history.pop_front();
  s.stable_run = observed_queue <= static_cast<std::size_t>(config.k_low) ? s.stable_run + 1 : 0;

  const bool over = observed_queue > static_cast<std::size_t>(config.k_high);
  const bool growing = s.history.size() == static_cast<std::size_t>(config.stable_window)
    && queue_growing(s.history, config.growth_slope);
  const bool cooled = now - s.last_switch >= config.cooldown;

  auto switch_to = [&](int level, Action action) {
    s.level = level;
    s.last_switch = now;
    s.stable_run = 0;
    s.history.clear();
    out.action = action;
  };

  if (s.probation) {
    if (now - s.probation_start >= config.probation_window) {
      s.probation = false;
    } else if (over || growing) {
      s.failed_until[static_cast<std::size_t>(s.level)] = now + config.failed_memory;
      s.probation = false;
      switch_to(s.pre_attempt_level, Action::kRollback);
    }
  }

  if (out.action == Action::kHold && cooled) {
    if ((over || growing) && s.level + 1 < ladder_size) {
      s.probation = false;
      switch_to(s.level + 1, Action::kCoarser);
    } else if (s.stable_run >= config.stable_window && s.level > 0
               && s.failed_until[static_cast<std::size_t>(s.level - 1)] <= now) {
      s.probation = true;
      s.pre_attempt_level = s.level;
      s.probation_start = now;
      switch_to(s.level - 1, Action::kFiner);
    }
  }

  out.level = s.level;
  ++s.frame;
  return out;
}

std::vector<std::string>
check_invariants(const SessionLog& log, const ControllerConfig& config, int ladder_size)
{
  std::vector<std::string> bad;
  auto fail = [&](std::size_t frame, const std::string& what) {
    bad.push_back("frame " + std::to_string(frame) + ": " + what);
  };
  std::int64_t last_switch = -(std::int64_t{1} << 40);
  std::vector<std::int64_t> failed_until(static_cast<std::size_t>(std::max(ladder_size, 0)), 0);
  for (std::size_t k = 0; k < log.records.size(); ++k) {
    const auto& r = log.records[k];
    const auto now = static_cast<std::int64_t>(k);
    if (r.level < 0 || r.level >= ladder_size) {
      fail(k, "level " + std::to_string(r.level) + " outside ladder");
      continue;
    }
    if (k == 0)
      continue;
    const int prev = log.records[k - 1].level;
    const int step = r.level - prev;
    if (std::abs(step) > 1)
      fail(k, "level jumped from " + std::to_string(prev) + " to " + std::to_string(r.level));
    if (step == 0)
      continue;
    if (r.action == Action::kRollback) {
      failed_until[static_cast<std::size_t>(prev)] = now + config.failed_memory;
    } else {
      if (now - last_switch < config.cooldown)
        fail(k, "switch " + std::to_string(now - last_switch)
                  + " frames after the previous one");
      if (step < 0 && failed_until[static_cast<std::size_t>(r.level)] > now)
        fail(k, "re-attempted failed level " + std::to_string(r.level));
    }
    last_switch = now;
  }
  return bad;
}

}  // namespace rcpcc::abr
