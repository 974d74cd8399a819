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

#include <atomic>
#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rcpcc/abr.hpp"
#include "rcpcc/pipeline.hpp"

namespace rcpcc::stream {

struct TraceSegment {
  double start_s = 0;
  double rate = 0;  // bytes per second
};

/// Piecewise-constant link capacity.
class BandwidthTrace {
public:
  /// Throws InvalidArgument unless start times strictly increase from 0 and
  /// every rate is positive.
  explicit BandwidthTrace(std::vector<TraceSegment> segments);

  /// 300, 100, 130, 160 KB/s starting at 0, 55, 120, 245 s (1 KB = 1000 B).
  static BandwidthTrace street_trace();
  static BandwidthTrace constant(double rate);

  /// CSV `time_s,rate_bytes_per_s`, header optional.
  static BandwidthTrace read_csv(std::istream& is);
  static BandwidthTrace load(const std::filesystem::path& path);
  void write_csv(std::ostream& os) const;

  double rate_at(double t) const;
  /// Exact integral of the rate over [t0, t1].
  double bytes_between(double t0, double t1) const;
  const std::vector<TraceSegment>& segments() const { return segments_; }

private:
  std::vector<TraceSegment> segments_;
};

struct QueuedFrame {
  std::size_t index = 0;
  int level = 0;
  std::size_t size = 0;
  std::vector<std::uint8_t> bytes;  // empty in size-only simulation
  double enqueued_at = 0;           // seconds, caller's clock
};

/// FIFO of encoded frames awaiting transmission. All members are safe to call
/// from one producer and one consumer thread concurrently.
class SenderQueue {
public:
  /// cap = 0 means unbounded; otherwise the oldest frame is dropped on overflow.
  explicit SenderQueue(std::size_t cap = 0) : cap_(cap) {}

  void push(QueuedFrame frame);
  /// Blocks until a frame is available or close() was called.
  std::optional<QueuedFrame> pop_wait();
  std::optional<QueuedFrame> try_pop();
  void close();

  std::size_t length() const { return length_.load(); }
  std::size_t queued_bytes() const;

  struct Counters {
    std::uint64_t enqueued_bytes = 0;
    std::uint64_t dequeued_bytes = 0;
    std::uint64_t dropped_bytes = 0;
    std::size_t dropped_frames = 0;
  };
  Counters counters() const;

private:
  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::deque<QueuedFrame> frames_;
  std::atomic<std::size_t> length_{0};
  std::size_t bytes_ = 0;
  std::size_t cap_ = 0;
  bool closed_ = false;
  Counters counters_;
};

/// Encoded frame size for (dataset frame, level); memoized compression of a
/// cyclic dataset.
class EncodedSizeCache {
public:
  EncodedSizeCache(std::vector<PointCloud> clouds, std::vector<CompressionLevel> ladder,
                   CodecOptions options = {});

  std::size_t size(std::size_t frame, int level);
  std::vector<std::uint8_t> bytes(std::size_t frame, int level);
  int ladder_size() const { return static_cast<int>(ladder_.size()); }
  std::size_t dataset_size() const { return clouds_.size(); }

private:
  std::vector<PointCloud> clouds_;
  std::vector<CompressionLevel> ladder_;
  CodecOptions options_;
  std::map<std::pair<std::size_t, int>, std::size_t> sizes_;
};

using FrameSizer = std::function<std::size_t(std::size_t frame, int level)>;

struct SimulationConfig {
  double fps = 10;
  double tick_s = 0.01;
  double duration_s = 300;
  int ladder_size = 6;
  int fixed_level = 0;  // used when the controller is off
  abr::ControllerConfig controller;
  abr::QoEParams qoe;
  std::size_t queue_cap = 0;

  void validate() const;
};

struct LinkStats {
  std::uint64_t enqueued_bytes = 0;
  std::uint64_t transmitted_bytes = 0;
  std::uint64_t queued_bytes = 0;  // left at the end
  std::uint64_t dropped_bytes = 0;
  std::size_t delivered_frames = 0;
  std::vector<std::uint32_t> transmitted_per_tick;
};

struct SessionResult {
  abr::SessionLog log;
  LinkStats link;
};

/// Tick-driven sender over a simulated link: each tick drains the queue
/// through the trace's budget, then enqueues the frame due at that tick after
/// consulting the controller. Deterministic.
SessionResult run_session(const BandwidthTrace& trace, const FrameSizer& sizer,
                          const SimulationConfig& config, bool use_controller);

struct SimulationResult {
  SessionResult with_strategy;
  SessionResult without_strategy;
  abr::QoEReport qoe_with;
  abr::QoEReport qoe_without;
};

SimulationResult simulate(const BandwidthTrace& trace, const FrameSizer& sizer,
                          const SimulationConfig& config);

//============================================================================
// Wire transport: u32le length | frame bytes, over a reliable byte stream.

/// Incremental parser with resynchronization. Candidate frames must carry the
/// frame magic right after the length and pass decode_frame; anything else is
/// skipped one byte at a time.
class FrameParser {
public:
  explicit FrameParser(std::size_t max_frame = 64u << 20) : max_frame_(max_frame) {}

  void feed(std::span<const std::uint8_t> data);
  /// Next complete, valid frame or nullopt when more input is needed.
  std::optional<std::vector<std::uint8_t>> next();
  /// Marks end of input: incomplete candidates are then skipped so frames
  /// hidden behind a corrupted length are still recovered.
  void finish() { eof_ = true; }

  std::size_t skipped_bytes() const { return skipped_; }
  std::size_t rejected_frames() const { return rejected_; }
  std::size_t buffered() const { return buf_.size() - pos_; }

private:
  std::vector<std::uint8_t> buf_;
  std::size_t pos_ = 0;
  std::size_t max_frame_;
  std::size_t skipped_ = 0;
  std::size_t rejected_ = 0;
  bool eof_ = false;
};

/// A connected TCP stream. Throws Io on connection failures and LinkClosed
/// when the peer goes away mid-transfer.
class SocketLink {
public:
  static SocketLink connect(const std::string& host, std::uint16_t port);
  /// Binds and waits for one peer. `bound_port` receives the actual port when
  /// `port` is 0.
  static SocketLink accept_one(std::uint16_t port, std::uint16_t* bound_port = nullptr,
                               const std::function<void(std::uint16_t)>& on_listen = {});

  SocketLink(SocketLink&& other) noexcept;
  SocketLink& operator=(SocketLink&& other) noexcept;
  SocketLink(const SocketLink&) = delete;
  SocketLink& operator=(const SocketLink&) = delete;
  ~SocketLink();

  void write_all(std::span<const std::uint8_t> data);
  /// Returns 0 on orderly shutdown.
  std::size_t read_some(std::span<std::uint8_t> buf);
  void shutdown_write();

private:
  explicit SocketLink(int fd) : fd_(fd) {}
  int fd_ = -1;
};

struct SenderOptions {
  double fps = 10;
  std::optional<BandwidthTrace> trace;  // shapes the drain when set
  bool use_controller = true;
  int fixed_level = 0;
  abr::ControllerConfig controller;
  std::size_t queue_cap = 0;
  std::size_t frames = 0;  // 0 = one pass over the dataset
};

/// Real-time sender: a producer encodes at `fps` and a drain thread writes
/// frames to the link, token-shaped by the trace. Timestamps use the
/// monotonic clock in seconds. Stops cleanly with a partial log on
/// LinkClosed.
abr::SessionLog sender_loop(const std::vector<PointCloud>& clouds,
                            const std::vector<CompressionLevel>& ladder,
                            const CodecOptions& codec, SocketLink& link,
                            const SenderOptions& options);

struct ReceivedFrame {
  std::size_t index = 0;
  int level = 0;
  std::size_t bytes = 0;
  double decoded_at = 0;  // monotonic clock, seconds
  double decode_ms = 0;
  std::size_t points = 0;
};

struct ReceiverReport {
  std::vector<ReceivedFrame> frames;
  std::size_t skipped_bytes = 0;
  std::size_t rejected_frames = 0;
};

/// Reads until the peer closes, decoding each frame. `on_frame` sees every
/// decoded cloud in arrival order.
ReceiverReport receiver_loop(
  SocketLink& link,
  const std::function<void(const ReceivedFrame&, const PointCloud&)>& on_frame = {});

/// Monotonic clock in seconds.
double monotonic_seconds();

}  // namespace rcpcc::stream
