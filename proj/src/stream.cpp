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

#include "rcpcc/stream.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <sstream>
#include <thread>

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include "rcpcc/metrics.hpp"

namespace rcpcc::stream {

//============================================================================
// BandwidthTrace

BandwidthTrace::BandwidthTrace(std::vector<TraceSegment> segments)
  : segments_(std::move(segments))
{
  if (segments_.empty() || segments_.front().start_s != 0.0)
    throw Error(ErrorCode::kInvalidArgument, "trace must start at t = 0");
  for (std::size_t k = 0; k < segments_.size(); ++k) {
    if (!(segments_[k].rate > 0) || !std::isfinite(segments_[k].rate))
      throw Error(ErrorCode::kInvalidArgument, "trace rates must be positive");
    if (k && !(segments_[k].start_s > segments_[k - 1].start_s))
      throw Error(ErrorCode::kInvalidArgument, "trace times must strictly increase");
  }
}

BandwidthTrace
BandwidthTrace::street_trace()
{
  return BandwidthTrace({{0, 300e3}, {55, 100e3}, {120, 130e3}, {245, 160e3}});
}

BandwidthTrace
BandwidthTrace::constant(double rate)
{
  return BandwidthTrace({{0, rate}});
}

BandwidthTrace
BandwidthTrace::read_csv(std::istream& is)
{
  std::vector<TraceSegment> segs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos || line[0] == '#')
      continue;
    std::istringstream ls(line);
    TraceSegment s;
    char comma = 0;
    if (!(ls >> s.start_s >> comma >> s.rate) || comma != ',') {
      if (segs.empty() && lineno == 1)
        continue;  // header
      throw Error(ErrorCode::kInvalidArgument,
                  "trace line " + std::to_string(lineno) + ": expected time_s,rate");
    }
    segs.push_back(s);
  }
  return BandwidthTrace(std::move(segs));
}

BandwidthTrace
BandwidthTrace::load(const std::filesystem::path& path)
{
  std::ifstream is(path);
  if (!is)
    throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return read_csv(is);
}

void
BandwidthTrace::write_csv(std::ostream& os) const
{
  os << "time_s,rate_bytes_per_s\n";
  for (const auto& s : segments_)
    os << fmt_num(s.start_s, 3) << ',' << fmt_num(s.rate, 1) << '\n';
}

double
BandwidthTrace::rate_at(double t) const
{
  auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                             [](double v, const TraceSegment& s) { return v < s.start_s; });
  return it == segments_.begin() ? segments_.front().rate : std::prev(it)->rate;
}

double
BandwidthTrace::bytes_between(double t0, double t1) const
{
  if (!(t1 > t0))
    return 0.0;
  double total = 0;
  for (std::size_t k = 0; k < segments_.size(); ++k) {
    const double a = std::max(t0, segments_[k].start_s);
    const double b = k + 1 < segments_.size() ? std::min(t1, segments_[k + 1].start_s) : t1;
    if (b > a)
      total += (b - a) * segments_[k].rate;
  }
  return total;
}

//============================================================================
// SenderQueue

void
SenderQueue::push(QueuedFrame frame)
{
  {
    std::lock_guard lock(mu_);
    counters_.enqueued_bytes += frame.size;
    bytes_ += frame.size;
    frames_.push_back(std::move(frame));
    if (cap_ && frames_.size() > cap_) {
      counters_.dropped_bytes += frames_.front().size;
      ++counters_.dropped_frames;
      bytes_ -= frames_.front().size;
      frames_.pop_front();
    }
    length_.store(frames_.size());
  }
  cv_.notify_one();
}

std::optional<QueuedFrame>
SenderQueue::try_pop()
{
  std::lock_guard lock(mu_);
  if (frames_.empty())
    return std::nullopt;
  QueuedFrame f = std::move(frames_.front());
  frames_.pop_front();
  bytes_ -= f.size;
  counters_.dequeued_bytes += f.size;
  length_.store(frames_.size());
  return f;
}

std::optional<QueuedFrame>
SenderQueue::pop_wait()
{
  std::unique_lock lock(mu_);
  cv_.wait(lock, [&] { return closed_ || !frames_.empty(); });
  if (frames_.empty())
    return std::nullopt;
  QueuedFrame f = std::move(frames_.front());
  frames_.pop_front();
  bytes_ -= f.size;
  counters_.dequeued_bytes += f.size;
  length_.store(frames_.size());
  return f;
}

void
SenderQueue::close()
{
  {
    std::lock_guard lock(mu_);
    closed_ = true;
  }
  cv_.notify_all();
}

std::size_t
SenderQueue::queued_bytes() const
{
  std::lock_guard lock(mu_);
  return bytes_;
}

SenderQueue::Counters
SenderQueue::counters() const
{
  std::lock_guard lock(mu_);
  return counters_;
}

//============================================================================
// Simulation

EncodedSizeCache::EncodedSizeCache(std::vector<PointCloud> clouds,
                                   std::vector<CompressionLevel> ladder,
                                   CodecOptions options)
  : clouds_(std::move(clouds)), ladder_(std::move(ladder)), options_(std::move(options))
{
  if (clouds_.empty())
    throw Error(ErrorCode::kInvalidArgument, "empty dataset");
  validate_ladder(ladder_);
}

std::vector<std::uint8_t>
EncodedSizeCache::bytes(std::size_t frame, int level)
{
  if (level < 0 || level >= ladder_size())
    throw Error(ErrorCode::kInvalidArgument, "level outside ladder");
  const auto& cloud = clouds_[frame % clouds_.size()];
  auto bytes = compress(cloud, ladder_[static_cast<std::size_t>(level)], options_).frame.bytes();
  sizes_[{frame % clouds_.size(), level}] = bytes.size();
  return bytes;
}

std::size_t
EncodedSizeCache::size(std::size_t frame, int level)
{
  const std::pair key{frame % clouds_.size(), level};
  if (auto it = sizes_.find(key); it != sizes_.end())
    return it->second;
  return bytes(frame, level).size();
}

void
SimulationConfig::validate() const
{
  if (!(fps > 0) || !(tick_s > 0) || !(duration_s > 0))
    throw Error(ErrorCode::kInvalidArgument, "fps, tick and duration must be positive");
  if (tick_s > 1.0 / fps)
    throw Error(ErrorCode::kInvalidArgument, "tick must not exceed the frame interval");
  if (ladder_size <= 0 || fixed_level < 0 || fixed_level >= ladder_size)
    throw Error(ErrorCode::kInvalidArgument, "fixed level outside ladder");
  controller.validate();
}

SessionResult
run_session(const BandwidthTrace& trace, const FrameSizer& sizer,
            const SimulationConfig& config, bool use_controller)
{
  config.validate();
  SessionResult out;
  LinkStats& st = out.link;

  struct Pending {
    std::size_t remaining;
  };
  std::deque<Pending> queue;
  auto state = abr::ControllerState::initial(config.ladder_size, config.fixed_level);
  const auto ticks = static_cast<std::int64_t>(std::llround(config.duration_s / config.tick_s));
  const auto frames = static_cast<std::size_t>(std::floor(config.duration_s * config.fps + 1e-9));
  auto due_tick = [&](std::size_t i) {
    return static_cast<std::int64_t>(
      std::llround(static_cast<double>(i) / config.fps / config.tick_s));
  };
  st.transmitted_per_tick.reserve(static_cast<std::size_t>(ticks));

  std::size_t next = 0;
  for (std::int64_t n = 0; n < ticks; ++n) {
    const double t = static_cast<double>(n) * config.tick_s;
    auto budget = static_cast<std::uint64_t>(
      std::floor(trace.bytes_between(t, t + config.tick_s) + 1e-9));
    std::uint64_t sent = 0;
    while (budget > 0 && !queue.empty()) {
      const std::uint64_t take = std::min<std::uint64_t>(budget, queue.front().remaining);
      queue.front().remaining -= take;
      budget -= take;
      sent += take;
      if (queue.front().remaining == 0) {
        queue.pop_front();
        ++st.delivered_frames;
      }
    }
    st.transmitted_bytes += sent;
    st.transmitted_per_tick.push_back(static_cast<std::uint32_t>(sent));

    while (next < frames && due_tick(next) <= n) {
      abr::SessionRecord r;
      r.frame = next;
      r.queue = queue.size();
      r.timestamp_s = static_cast<double>(next) / config.fps;
      if (use_controller) {
        auto step = abr::controller_step(state, r.queue, config.controller, config.ladder_size);
        state = std::move(step.state);
        r.level = step.level;
        r.action = step.action;
      } else {
        r.level = config.fixed_level;
      }
      r.bytes = sizer(next, r.level);
      st.enqueued_bytes += r.bytes;
      queue.push_back({r.bytes});
      if (config.queue_cap && queue.size() > config.queue_cap) {
        st.dropped_bytes += queue.front().remaining;
        queue.pop_front();
      }
      out.log.records.push_back(r);
      ++next;
    }
  }
  for (const auto& p : queue)
    st.queued_bytes += p.remaining;
  return out;
}

SimulationResult
simulate(const BandwidthTrace& trace, const FrameSizer& sizer, const SimulationConfig& config)
{
  SimulationResult r;
  r.with_strategy = run_session(trace, sizer, config, true);
  r.without_strategy = run_session(trace, sizer, config, false);
  r.qoe_with = abr::evaluate_qoe(r.with_strategy.log, config.qoe);
  r.qoe_without = abr::evaluate_qoe(r.without_strategy.log, config.qoe);
  return r;
}

//============================================================================
// FrameParser

void
FrameParser::feed(std::span<const std::uint8_t> data)
{
  if (pos_ > 0 && pos_ >= buf_.size() / 2) {
    buf_.erase(buf_.begin(), buf_.begin() + static_cast<std::ptrdiff_t>(pos_));
    pos_ = 0;
  }
  buf_.insert(buf_.end(), data.begin(), data.end());
}

std::optional<std::vector<std::uint8_t>>
FrameParser::next()
{
  while (buf_.size() - pos_ >= 8) {
    const std::uint8_t* p = buf_.data() + pos_;
    const std::uint32_t len = static_cast<std::uint32_t>(p[0]) | static_cast<std::uint32_t>(p[1]) << 8
      | static_cast<std::uint32_t>(p[2]) << 16 | static_cast<std::uint32_t>(p[3]) << 24;
    const bool plausible = std::equal(kFrameMagic.begin(), kFrameMagic.end(), p + 4)
      && len >= kHeaderSize && len <= max_frame_;
    if (plausible) {
      if (buf_.size() - pos_ - 4 < len) {
        if (!eof_)
          return std::nullopt;
        ++pos_;
        ++skipped_;
        continue;
      }
      const std::span<const std::uint8_t> body(p + 4, len);
      try {
        (void)decode_frame(body);
        std::vector<std::uint8_t> frame(body.begin(), body.end());
        pos_ += 4 + len;
        return frame;
      } catch (const Error&) {
        ++rejected_;
      }
    }
    ++pos_;
    ++skipped_;
  }
  return std::nullopt;
}

//============================================================================
// SocketLink

namespace {

[[noreturn]] void
throw_errno(ErrorCode code, const std::string& what)
{
  throw Error(code, what + ": " + std::strerror(errno));
}

}  // namespace

SocketLink
SocketLink::connect(const std::string& host, std::uint16_t port)
{
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  const std::string service = std::to_string(port);
  if (int rc = ::getaddrinfo(host.c_str(), service.c_str(), &hints, &res); rc != 0)
    throw Error(ErrorCode::kIo, "resolve " + host + ": " + ::gai_strerror(rc));
  int fd = -1;
  for (addrinfo* ai = res; ai; ai = ai->ai_next) {
    fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd < 0)
      continue;
    if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0)
      break;
    ::close(fd);
    fd = -1;
  }
  ::freeaddrinfo(res);
  if (fd < 0)
    throw_errno(ErrorCode::kIo, "connect " + host + ":" + service);
  int one = 1;
  ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
  return SocketLink(fd);
}

SocketLink
SocketLink::accept_one(std::uint16_t port, std::uint16_t* bound_port,
                       const std::function<void(std::uint16_t)>& on_listen)
{
  const int ls = ::socket(AF_INET, SOCK_STREAM, 0);
  if (ls < 0)
    throw_errno(ErrorCode::kIo, "socket");
  int one = 1;
  ::setsockopt(ls, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_ANY);
  addr.sin_port = htons(port);
  if (::bind(ls, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0
      || ::listen(ls, 1) != 0) {
    const int e = errno;
    ::close(ls);
    errno = e;
    throw_errno(ErrorCode::kIo, "listen on port " + std::to_string(port));
  }
  socklen_t alen = sizeof addr;
  ::getsockname(ls, reinterpret_cast<sockaddr*>(&addr), &alen);
  const auto actual = ntohs(addr.sin_port);
  if (bound_port)
    *bound_port = actual;
  if (on_listen)
    on_listen(actual);
  const int fd = ::accept(ls, nullptr, nullptr);
  const int e = errno;
  ::close(ls);
  if (fd < 0) {
    errno = e;
    throw_errno(ErrorCode::kIo, "accept");
  }
  return SocketLink(fd);
}

SocketLink::SocketLink(SocketLink&& other) noexcept : fd_(other.fd_)
{
  other.fd_ = -1;
}

SocketLink&
SocketLink::operator=(SocketLink&& other) noexcept
{
  if (this != &other) {
    if (fd_ >= 0)
      ::close(fd_);
    fd_ = other.fd_;
    other.fd_ = -1;
  }
  return *this;
}

SocketLink::~SocketLink()
{
  if (fd_ >= 0)
    ::close(fd_);
}

void
SocketLink::write_all(std::span<const std::uint8_t> data)
{
  while (!data.empty()) {
    const ssize_t n = ::send(fd_, data.data(), data.size(), MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR)
        continue;
      if (errno == EPIPE || errno == ECONNRESET)
        throw Error(ErrorCode::kLinkClosed, "peer closed the connection");
      throw_errno(ErrorCode::kIo, "send");
    }
    data = data.subspan(static_cast<std::size_t>(n));
  }
}

std::size_t
SocketLink::read_some(std::span<std::uint8_t> buf)
{
  for (;;) {
    const ssize_t n = ::recv(fd_, buf.data(), buf.size(), 0);
    if (n >= 0)
      return static_cast<std::size_t>(n);
    if (errno == EINTR)
      continue;
    if (errno == ECONNRESET)
      return 0;
    throw_errno(ErrorCode::kIo, "recv");
  }
}

void
SocketLink::shutdown_write()
{
  if (fd_ >= 0)
    ::shutdown(fd_, SHUT_WR);
}

//============================================================================
// Live sender and receiver

double
monotonic_seconds()
{
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
    .count();
}

namespace {

void
sleep_until_s(double t)
{
  const double now = monotonic_seconds();
  if (t > now)
    std::this_thread::sleep_for(std::chrono::duration<double>(t - now));
}

}  // namespace

abr::SessionLog
sender_loop(const std::vector<PointCloud>& clouds, const std::vector<CompressionLevel>& ladder,
            const CodecOptions& codec, SocketLink& link, const SenderOptions& options)
{
  if (clouds.empty())
    throw Error(ErrorCode::kInvalidArgument, "empty dataset");
  if (!(options.fps > 0))
    throw Error(ErrorCode::kInvalidArgument, "fps must be positive");
  validate_ladder(ladder);
  options.controller.validate();
  const int n_levels = static_cast<int>(ladder.size());
  if (options.fixed_level < 0 || options.fixed_level >= n_levels)
    throw Error(ErrorCode::kInvalidArgument, "fixed level outside ladder");

  SenderQueue queue(options.queue_cap);
  std::atomic<bool> closed{false};
  const double start = monotonic_seconds();

  std::thread drain([&] {
    constexpr double kSlot = 0.01;
    try {
      while (auto f = queue.pop_wait()) {
        std::vector<std::uint8_t> wire;
        wire.reserve(f->bytes.size() + 4);
        append_length_prefixed(wire, f->bytes);
        if (!options.trace) {
          link.write_all(wire);
          continue;
        }
        std::span<const std::uint8_t> rest(wire);
        while (!rest.empty()) {
          const double now = monotonic_seconds();
          const double slot = std::floor((now - start) / kSlot) * kSlot;
          const auto budget = static_cast<std::size_t>(
            std::max(1.0, options.trace->bytes_between(slot, slot + kSlot)));
          const std::size_t take = std::min(budget, rest.size());
          link.write_all(rest.first(take));
          rest = rest.subspan(take);
          sleep_until_s(start + slot + kSlot);
        }
      }
    } catch (const Error&) {
      closed.store(true);
      queue.close();
    }
  });

  abr::SessionLog log;
  auto state = abr::ControllerState::initial(n_levels, options.fixed_level);
  const std::size_t total = options.frames ? options.frames : clouds.size();
  for (std::size_t i = 0; i < total && !closed.load(); ++i) {
    sleep_until_s(start + static_cast<double>(i) / options.fps);
    abr::SessionRecord r;
    r.frame = i;
    r.queue = queue.length();
    if (options.use_controller) {
      auto step = abr::controller_step(state, r.queue, options.controller, n_levels);
      state = std::move(step.state);
      r.level = step.level;
      r.action = step.action;
    } else {
      r.level = options.fixed_level;
    }
    auto frame = compress(clouds[i % clouds.size()], ladder[static_cast<std::size_t>(r.level)],
                          codec)
                   .frame.bytes();
    r.bytes = frame.size();
    r.timestamp_s = monotonic_seconds();
    log.records.push_back(r);
    queue.push({i, r.level, frame.size(), std::move(frame), r.timestamp_s});
  }
  queue.close();
  drain.join();
  if (!closed.load())
    link.shutdown_write();
  return log;
}

ReceiverReport
receiver_loop(SocketLink& link,
              const std::function<void(const ReceivedFrame&, const PointCloud&)>& on_frame)
{
  ReceiverReport report;
  FrameParser parser;
  std::vector<std::uint8_t> buf(1 << 16);
  bool eof = false;
  while (!eof) {
    const std::size_t n = link.read_some(buf);
    if (n == 0) {
      eof = true;
      parser.finish();
    } else {
      parser.feed(std::span(buf).first(n));
    }
    while (auto frame = parser.next()) {
      ReceivedFrame rf;
      rf.index = report.frames.size();
      rf.bytes = frame->size();
      const double t0 = monotonic_seconds();
      PointCloud cloud;
      try {
        rf.level = parse_header(*frame).level_id;
        cloud = decompress(*frame);
      } catch (const Error&) {
        ++report.rejected_frames;
        continue;
      }
      rf.decoded_at = monotonic_seconds();
      rf.decode_ms = 1e3 * (rf.decoded_at - t0);
      rf.points = cloud.size();
      report.frames.push_back(rf);
      if (on_frame)
        on_frame(rf, cloud);
    }
  }
  report.skipped_bytes = parser.skipped_bytes();
  report.rejected_frames += parser.rejected_frames();
  return report;
}

}  // namespace rcpcc::stream
