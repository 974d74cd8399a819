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

// rcpcc command line: encode, decode, bench, ablate, simulate, stream-send,
// stream-recv and synth.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "rcpcc/abr.hpp"
#include "rcpcc/io.hpp"
#include "rcpcc/kernels.hpp"
#include "rcpcc/metrics.hpp"
#include "rcpcc/pipeline.hpp"
#include "rcpcc/stream.hpp"
#include "rcpcc/synth.hpp"

namespace fs = std::filesystem;
using namespace rcpcc;

namespace {

enum Exit : int { kOk = 0, kUsage = 1, kIoError = 2, kCorrupt = 3 };

int g_verbosity = 1;  // 0 quiet, 1 info, 2 debug

void
init_verbosity()
{
  if (const char* v = std::getenv("RCPCC_LOG")) {
    const std::string s = v;
    if (s == "quiet" || s == "0")
      g_verbosity = 0;
    else if (s == "debug" || s == "2")
      g_verbosity = 2;
  }
}

template <class... Args>
void
info(const char* fmt, Args... args)
{
  if (g_verbosity >= 1) {
    std::fprintf(stderr, fmt, args...);
    std::fputc('\n', stderr);
  }
}

template <class... Args>
void
debug(const char* fmt, Args... args)
{
  if (g_verbosity >= 2) {
    std::fprintf(stderr, fmt, args...);
    std::fputc('\n', stderr);
  }
}

int
exit_code_for(ErrorCode c)
{
  switch (c) {
  case ErrorCode::kIo:
  case ErrorCode::kLinkClosed:
    return kIoError;
  case ErrorCode::kBadMagic:
  case ErrorCode::kUnsupportedVersion:
  case ErrorCode::kCorruptStream:
  case ErrorCode::kInconsistentShape:
  case ErrorCode::kMalformedTuple:
    return kCorrupt;
  default:
    return kUsage;
  }
}

struct LevelArgs {
  int level = 2;
  std::string params;
  std::string entropy = "lzma";

  void add(CLI::App* app)
  {
    app->add_option("--level", level, "ladder level 0-5")->check(CLI::Range(0, 5));
    app->add_option("--params", params, "explicit dtheta,dphi,delta_r,q_step (degrees, m, m)");
    app->add_option("--entropy", entropy, "entropy backend: lzma, deflate, identity");
  }

  CompressionLevel resolve() const
  {
    if (!params.empty())
      return CompressionLevel::from_params(params, level);
    return default_ladder()[static_cast<std::size_t>(level)];
  }

  CodecOptions codec() const
  {
    CodecOptions o;
    o.entropy.backend = parse_entropy_backend(entropy);
    return o;
  }
};

std::vector<PointCloud>
load_dataset(const fs::path& dir, std::size_t limit)
{
  auto files = list_frames(dir);
  if (limit && files.size() > limit)
    files.resize(limit);
  if (files.empty())
    throw Error(ErrorCode::kIo, "no frames found in " + dir.string());
  std::vector<PointCloud> out;
  out.reserve(files.size());
  for (const auto& f : files)
    out.push_back(read_point_cloud(f));
  debug("loaded %zu frames from %s", out.size(), dir.c_str());
  return out;
}

void
emit_table(const CsvTable& t, const std::string& out_path, bool pretty)
{
  if (!out_path.empty()) {
    std::ofstream os(out_path, std::ios::trunc);
    if (!os)
      throw Error(ErrorCode::kIo, "cannot write " + out_path);
    t.write_csv(os);
  }
  if (pretty)
    t.write_pretty(std::cout);
  else if (out_path.empty())
    t.write_csv(std::cout);
}

void
write_text(const fs::path& path, const std::string& text)
{
  std::ofstream os(path, std::ios::trunc);
  if (!os || !(os << text))
    throw Error(ErrorCode::kIo, "cannot write " + path.string());
}

double
ms_since(std::chrono::steady_clock::time_point t0)
{
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
    .count();
}

//----------------------------------------------------------------------------
// encode

struct EncodeArgs {
  std::string input;
  std::string output;
  bool verify = false;
  LevelArgs level;
};

QualityReport
verify_frame(const CompressResult& res)
{
  const auto rec = reconstruct(res.frame.bytes());
  return quality_report(res.original, rec.image, rec.fitted, res.report.input_points,
                        res.report.compressed_bytes);
}

int
run_encode(const EncodeArgs& a)
{
  const auto lvl = a.level.resolve();
  const auto codec = a.level.codec();
  const auto files = list_frames(a.input);
  const bool many = fs::is_directory(a.input);
  if (many)
    fs::create_directories(a.output);

  auto header = std::vector<std::string>{"frame", "points", "bytes", "encode_ms"};
  if (a.verify)
    for (auto& h : quality_csv_header())
      header.push_back(h);
  CsvTable table(header);
  std::vector<double> sums(header.size() - 1, 0.0);

  for (const auto& f : files) {
    const auto cloud = read_point_cloud(f);
    const auto res = compress(cloud, lvl, codec);
    const fs::path out = many ? fs::path(a.output) / f.filename().replace_extension(".rcpcc")
                              : fs::path(a.output);
    write_frame_file(out, {res.frame.bytes()});
    std::vector<std::string> row{f.filename().string(), std::to_string(cloud.size()),
                                 std::to_string(res.frame.size()),
                                 fmt_num(res.report.encode_ms, 2)};
    std::vector<double> vals{double(cloud.size()), double(res.frame.size()),
                             res.report.encode_ms};
    if (a.verify) {
      const auto q = verify_frame(res);
      for (auto& c : quality_csv_row(q))
        row.push_back(c);
      for (double v : {q.overall_mae_cm, q.fitted_mae_cm, q.unfit_mae_cm, q.compression_ratio,
                       q.dropped_fraction, q.fitted_fraction})
        vals.push_back(v);
    }
    for (std::size_t k = 0; k < vals.size(); ++k)
      sums[k] += vals[k];
    table.add_row(row);
  }
  if (files.size() > 1) {
    std::vector<std::string> row{"mean"};
    for (double s : sums)
      row.push_back(fmt_num(s / static_cast<double>(files.size()), 4));
    table.add_row(row);
  }
  table.write_csv(std::cout);
  return kOk;
}

//----------------------------------------------------------------------------
// decode

int
run_decode(const std::string& input, const std::string& output)
{
  const auto frames = read_frame_file(input);
  if (frames.empty())
    throw Error(ErrorCode::kCorruptStream, "container holds no frames");
  auto write_cloud = [](const fs::path& p, const PointCloud& c) {
    const auto ext = p.extension();
    if (ext == ".xyz" || ext == ".txt")
      write_xyz(p, c);
    else
      write_kitti_bin(p, c);
  };
  if (frames.size() == 1) {
    const auto cloud = decompress(frames.front());
    write_cloud(output, cloud);
    info("decoded %zu points", cloud.size());
    return kOk;
  }
  fs::create_directories(output);
  for (std::size_t k = 0; k < frames.size(); ++k) {
    char name[32];
    std::snprintf(name, sizeof name, "%06zu.bin", k);
    write_cloud(fs::path(output) / name, decompress(frames[k]));
  }
  info("decoded %zu frames", frames.size());
  return kOk;
}

//----------------------------------------------------------------------------
// bench

struct BenchArgs {
  std::string dataset;
  std::vector<std::string> params;
  bool ladder = false;
  bool sweep_q = false;
  std::size_t frames = 0;
  std::string output;
  std::string entropy = "lzma";
  bool pretty = false;
};

int
run_bench(const BenchArgs& a)
{
  std::vector<CompressionLevel> configs;
  if (a.ladder)
    configs = default_ladder();
  if (a.sweep_q)
    for (double q : {0.0, 0.10, 0.40, 1.00})
      configs.push_back({0, 0.5, 0.5, 0.3, q});
  for (const auto& p : a.params)
    configs.push_back(CompressionLevel::from_params(p));
  if (configs.empty())
    configs.push_back(default_ladder()[2]);

  const auto files = list_frames(a.dataset);
  const std::size_t n = a.frames ? std::min(a.frames, files.size()) : files.size();
  if (n == 0)
    throw Error(ErrorCode::kIo, "no frames found in " + a.dataset);
  CodecOptions codec;
  codec.entropy.backend = parse_entropy_backend(a.entropy);

  CsvTable table({"params", "frames", "cr", "mae_cm", "fitted_mae_cm", "unfit_mae_cm",
                  "encode_ms", "decode_ms"});
  for (const auto& cfg : configs) {
    double cr = 0, mae = 0, fmae = 0, umae = 0, enc = 0, dec = 0;
    std::size_t ok = 0;
    for (std::size_t k = 0; k < n; ++k) {
      try {
        const auto cloud = read_point_cloud(files[k]);
        const auto res = compress(cloud, cfg, codec);
        const auto bytes = res.frame.bytes();
        const auto t0 = std::chrono::steady_clock::now();
        const auto rec = reconstruct(bytes);
        (void)back_project(rec.image);
        dec += ms_since(t0);
        const auto q = quality_report(res.original, rec.image, rec.fitted,
                                      res.report.input_points, bytes.size());
        cr += q.compression_ratio;
        mae += q.overall_mae_cm;
        fmae += q.fitted_mae_cm;
        umae += q.unfit_mae_cm;
        enc += res.report.encode_ms;
        ++ok;
      } catch (const Error& e) {
        std::fprintf(stderr, "%s: %s\n", files[k].c_str(), e.what());
      }
    }
    const double d = ok ? static_cast<double>(ok) : 1.0;
    table.add_row({cfg.params(), std::to_string(ok), fmt_num(cr / d, 2), fmt_num(mae / d, 3),
                   fmt_num(fmae / d, 3), fmt_num(umae / d, 3), fmt_num(enc / d, 2),
                   fmt_num(dec / d, 2)});
    debug("%s done", cfg.params().c_str());
  }
  emit_table(table, a.output, a.pretty);
  return kOk;
}

//----------------------------------------------------------------------------
// ablate

struct AblateArgs {
  std::string dataset;
  std::string model = "both";
  std::vector<double> thresholds{0.1, 0.3, 0.5};
  std::size_t frames = 0;
  std::string output;
  bool pretty = false;
};

int
run_ablate(const AblateArgs& a)
{
  std::vector<std::pair<std::string, FitModel>> models;
  if (a.model == "plane" || a.model == "both")
    models.push_back({"plane", FitModel::kPlane});
  if (a.model == "surface" || a.model == "both")
    models.push_back({"surface", FitModel::kSurface});
  if (models.empty())
    throw Error(ErrorCode::kInvalidArgument, "--model must be plane, surface or both");

  const auto files = list_frames(a.dataset);
  const std::size_t n = a.frames ? std::min(a.frames, files.size()) : files.size();
  if (n == 0)
    throw Error(ErrorCode::kIo, "no frames found in " + a.dataset);
  const CodecOptions codec;
  const auto proj = codec.projection(default_ladder()[2]);

  // sums[model][threshold]
  std::vector<std::vector<double>> mae(models.size(), std::vector<double>(a.thresholds.size()));
  std::vector<std::vector<double>> frac = mae;
  for (std::size_t k = 0; k < n; ++k) {
    const auto img = project(read_point_cloud(files[k]), proj);
    const auto occupied = static_cast<double>(std::max<std::size_t>(1, img.occupied_count()));
    for (std::size_t m = 0; m < models.size(); ++m)
      for (std::size_t t = 0; t < a.thresholds.size(); ++t) {
        FitConfig fc;
        fc.delta_r = a.thresholds[t];
        const auto fit = fit_with_model(img, fc, models[m].second);
        mae[m][t] += range_mae(img, fit.predicted, &fit.fitted);
        frac[m][t] += static_cast<double>(fit.fitted.count()) / occupied;
      }
  }
  CsvTable table({"model", "delta_r", "fitted_mae_cm", "fitted_fraction", "frames"});
  for (std::size_t m = 0; m < models.size(); ++m)
    for (std::size_t t = 0; t < a.thresholds.size(); ++t)
      table.add_row({models[m].first, fmt_num(a.thresholds[t], 2),
                     fmt_num(mae[m][t] / static_cast<double>(n), 3),
                     fmt_num(frac[m][t] / static_cast<double>(n), 4), std::to_string(n)});
  emit_table(table, a.output, a.pretty);
  return kOk;
}

//----------------------------------------------------------------------------
// simulate

struct SimulateArgs {
  std::string trace;
  std::string dataset;
  double fps = 10;
  double tick_ms = 10;
  double duration = 0;
  bool no_strategy = false;
  std::size_t frames = 0;
  std::string out_dir = ".";
  std::size_t queue_cap = 0;
};

stream::BandwidthTrace
load_trace(const std::string& spec)
{
  if (spec.empty() || spec == "street")
    return stream::BandwidthTrace::street_trace();
  return stream::BandwidthTrace::load(spec);
}

int
run_simulate(const SimulateArgs& a)
{
  const auto trace = load_trace(a.trace);
  stream::EncodedSizeCache cache(load_dataset(a.dataset, a.frames), default_ladder());
  const std::size_t n = cache.dataset_size();
  const stream::FrameSizer sizer = [&](std::size_t frame, int level) {
    return cache.size(frame % n, level);
  };
  stream::SimulationConfig cfg;
  cfg.fps = a.fps;
  cfg.tick_s = a.tick_ms / 1e3;
  cfg.queue_cap = a.queue_cap;
  cfg.duration_s = a.duration > 0 ? a.duration
                                   : std::max(300.0, trace.segments().back().start_s + 55.0);
  cfg.validate();
  fs::create_directories(a.out_dir);

  CsvTable summary({"run", "frames", "score", "score_per_frame", "quality_sum",
                    "queue_penalty", "switch_penalty", "switches", "mean_queue", "max_queue"});
  auto report = [&](const char* name, const stream::SessionResult& r) {
    const auto q = abr::evaluate_qoe(r.log, cfg.qoe);
    write_text(fs::path(a.out_dir) / (std::string("session_") + name + ".csv"), r.log.to_csv());
    summary.add_row({name, std::to_string(q.frames), fmt_num(q.score, 2),
                     fmt_num(q.per_frame(), 3), fmt_num(q.quality_sum, 1),
                     fmt_num(q.queue_penalty, 1), fmt_num(q.switch_penalty, 1),
                     std::to_string(q.switches), fmt_num(r.log.mean_queue(), 3),
                     std::to_string(r.log.max_queue())});
  };
  if (!a.no_strategy) {
    const auto r = stream::run_session(trace, sizer, cfg, true);
    const auto bad = abr::check_invariants(r.log, cfg.controller, cfg.ladder_size);
    for (const auto& b : bad)
      std::fprintf(stderr, "invariant violated: %s\n", b.c_str());
    report("with_strategy", r);
  }
  report("without_strategy", stream::run_session(trace, sizer, cfg, false));
  summary.write_csv(std::cout);
  return kOk;
}

//----------------------------------------------------------------------------
// stream-send / stream-recv

struct SendArgs {
  std::string host = "127.0.0.1";
  std::uint16_t port = 7878;
  std::string dataset;
  std::string trace;
  double fps = 10;
  bool no_strategy = false;
  int level = 0;
  std::size_t frames = 0;
  std::string log;
  double retry_s = 0;
};

stream::SocketLink
connect_with_retry(const std::string& host, std::uint16_t port, double retry_s)
{
  const auto deadline = std::chrono::steady_clock::now()
    + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
      std::chrono::duration<double>(retry_s));
  for (;;) {
    try {
      return stream::SocketLink::connect(host, port);
    } catch (const Error&) {
      if (std::chrono::steady_clock::now() >= deadline)
        throw;
      std::this_thread::sleep_for(std::chrono::milliseconds(50));
    }
  }
}

int
run_stream_send(const SendArgs& a)
{
  const auto clouds = load_dataset(a.dataset, 0);
  stream::SenderOptions opt;
  opt.fps = a.fps;
  if (!a.trace.empty())
    opt.trace = load_trace(a.trace);
  opt.use_controller = !a.no_strategy;
  opt.fixed_level = a.level;
  opt.frames = a.frames;
  auto link = connect_with_retry(a.host, a.port, a.retry_s);
  const auto log = stream::sender_loop(clouds, default_ladder(), CodecOptions{}, link, opt);
  if (!a.log.empty())
    write_text(a.log, log.to_csv());
  info("sent %zu frames, mean queue %.2f, max queue %zu", log.records.size(), log.mean_queue(),
       log.max_queue());
  return kOk;
}

struct RecvArgs {
  std::uint16_t port = 7878;
  std::string log;
  std::string out_dir;
};

int
run_stream_recv(const RecvArgs& a)
{
  if (!a.out_dir.empty())
    fs::create_directories(a.out_dir);
  auto link = stream::SocketLink::accept_one(a.port, nullptr, [](std::uint16_t p) {
    info("listening on port %u", static_cast<unsigned>(p));
  });
  const auto report = stream::receiver_loop(link, [&](const stream::ReceivedFrame& f,
                                                      const PointCloud& cloud) {
    debug("frame %zu level %d %zu bytes %.2f ms", f.index, f.level, f.bytes, f.decode_ms);
    if (!a.out_dir.empty()) {
      char name[32];
      std::snprintf(name, sizeof name, "%06zu.bin", f.index);
      write_kitti_bin(fs::path(a.out_dir) / name, cloud);
    }
  });
  if (!a.log.empty()) {
    CsvTable t({"frame", "level", "bytes", "decoded_at", "decode_ms", "points"});
    for (const auto& f : report.frames)
      t.add_row({std::to_string(f.index), std::to_string(f.level), std::to_string(f.bytes),
                 fmt_num(f.decoded_at, 6), fmt_num(f.decode_ms, 3), std::to_string(f.points)});
    std::ofstream os(a.log, std::ios::trunc);
    if (!os)
      throw Error(ErrorCode::kIo, "cannot write " + a.log);
    t.write_csv(os);
  }
  info("received %zu frames, skipped %zu bytes, rejected %zu frames", report.frames.size(),
       report.skipped_bytes, report.rejected_frames);
  return report.rejected_frames || report.skipped_bytes ? kCorrupt : kOk;
}

//----------------------------------------------------------------------------
// synth

struct SynthArgs {
  std::string output;
  int count = 10;
  std::uint64_t seed = 0;
  int azimuth_steps = 2048;
};

int
run_synth(const SynthArgs& a)
{
  synth::ScanOptions o;
  o.azimuth_steps = a.azimuth_steps;
  const auto files = synth::write_street_dataset(a.output, a.count, a.seed, o);
  info("wrote %zu frames to %s", files.size(), a.output.c_str());
  return kOk;
}

}  // namespace

int
main(int argc, char** argv)
{
  init_verbosity();
  CLI::App app{"Range-image LiDAR point cloud codec with adaptive streaming"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "rcpcc 1.0");

  EncodeArgs enc;
  auto* c_enc = app.add_subcommand("encode", "compress .bin/.xyz frames into .rcpcc files");
  c_enc->add_option("input", enc.input, "frame file or directory")->required();
  c_enc->add_option("-o,--output", enc.output, "output file, or directory for directory input")
    ->required();
  c_enc->add_flag("--verify", enc.verify, "decode again and report quality");
  enc.level.add(c_enc);

  std::string dec_in, dec_out;
  auto* c_dec = app.add_subcommand("decode", "decompress a .rcpcc file to .bin or .xyz");
  c_dec->add_option("input", dec_in, ".rcpcc file")->required();
  c_dec->add_option("-o,--output", dec_out, "output .bin/.xyz, or directory for many frames")
    ->required();

  BenchArgs bench;
  auto* c_bench = app.add_subcommand("bench", "rate/distortion/timing table over a dataset");
  c_bench->add_option("dataset", bench.dataset)->required();
  c_bench->add_option("--params", bench.params, "parameter tuple, repeatable");
  c_bench->add_flag("--ladder", bench.ladder, "all six ladder levels");
  c_bench->add_flag("--sweep-q", bench.sweep_q, "q_step in {0, 0.10, 0.40, 1.00}");
  c_bench->add_option("--frames", bench.frames, "limit the number of frames");
  c_bench->add_option("--entropy", bench.entropy);
  c_bench->add_option("-o,--output", bench.output, "CSV path");
  c_bench->add_flag("--pretty", bench.pretty, "aligned text table on stdout");

  AblateArgs abl;
  auto* c_abl = app.add_subcommand("ablate", "plane versus surface model fitted MAE");
  c_abl->add_option("dataset", abl.dataset)->required();
  c_abl->add_option("--model", abl.model, "plane, surface or both");
  c_abl->add_option("--thresholds", abl.thresholds, "delta_r values in meters")->delimiter(',');
  c_abl->add_option("--frames", abl.frames);
  c_abl->add_option("-o,--output", abl.output);
  c_abl->add_flag("--pretty", abl.pretty);

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "replay a bandwidth trace with and without ABR");
  c_sim->add_option("--trace", sim.trace, "trace CSV, or 'street' for the built-in trace");
  c_sim->add_option("--dataset", sim.dataset)->required();
  c_sim->add_option("--fps", sim.fps);
  c_sim->add_option("--tick-ms", sim.tick_ms);
  c_sim->add_option("--duration", sim.duration, "seconds");
  c_sim->add_option("--frames", sim.frames, "dataset frames to cycle through");
  c_sim->add_option("--queue-cap", sim.queue_cap);
  c_sim->add_flag("--no-strategy", sim.no_strategy, "only the fixed-level run");
  c_sim->add_option("--out-dir", sim.out_dir, "where session CSVs go");

  SendArgs snd;
  auto* c_snd = app.add_subcommand("stream-send", "stream a dataset over TCP");
  c_snd->add_option("--host", snd.host);
  c_snd->add_option("--port", snd.port);
  c_snd->add_option("--dataset", snd.dataset)->required();
  c_snd->add_option("--trace", snd.trace, "shape the link with a trace");
  c_snd->add_option("--fps", snd.fps);
  c_snd->add_flag("--no-strategy", snd.no_strategy);
  c_snd->add_option("--level", snd.level, "fixed level without strategy")->check(CLI::Range(0, 5));
  c_snd->add_option("--frames", snd.frames);
  c_snd->add_option("--log", snd.log, "session CSV");
  c_snd->add_option("--retry", snd.retry_s, "keep trying to connect for this many seconds");

  RecvArgs rcv;
  auto* c_rcv = app.add_subcommand("stream-recv", "receive and decode a TCP stream");
  c_rcv->add_option("--port", rcv.port);
  c_rcv->add_option("--log", rcv.log, "per-frame CSV");
  c_rcv->add_option("--out-dir", rcv.out_dir, "write decoded frames as .bin");

  SynthArgs syn;
  auto* c_syn = app.add_subcommand("synth", "write simulated street scans as KITTI .bin files");
  c_syn->add_option("-o,--output", syn.output)->required();
  c_syn->add_option("--count", syn.count);
  c_syn->add_option("--seed", syn.seed);
  c_syn->add_option("--azimuth-steps", syn.azimuth_steps);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    debug("kernels: %s", kernels::to_string(kernels::active().isa));
    if (c_enc->parsed())
      return run_encode(enc);
    if (c_dec->parsed())
      return run_decode(dec_in, dec_out);
    if (c_bench->parsed())
      return run_bench(bench);
    if (c_abl->parsed())
      return run_ablate(abl);
    if (c_sim->parsed())
      return run_simulate(sim);
    if (c_snd->parsed())
      return run_stream_send(snd);
    if (c_rcv->parsed())
      return run_stream_recv(rcv);
    if (c_syn->parsed())
      return run_synth(syn);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code_for(e.code());
  } catch (const fs::filesystem_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kIoError;
  }
  return kUsage;
}
