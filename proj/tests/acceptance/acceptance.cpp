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

// Acceptance run: one PASS/FAIL line per criterion.
//
// Frames come from RCPCC_KITTI_DIR (a velodyne directory of .bin files) when
// set, otherwise from the built-in street scan simulator.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rcpcc/abr.hpp"
#include "rcpcc/bitstream.hpp"
#include "rcpcc/io.hpp"
#include "rcpcc/kernels.hpp"
#include "rcpcc/metrics.hpp"
#include "rcpcc/pipeline.hpp"
#include "rcpcc/sadct.hpp"
#include "rcpcc/stream.hpp"
#include "rcpcc/surface_codec.hpp"
#include "rcpcc/synth.hpp"
#include "support.hpp"

using namespace rcpcc;
using test::Rng;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double
seconds_since(Clock::time_point t0)
{
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string
fmt(const char* f, double a)
{
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

bool
within(double value, double target, double rel)
{
  return std::fabs(value - target) <= rel * target;
}

//----------------------------------------------------------------------------
// Data

struct Dataset {
  std::string source;
  std::vector<PointCloud> frames;
};

Dataset
load_frames(std::size_t count)
{
  Dataset d;
  if (const char* dir = std::getenv("RCPCC_KITTI_DIR"); dir && *dir) {
    auto files = list_frames(dir);
    if (files.size() > count)
      files.resize(count);
    for (const auto& f : files)
      d.frames.push_back(read_point_cloud(f));
    d.source = std::string("KITTI frames from ") + dir;
  } else {
    for (std::size_t k = 0; k < count; ++k)
      d.frames.push_back(synth::street_scan(1 + k));
    d.source = "simulated HDL-64E street scans (set RCPCC_KITTI_DIR for real frames)";
  }
  return d;
}

//----------------------------------------------------------------------------
// 1. Codec round-trip bound

Outcome
criterion_1()
{
  const auto t0 = Clock::now();
  Rng rng(1001);
  const auto ladder = default_ladder();
  std::size_t points = 0, fitted = 0;
  double worst_fit_ratio = 0, worst_unfit = 0;
  for (int k = 0; k < 200; ++k) {
    synth::ScanOptions o;
    o.azimuth_steps = test::uniform_int(rng, 512, 1536);
    o.noise_sigma = test::uniform(rng, 0.005, 0.08);
    o.dropout = test::uniform(rng, 0.0, 0.2);
    const auto cloud = synth::street_scan(rng(), o);
    auto level = ladder[static_cast<std::size_t>(k % 6)];
    level.q_step = 0;
    const auto res = compress(cloud, level);
    const auto rec = reconstruct(res.frame.bytes());
    if (!(rec.occupancy == res.original.occupancy()))
      return {false, "occupancy changed in frame " + std::to_string(k)};
    const double bound = level.delta_r;
    for (int j = 0; j < rec.image.height(); ++j)
      for (int i = 0; i < rec.image.width(); ++i) {
        if (!rec.occupancy.test(i, j))
          continue;
        ++points;
        const double err = std::fabs(rec.image.at(i, j) - res.original.at(i, j));
        if (rec.fitted.test(i, j)) {
          ++fitted;
          worst_fit_ratio = std::max(worst_fit_ratio, err / bound);
        } else {
          worst_unfit = std::max(worst_unfit, err);
        }
      }
  }
  const double secs = seconds_since(t0);
  const bool ok = worst_fit_ratio < 1.0 && worst_unfit < 1e-6 && secs < 60;
  return {ok, std::to_string(points) + " points (" + std::to_string(fitted)
                + " fitted), worst fitted err/delta_r " + fmt("%.7f", worst_fit_ratio)
                + ", worst unfit err " + fmt("%.3g m", worst_unfit) + ", " + fmt("%.1f s", secs)};
}

//----------------------------------------------------------------------------
// 2. SA-DCT perfect reconstruction and orthogonality

Outcome
criterion_2()
{
  const auto t0 = Clock::now();
  Rng rng(2002);
  double worst = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    const int w = test::uniform_int(rng, 1, 64), h = test::uniform_int(rng, 1, 64);
    const auto cfg = test::make_config(1, 1, 0, 0, w, h);
    const auto mask = test::random_mask(rng, w, h, test::uniform(rng, 0.05, 1.0));
    RangeImage x(cfg);
    for (int j = 0; j < h; ++j)
      for (int i = 0; i < w; ++i)
        if (mask.test(i, j))
          x.set(i, j, test::uniform(rng, 0.5, 120.0));
    const auto back = sa_idct_inverse(sa_dct_forward(x, mask), mask, cfg);
    for (int j = 0; j < h; ++j)
      for (int i = 0; i < w; ++i)
        if (mask.test(i, j))
          worst = std::max(worst, std::fabs(back.at(i, j) - x.at(i, j)));
  }
  double ortho = 0;
  for (int L = 1; L <= 64; ++L) {
    const auto M = dct_matrix(L);
    for (int a = 0; a < L; ++a)
      for (int b = 0; b < L; ++b) {
        long double s = 0;
        for (int p = 0; p < L; ++p)
          s += static_cast<long double>(M[p * L + a]) * M[p * L + b];
        ortho = std::max(ortho, static_cast<double>(std::fabs(2.0L / L * s - (a == b))));
      }
  }
  const double secs = seconds_since(t0);
  return {worst < 1e-9 && ortho < 1e-12 && secs < 30,
          "max reconstruction error " + fmt("%.3g", worst) + ", orthogonality error "
            + fmt("%.3g", ortho) + ", " + fmt("%.1f s", secs)};
}

//----------------------------------------------------------------------------
// 3. Least-squares oracle

std::optional<std::array<long double, 3>>
normal_equations(const RangeImage& img, int i0, int j0, int b)
{
  long double A[3][4] = {};
  int n = 0;
  for (int j = j0; j < std::min(img.height(), j0 + b); ++j)
    for (int i = i0; i < std::min(img.width(), i0 + b); ++i) {
      const double r = img.at(i, j);
      if (!(r > 0))
        continue;
      const long double x[3] = {(long double)i, (long double)j, 1.0L};
      for (int a = 0; a < 3; ++a) {
        for (int c = 0; c < 3; ++c)
          A[a][c] += x[a] * x[c];
        A[a][3] += x[a] / r;
      }
      ++n;
    }
  if (n < 3)
    return std::nullopt;
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::fabs(A[r][col]) > std::fabs(A[piv][col]))
        piv = r;
    if (std::fabs(A[piv][col]) < 1e-12L)
      return std::nullopt;
    std::swap(A[piv], A[col]);
    for (int r = 0; r < 3; ++r)
      if (r != col) {
        const long double f = A[r][col] / A[col][col];
        for (int c = col; c < 4; ++c)
          A[r][c] -= f * A[col][c];
      }
  }
  return std::array<long double, 3>{A[0][3] / A[0][0], A[1][3] / A[1][1], A[2][3] / A[2][2]};
}

Outcome
criterion_3()
{
  const auto t0 = Clock::now();
  Rng rng(3003);
  const auto cfg = ProjectionConfig::kitti(0.5, 0.5);
  int compared = 0, float_mismatch = 0;
  double worst = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    const int b = 4;
    const int bc = test::uniform_int(rng, 0, block_cols(cfg, b) - 1);
    const int br = test::uniform_int(rng, 0, block_rows(cfg, b) - 1);
    RangeImage img(cfg);
    const double a = test::uniform(rng, -1e-3, 1e-3), be = test::uniform(rng, -1e-3, 1e-3);
    const double g = test::uniform(rng, 0.02, 0.5) - a * bc * b - be * br * b;
    for (int j = br * b; j < std::min(cfg.height, br * b + b); ++j)
      for (int i = bc * b; i < std::min(cfg.width, bc * b + b); ++i)
        if (test::uniform(rng, 0, 1) > 0.2) {
          const double inv = a * i + be * j + g;
          if (inv > 0)
            img.set(i, j, 1.0 / inv * (1 + test::uniform(rng, -0.03, 0.03)));
        }
    const auto got = solve_surface(img, {br, bc}, b, 3);
    const auto want = normal_equations(img, bc * b, br * b, b);
    if (!got || !want)
      continue;
    ++compared;
    for (int k = 0; k < 3; ++k)
      worst = std::max(worst, std::fabs((*got)[k] - static_cast<double>((*want)[k])));
    // fit_block publishes the same solution rounded to float32 when it passes delta_r.
    FitConfig fc;
    fc.block_size = b;
    fc.delta_r = 1e6;
    fc.min_points = 3;
    if (const auto fb = fit_block(img, {br, bc}, fc))
      float_mismatch += fb->alpha != static_cast<float>((*got)[0])
                        || fb->beta != static_cast<float>((*got)[1])
                        || fb->gamma != static_cast<float>((*got)[2]);
  }
  const double secs = seconds_since(t0);
  return {compared >= 900 && worst < 1e-9 && float_mismatch == 0 && secs < 10,
          std::to_string(compared) + " blocks compared, max coefficient difference "
            + fmt("%.3g", worst) + ", float32 publication mismatches "
            + std::to_string(float_mismatch) + ", " + fmt("%.2f s", secs)};
}

//----------------------------------------------------------------------------
// 4. Bitstream safety

struct RandomFrame {
  FrameHeader header;
  FrameSections sections;
};

RandomFrame
random_frame(Rng& rng)
{
  const double dt = test::uniform(rng, 0.8, 3.0), dp = test::uniform(rng, 0.8, 3.0);
  const auto cfg = ProjectionConfig::kitti(dt, dp).rounded_to_float();
  const auto img = test::random_range_image(rng, cfg, test::uniform(rng, 0, 0.95));
  FitConfig fc;
  fc.block_size = test::uniform_int(rng, 2, 6);
  fc.delta_r = test::uniform(rng, 0.05, 0.6);
  const auto enc = encode_surfaces(img, fc);
  RandomFrame f;
  f.header.width = static_cast<std::uint16_t>(cfg.width);
  f.header.height = static_cast<std::uint16_t>(cfg.height);
  f.header.delta_theta = static_cast<float>(cfg.delta_theta);
  f.header.delta_phi = static_cast<float>(cfg.delta_phi);
  f.header.h_offset = static_cast<float>(cfg.h_offset);
  f.header.v_offset = static_cast<float>(cfg.v_offset);
  f.header.delta_r = static_cast<float>(fc.delta_r);
  f.header.block_size = static_cast<std::uint8_t>(fc.block_size);
  f.header.level_id = static_cast<std::uint8_t>(test::uniform_int(rng, 0, 5));
  f.sections.occupancy = img.occupancy();
  f.sections.tuples = enc.tuples;
  const ShapeMask unfit = f.sections.occupancy.minus(enc.fitted);
  if (test::uniform_int(rng, 0, 3) == 0) {
    f.header.q_step = 0;
    RawUnfitRanges raw;
    for (int j = 0; j < cfg.height; ++j)
      for (int i = 0; i < cfg.width; ++i)
        if (unfit.test(i, j))
          raw.values.push_back(img.at(i, j));
    f.sections.unfit = raw;
  } else {
    f.header.q_step = static_cast<float>(test::uniform(rng, 0.05, 1.0));
    f.sections.unfit = quantize(sa_dct_forward(enc.unfit, unfit), f.header.q_step);
  }
  return f;
}

Outcome
criterion_4()
{
  const auto t0 = Clock::now();
  Rng rng(4004);
  int identity_fail = 0;
  std::vector<std::vector<std::uint8_t>> seeds;
  const EntropyBackend backends[] = {EntropyBackend::kLzma, EntropyBackend::kDeflate,
                                     EntropyBackend::kIdentity};
  for (int rep = 0; rep < 1000; ++rep) {
    const auto f = random_frame(rng);
    const auto frame = encode_frame(f.header, f.sections, {backends[rep % 3], 6});
    const auto bytes = frame.bytes();
    const auto d = decode_frame(bytes);
    identity_fail += !(d.header == frame.header) || !(d.sections.occupancy == f.sections.occupancy)
                     || !(d.sections.tuples == f.sections.tuples)
                     || !(d.sections.unfit == f.sections.unfit);
    if (rep < 64)
      seeds.push_back(bytes);
  }

  std::size_t rejected = 0, accepted = 0, foreign = 0;
  for (int rep = 0; rep < 100000; ++rep) {
    std::vector<std::uint8_t> buf;
    switch (rep % 4) {
    case 0:  // pure noise
      buf.resize(static_cast<std::size_t>(test::uniform_int(rng, 0, 400)));
      for (auto& b : buf)
        b = static_cast<std::uint8_t>(rng());
      break;
    case 1: {  // noise behind a valid header
      const auto& s = seeds[rng() % seeds.size()];
      buf.assign(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(kHeaderSize));
      for (int n = test::uniform_int(rng, 0, 400); n > 0; --n)
        buf.push_back(static_cast<std::uint8_t>(rng()));
      break;
    }
    case 2: {  // bit flips
      buf = seeds[rng() % seeds.size()];
      for (int n = test::uniform_int(rng, 1, 6); n > 0; --n)
        buf[rng() % buf.size()] ^= static_cast<std::uint8_t>(1u << (rng() % 8));
      break;
    }
    default: {  // truncation or extension
      buf = seeds[rng() % seeds.size()];
      if (rng() % 2)
        buf.resize(rng() % buf.size());
      else
        for (int n = test::uniform_int(rng, 1, 32); n > 0; --n)
          buf.push_back(static_cast<std::uint8_t>(rng()));
      break;
    }
    }
    try {
      (void)decode_frame(buf);
      ++accepted;
    } catch (const Error&) {
      ++rejected;
    } catch (const std::exception&) {
      ++foreign;
    }
  }
  const double secs = seconds_since(t0);
  return {identity_fail == 0 && foreign == 0 && secs < 120,
          "1000 frames, " + std::to_string(identity_fail) + " identity failures; 100000 fuzz "
            "inputs: " + std::to_string(rejected) + " rejected with codec errors, "
            + std::to_string(accepted) + " decoded, " + std::to_string(foreign)
            + " other exceptions, 0 crashes; " + fmt("%.1f s", secs)};
}

//----------------------------------------------------------------------------
// 5. Plane versus surface fitted MAE

Outcome
criterion_5(const Dataset& data)
{
  const auto t0 = Clock::now();
  const double thresholds[] = {0.1, 0.3, 0.5};
  const double published[] = {4.75, 10.82, 11.92};
  const CodecOptions codec;
  const auto proj = codec.projection(default_ladder()[2]);
  double plane[3] = {}, surface[3] = {};
  for (const auto& cloud : data.frames) {
    const auto img = project(cloud, proj);
    for (int t = 0; t < 3; ++t) {
      FitConfig fc;
      fc.delta_r = thresholds[t];
      const auto p = fit_with_model(img, fc, FitModel::kPlane);
      const auto s = fit_with_model(img, fc, FitModel::kSurface);
      plane[t] += range_mae(img, p.predicted, &p.fitted);
      surface[t] += range_mae(img, s.predicted, &s.fitted);
    }
  }
  bool ok = data.frames.size() >= 50;
  std::string detail = std::to_string(data.frames.size()) + " frames;";
  for (int t = 0; t < 3; ++t) {
    const double n = static_cast<double>(data.frames.size());
    const double pm = plane[t] / n, sm = surface[t] / n;
    ok &= sm < pm && within(sm, published[t], 0.30);
    detail += " dr=" + fmt("%.1f", thresholds[t]) + ": surface " + fmt("%.2f", sm) + " cm vs plane "
              + fmt("%.2f", pm) + " cm (target " + fmt("%.2f", published[t]) + ");";
  }
  const double secs = seconds_since(t0);
  ok &= secs < 300;
  return {ok, detail + fmt(" %.1f s", secs)};
}

//----------------------------------------------------------------------------
// 6. Quantization sweep; 7. operating ratio; 8. timings

struct SweepPoint {
  double q = 0, mae = 0, cr = 0;
};

Outcome
criterion_6(const Dataset& data)
{
  const auto t0 = Clock::now();
  std::vector<SweepPoint> pts;
  for (double q : {0.0, 0.10, 0.40, 1.00}) {
    const CompressionLevel level{0, 0.5, 0.5, 0.3, q};
    SweepPoint s{q, 0, 0};
    for (const auto& cloud : data.frames) {
      const auto res = compress(cloud, level);
      const auto rec = reconstruct(res.frame.bytes());
      s.mae += range_mae(res.original, rec.image);
      s.cr += res.report.compression_ratio;
    }
    s.mae /= static_cast<double>(data.frames.size());
    s.cr /= static_cast<double>(data.frames.size());
    pts.push_back(s);
  }
  bool ok = true;
  std::string detail;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (k > 0)
      ok &= pts[k].mae > pts[k - 1].mae && pts[k].cr > pts[k - 1].cr;
    detail += "q=" + fmt("%.2f", pts[k].q) + ": MAE " + fmt("%.2f", pts[k].mae) + " cm, CR "
              + fmt("%.1f", pts[k].cr) + "; ";
  }
  ok &= within(pts[1].cr, 40.86, 0.30) && within(pts[1].mae, 5.29, 0.30);
  const double secs = seconds_since(t0);
  ok &= secs < 300;
  return {ok, detail + "targets at q=0.10: CR 40.86, MAE 5.29;" + fmt(" %.1f s", secs)};
}

struct HeadlineRun {
  double mean_cr = 0;
  double mean_encode_ms = 0;
  double mean_decode_ms = 0;
};

HeadlineRun
headline_run(const Dataset& data)
{
  const auto level = CompressionLevel::from_params("0.5,0.5,0.3,0.2", 2);
  HeadlineRun h;
  for (const auto& cloud : data.frames) {
    const auto res = compress(cloud, level);
    const auto bytes = res.frame.bytes();
    const auto t0 = Clock::now();
    const auto pts = decompress(bytes);
    h.mean_decode_ms += 1e3 * seconds_since(t0);
    h.mean_encode_ms += res.report.encode_ms;
    h.mean_cr += res.report.compression_ratio;
    if (pts.empty() && !cloud.empty())
      h.mean_cr = -1e9;
  }
  const double n = static_cast<double>(data.frames.size());
  h.mean_cr /= n;
  h.mean_encode_ms /= n;
  h.mean_decode_ms /= n;
  return h;
}

Outcome
criterion_7(const HeadlineRun& h)
{
  return {h.mean_cr >= 40 && h.mean_cr <= 80,
          "mean CR " + fmt("%.1f", h.mean_cr) + " at (0.5, 0.5, 0.3, 0.2); band 40-80"};
}

Outcome
criterion_8(const HeadlineRun& h)
{
  return {h.mean_encode_ms < 100 && h.mean_decode_ms < 30,
          "mean encode " + fmt("%.2f ms", h.mean_encode_ms) + ", decode "
            + fmt("%.2f ms", h.mean_decode_ms) + " (kernels: "
            + kernels::to_string(kernels::active().isa) + ")"};
}

//----------------------------------------------------------------------------
// 9. ABR simulation; 10. determinism

stream::SimulationResult
replay(const Dataset& data, std::size_t frames)
{
  std::vector<PointCloud> clouds(data.frames.begin(),
                                 data.frames.begin()
                                   + static_cast<std::ptrdiff_t>(std::min(frames, data.frames.size())));
  auto cache = std::make_shared<stream::EncodedSizeCache>(std::move(clouds), default_ladder());
  const std::size_t n = cache->dataset_size();
  const stream::FrameSizer sizer = [cache, n](std::size_t f, int level) {
    return cache->size(f % n, level);
  };
  stream::SimulationConfig cfg;
  return stream::simulate(stream::BandwidthTrace::street_trace(), sizer, cfg);
}

Outcome
criterion_9(const stream::SimulationResult& r, double secs)
{
  const auto& with = r.with_strategy.log;
  const auto& without = r.without_strategy.log;
  std::size_t fixed_peak_low_segment = 0;
  for (const auto& rec : without.records)
    if (rec.timestamp_s >= 55 && rec.timestamp_s < 120)
      fixed_peak_low_segment = std::max(fixed_peak_low_segment, rec.queue);
  const stream::SimulationConfig cfg;
  const auto bad = abr::check_invariants(with, cfg.controller, cfg.ladder_size);
  const bool a = with.max_queue() <= 20 && fixed_peak_low_segment > 100;
  const bool b = r.qoe_with.score > r.qoe_without.score;
  const bool c = bad.empty();
  return {a && b && c && secs < 120,
          "(a) strategy max K " + std::to_string(with.max_queue()) + ", fixed-level-0 max K in "
            "100 KB/s segment " + std::to_string(fixed_peak_low_segment) + "; (b) score "
            + fmt("%.1f", r.qoe_with.score) + " vs " + fmt("%.1f", r.qoe_without.score)
            + "; (c) " + std::to_string(bad.size()) + " invariant violations"
            + (bad.empty() ? "" : " (first: " + bad.front() + ")") + "; mean K "
            + fmt("%.2f", with.mean_queue()) + " vs " + fmt("%.2f", without.mean_queue()) + "; "
            + fmt("%.1f s", secs)};
}

Outcome
criterion_10(const stream::SimulationResult& first, const stream::SimulationResult& second)
{
  const auto a = first.with_strategy.log.to_csv(), b = second.with_strategy.log.to_csv();
  const auto c = first.without_strategy.log.to_csv(), d = second.without_strategy.log.to_csv();
  return {a == b && c == d,
          "strategy CSV " + std::to_string(a.size()) + " bytes "
            + (a == b ? "identical" : "DIFFERENT") + ", fixed CSV " + std::to_string(c.size())
            + " bytes " + (c == d ? "identical" : "DIFFERENT")};
}

//----------------------------------------------------------------------------

int g_failed = 0;

void
report(int id, const char* name, const std::function<Outcome()>& run)
{
  Outcome o;
  try {
    o = run();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  g_failed += !o.pass;
  std::printf("criterion %2d: %s  %s: %s\n", id, o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
  std::fflush(stdout);
}

}  // namespace

int
main()
{
  report(1, "codec round-trip bound", criterion_1);
  report(2, "SA-DCT perfect reconstruction", criterion_2);
  report(3, "least-squares oracle", criterion_3);
  report(4, "bitstream safety", criterion_4);

  Dataset data;
  try {
    data = load_frames(50);
  } catch (const std::exception& e) {
    std::printf("dataset unavailable: %s\n", e.what());
  }
  std::printf("data: %s, %zu frames\n", data.source.c_str(), data.frames.size());
  if (data.frames.empty()) {
    for (int id = 5; id <= 10; ++id)
      std::printf("criterion %2d: FAIL  no frames\n", id);
    return 1;
  }
  report(5, "plane vs surface fitted MAE", [&] { return criterion_5(data); });
  report(6, "quantization sweep", [&] { return criterion_6(data); });
  HeadlineRun headline;
  try {
    headline = headline_run(data);
  } catch (const std::exception& e) {
    std::printf("headline run failed: %s\n", e.what());
  }
  report(7, "compression-ratio operating band", [&] { return criterion_7(headline); });
  report(8, "encode/decode runtime", [&] { return criterion_8(headline); });

  std::optional<stream::SimulationResult> first, second;
  double sim_secs = 0;
  try {
    const auto t0 = Clock::now();
    first = replay(data, 20);
    sim_secs = seconds_since(t0);
    second = replay(data, 20);
  } catch (const std::exception& e) {
    std::printf("simulation failed: %s\n", e.what());
  }
  report(9, "ABR trace replay", [&] {
    return first ? criterion_9(*first, sim_secs) : Outcome{false, "no simulation"};
  });
  report(10, "controller determinism", [&] {
    return first && second ? criterion_10(*first, *second) : Outcome{false, "no simulation"};
  });

  std::printf("%d of 10 criteria failed\n", g_failed);
  return g_failed ? 1 : 0;
}
