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

#include <doctest.h>

#include <cmath>

#include "rcpcc/metrics.hpp"
#include "rcpcc/pipeline.hpp"
#include "rcpcc/synth.hpp"

using namespace rcpcc;

namespace {

const PointCloud&
small_scan()
{
  static const PointCloud cloud = [] {
    synth::ScanOptions o;
    o.azimuth_steps = 512;
    return synth::street_scan(5, o);
  }();
  return cloud;
}

}  // namespace

TEST_CASE("params strings parse and print")
{
  const auto l = CompressionLevel::from_params("0.5,0.5,0.3,0.2", 2);
  CHECK(l.id == 2);
  CHECK(l.delta_theta_deg == 0.5);
  CHECK(l.delta_r == 0.3);
  CHECK(l.q_step == 0.2);
  CHECK(CompressionLevel::from_params(l.params()).q_step == 0.2);
  CHECK_THROWS_AS(CompressionLevel::from_params("0.5,0.5,0.3"), Error);
  CHECK_THROWS_AS(CompressionLevel::from_params("0.5,0.5,0.3,x"), Error);
  CHECK_THROWS_AS(CompressionLevel::from_params("0,0.5,0.3,0.2"), Error);
  CHECK_THROWS_AS(CompressionLevel::from_params("0.5,0.5,0.3,-1"), Error);
}

TEST_CASE("default ladder is ordered and anchored")
{
  const auto ladder = default_ladder();
  REQUIRE(ladder.size() == 6);
  CHECK_NOTHROW(validate_ladder(ladder));
  CHECK(ladder[2].params() == "0.5,0.5,0.3,0.2");
  auto bad = ladder;
  bad[3].q_step = 0.01;
  CHECK_THROWS_AS(validate_ladder(bad), Error);
  bad = ladder;
  bad[1].id = 5;
  CHECK_THROWS_AS(validate_ladder(bad), Error);
}

TEST_CASE("lossless unfit mode bounds every reconstructed range")
{
  for (const auto& level : default_ladder()) {
    auto l = level;
    l.q_step = 0;
    const auto res = compress(small_scan(), l);
    const auto rec = reconstruct(res.frame.bytes());
    REQUIRE(rec.occupancy == res.original.occupancy());
    for (int j = 0; j < rec.image.height(); ++j)
      for (int i = 0; i < rec.image.width(); ++i) {
        if (!rec.occupancy.test(i, j))
          continue;
        const double err = std::fabs(rec.image.at(i, j) - res.original.at(i, j));
        if (rec.fitted.test(i, j))
          REQUIRE(err < l.delta_r);
        else
          REQUIRE(err < 1e-6);
      }
  }
}

TEST_CASE("decompressed points sit on the reconstructed ranges")
{
  const auto level = default_ladder()[2];
  const auto res = compress(small_scan(), level);
  const auto bytes = res.frame.bytes();
  const auto rec = reconstruct(bytes);
  const auto pts = decompress(bytes);
  REQUIRE(pts.size() == rec.occupancy.count());
  std::size_t k = 0;
  for (int j = 0; j < rec.image.height(); ++j)
    for (int i = 0; i < rec.image.width(); ++i)
      if (rec.occupancy.test(i, j)) {
        const auto& p = pts[k++];
        const double r = std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z);
        REQUIRE(r == doctest::Approx(rec.image.at(i, j)).epsilon(1e-12));
        REQUIRE(rec.image.at(i, j) >= kMinReconstructedRange);
      }
}

TEST_CASE("header and report describe the frame")
{
  const auto level = default_ladder()[3];
  const auto res = compress(small_scan(), level);
  const auto& h = res.frame.header;
  CHECK(h.level_id == 3);
  CHECK(h.q_step == static_cast<float>(level.q_step));
  CHECK(h.delta_r == static_cast<float>(level.delta_r));
  CHECK(h.point_count == res.original.occupied_count());
  const auto& r = res.report;
  CHECK(r.input_points == small_scan().size());
  CHECK(r.raw_bytes == 16 * small_scan().size());
  CHECK(r.compressed_bytes == res.frame.size());
  CHECK(r.compression_ratio == doctest::Approx(double(r.raw_bytes) / r.compressed_bytes));
  CHECK(r.surface_count == h.surface_count);
  CHECK(r.fitted_points <= r.occupied_points);
  CHECK(r.projection.points_in == small_scan().size());
}

TEST_CASE("compression is deterministic")
{
  const auto level = default_ladder()[1];
  CHECK(compress(small_scan(), level).frame.bytes() == compress(small_scan(), level).frame.bytes());
}

TEST_CASE("coarser quantization costs accuracy and saves bytes")
{
  double prev_mae = -1;
  std::size_t prev_bytes = ~std::size_t{0};
  for (double q : {0.0, 0.1, 0.4, 1.0}) {
    CompressionLevel l{0, 0.5, 0.5, 0.3, q};
    const auto res = compress(small_scan(), l);
    const auto rec = reconstruct(res.frame.bytes());
    const double mae = range_mae(res.original, rec.image);
    CHECK(mae > prev_mae);
    CHECK(res.frame.size() < prev_bytes);
    prev_mae = mae;
    prev_bytes = res.frame.size();
  }
}

TEST_CASE("empty and degenerate clouds encode")
{
  const PointCloud empty;
  const auto res = compress(empty, default_ladder()[0]);
  CHECK(decompress(res.frame).empty());
  const PointCloud one{{5, 0, -0.5}};
  auto exact = default_ladder()[0];
  exact.q_step = 0;
  const auto r1 = compress(one, exact);
  const auto pts = decompress(r1.frame);
  REQUIRE(pts.size() == 1);
  CHECK(std::sqrt(pts[0].x * pts[0].x + pts[0].y * pts[0].y + pts[0].z * pts[0].z)
        == doctest::Approx(std::sqrt(25.25)).epsilon(1e-6));
}

TEST_CASE("corrupted frames raise errors")
{
  auto bytes = compress(small_scan(), default_ladder()[2]).frame.bytes();
  bytes.resize(bytes.size() - 10);
  CHECK_THROWS_AS(decompress(bytes), Error);
}
