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

#include <filesystem>
#include <variant>

#include "rcpcc/bitstream.hpp"
#include "support.hpp"

using namespace rcpcc;
using test::Rng;

namespace {

struct Frame {
  FrameHeader header;
  FrameSections sections;
};

Frame
random_frame(Rng& rng, bool raw_unfit)
{
  const double dt = test::uniform(rng, 0.8, 3.0), dp = test::uniform(rng, 0.8, 3.0);
  const auto cfg = ProjectionConfig::kitti(dt, dp).rounded_to_float();
  const auto img = test::random_range_image(rng, cfg, test::uniform(rng, 0, 0.9));
  FitConfig fc;
  fc.block_size = test::uniform_int(rng, 2, 6);
  fc.delta_r = test::uniform(rng, 0.05, 0.6);
  const auto enc = encode_surfaces(img, fc);

  Frame f;
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
  const ShapeMask unfit_mask = f.sections.occupancy.minus(enc.fitted);
  if (raw_unfit) {
    f.header.q_step = 0;
    RawUnfitRanges raw;
    for (int j = 0; j < cfg.height; ++j)
      for (int i = 0; i < cfg.width; ++i)
        if (unfit_mask.test(i, j))
          raw.values.push_back(img.at(i, j));
    f.sections.unfit = raw;
  } else {
    f.header.q_step = static_cast<float>(test::uniform(rng, 0.05, 1.0));
    f.sections.unfit = quantize(sa_dct_forward(enc.unfit, unfit_mask), f.header.q_step);
  }
  return f;
}

void
check_same(const FrameSections& a, const FrameSections& b)
{
  CHECK(a.occupancy == b.occupancy);
  CHECK(a.tuples == b.tuples);
  CHECK(a.unfit == b.unfit);
}

}  // namespace

TEST_CASE("header round trip and size")
{
  FrameHeader h;
  h.width = 720;
  h.height = 56;
  h.delta_theta = 0.0087f;
  h.delta_phi = 0.0087f;
  h.h_offset = 3.14159f;
  h.v_offset = 0.436f;
  h.delta_r = 0.3f;
  h.q_step = 0.2f;
  h.surface_count = 7;
  h.point_count = 12345;
  h.level_id = 2;
  const auto bytes = serialize_header(h);
  CHECK(bytes.size() == kHeaderSize);
  CHECK(bytes[0] == 'R');
  CHECK(parse_header(bytes) == h);
}

TEST_CASE("header errors carry precise codes")
{
  FrameHeader h;
  h.width = 10;
  h.height = 10;
  h.delta_theta = h.delta_phi = 0.01f;
  h.delta_r = 0.3f;
  const auto good = serialize_header(h);
  auto code_of = [](std::span<const std::uint8_t> b) {
    try {
      parse_header(b);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kInvalidArgument;  // did not throw
  };
  auto bad = good;
  bad[0] = 'X';
  CHECK(code_of(bad) == ErrorCode::kBadMagic);
  bad = good;
  bad[4] = 9;
  CHECK(code_of(bad) == ErrorCode::kUnsupportedVersion);
  CHECK(code_of(std::span(good).first(20)) == ErrorCode::kCorruptStream);
  bad = good;
  bad[5] = bad[6] = 0;  // width 0
  CHECK(code_of(bad) == ErrorCode::kCorruptStream);
}

TEST_CASE("sections serialize and parse back identically")
{
  Rng rng(77);
  for (int rep = 0; rep < 60; ++rep) {
    const auto f = random_frame(rng, rep % 2 == 0);
    const auto raw = serialize_sections(f.sections.occupancy, f.sections.tuples,
                                        f.sections.unfit, f.header.block_size);
    auto h = f.header;
    h.surface_count = static_cast<std::uint32_t>(f.sections.tuples.size());
    h.point_count = static_cast<std::uint32_t>(f.sections.occupancy.count());
    check_same(deserialize_sections(raw, h), f.sections);
  }
}

TEST_CASE("frames round trip through every entropy backend")
{
  Rng rng(78);
  for (auto backend : {EntropyBackend::kIdentity, EntropyBackend::kDeflate, EntropyBackend::kLzma})
    for (int rep = 0; rep < 10; ++rep) {
      const auto f = random_frame(rng, rep % 3 == 0);
      const auto frame = encode_frame(f.header, f.sections, {backend, 6});
      CHECK(frame.header.surface_count == f.sections.tuples.size());
      CHECK(frame.header.point_count == f.sections.occupancy.count());
      const auto bytes = frame.bytes();
      CHECK(bytes.size() == frame.size());
      const auto d = decode_frame(bytes);
      CHECK(d.header == frame.header);
      check_same(d.sections, f.sections);
    }
}

TEST_CASE("inconsistent unfit data is refused at serialization")
{
  Rng rng(79);
  auto f = random_frame(rng, true);
  auto& raw = std::get<RawUnfitRanges>(f.sections.unfit);
  raw.values.push_back(1.0);
  CHECK_THROWS_AS(serialize_sections(f.sections.occupancy, f.sections.tuples, f.sections.unfit,
                                     f.header.block_size),
                  Error);
}

TEST_CASE("non-zero bitmap padding is corrupt")
{
  FrameHeader h;
  h.width = 3;
  h.height = 3;  // 9 bits -> 2 bytes, 7 padding bits
  h.delta_theta = h.delta_phi = 0.5f;
  h.delta_r = 0.3f;
  h.q_step = 0;
  FrameSections s;
  s.occupancy = ShapeMask(3, 3);
  s.unfit = RawUnfitRanges{};
  auto raw = serialize_sections(s.occupancy, s.tuples, s.unfit, 4);
  REQUIRE(raw.size() >= 2);
  CHECK_NOTHROW(deserialize_sections(raw, h));
  raw[1] |= 0x80;
  CHECK_THROWS_AS(deserialize_sections(raw, h), Error);
}

TEST_CASE("random and mutated bytes only ever raise library errors")
{
  Rng rng(80);
  const auto seed = random_frame(rng, false);
  const auto valid = encode_frame(seed.header, seed.sections).bytes();
  std::size_t rejected = 0;
  for (int rep = 0; rep < 4000; ++rep) {
    std::vector<std::uint8_t> buf;
    if (rep % 2 == 0) {
      buf.resize(static_cast<std::size_t>(test::uniform_int(rng, 0, 200)));
      for (auto& b : buf)
        b = static_cast<std::uint8_t>(rng());
      if (rep % 4 == 0 && buf.size() >= 5) {
        buf[0] = 'R', buf[1] = 'C', buf[2] = 'P', buf[3] = 'C', buf[4] = 1;
      }
    } else {
      buf = valid;
      const int flips = test::uniform_int(rng, 1, 8);
      for (int k = 0; k < flips; ++k)
        buf[static_cast<std::size_t>(test::uniform_int(rng, 0, (int)buf.size() - 1))] ^=
          static_cast<std::uint8_t>(1 + rng() % 255);
      if (rep % 3 == 0)
        buf.resize(static_cast<std::size_t>(test::uniform_int(rng, 0, (int)buf.size())));
    }
    try {
      (void)decode_frame(buf);
    } catch (const Error&) {
      ++rejected;
    }
  }
  CHECK(rejected > 3000);
}

TEST_CASE("container file holds a sequence of frames")
{
  Rng rng(81);
  std::vector<std::vector<std::uint8_t>> frames;
  for (int k = 0; k < 3; ++k) {
    const auto f = random_frame(rng, k == 1);
    frames.push_back(encode_frame(f.header, f.sections).bytes());
  }
  const auto path = std::filesystem::temp_directory_path() / "rcpcc_container_test.rcpcc";
  write_frame_file(path, frames);
  CHECK(read_frame_file(path) == frames);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_frame_file(path), Error);
}
