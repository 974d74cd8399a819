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

#include "rcpcc/bitstream.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <string>

#include "byteio.hpp"

namespace rcpcc {

using detail::ByteReader;
using detail::ByteWriter;

namespace {

[[noreturn]] void
corrupt(const std::string& what)
{
  throw Error(ErrorCode::kCorruptStream, what);
}

[[noreturn]] void
inconsistent(const std::string& what)
{
  throw Error(ErrorCode::kInconsistentShape, what);
}

std::size_t
bitmap_bytes(int width, int height)
{
  return (static_cast<std::size_t>(width) * height + 7) / 8;
}

}  // namespace

ProjectionConfig
FrameHeader::projection() const
{
  ProjectionConfig cfg;
  cfg.delta_theta = delta_theta;
  cfg.delta_phi = delta_phi;
  cfg.h_offset = h_offset;
  cfg.v_offset = v_offset;
  cfg.width = width;
  cfg.height = height;
  return cfg;
}

std::vector<std::uint8_t>
CompressedFrame::bytes() const
{
  auto out = serialize_header(header);
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

std::vector<std::uint8_t>
serialize_header(const FrameHeader& h)
{
  std::vector<std::uint8_t> out;
  out.reserve(kHeaderSize);
  ByteWriter w(out);
  for (auto b : kFrameMagic)
    w.u8(b);
  w.u8(h.version);
  w.u16(h.width);
  w.u16(h.height);
  w.f32(h.delta_theta);
  w.f32(h.delta_phi);
  w.f32(h.h_offset);
  w.f32(h.v_offset);
  w.f32(h.delta_r);
  w.f32(h.q_step);
  w.u8(h.block_size);
  w.u32(h.surface_count);
  w.u32(h.point_count);
  w.u8(h.level_id);
  return out;
}

FrameHeader
parse_header(std::span<const std::uint8_t> bytes)
{
  if (bytes.size() < kFrameMagic.size()
      || !std::equal(kFrameMagic.begin(), kFrameMagic.end(), bytes.begin()))
    throw Error(ErrorCode::kBadMagic, "frame does not start with RCPC");
  if (bytes.size() < kHeaderSize)
    corrupt("truncated header");

  ByteReader r(bytes.subspan(kFrameMagic.size()));
  FrameHeader h;
  h.version = r.u8();
  if (h.version != kFrameVersion)
    throw Error(ErrorCode::kUnsupportedVersion,
                "frame version " + std::to_string(h.version));
  h.width = r.u16();
  h.height = r.u16();
  h.delta_theta = r.f32();
  h.delta_phi = r.f32();
  h.h_offset = r.f32();
  h.v_offset = r.f32();
  h.delta_r = r.f32();
  h.q_step = r.f32();
  h.block_size = r.u8();
  h.surface_count = r.u32();
  h.point_count = r.u32();
  h.level_id = r.u8();

  if (h.width == 0 || h.height == 0)
    corrupt("empty image geometry");
  if (!(h.delta_theta > 0) || !(h.delta_phi > 0) || !std::isfinite(h.delta_theta)
      || !std::isfinite(h.delta_phi) || !std::isfinite(h.h_offset)
      || !std::isfinite(h.v_offset))
    corrupt("invalid projection parameters");
  if (!(h.q_step >= 0) || !std::isfinite(h.q_step) || !std::isfinite(h.delta_r))
    corrupt("invalid quantization parameters");
  if (h.block_size < 2)
    corrupt("invalid block size");
  if (h.point_count > static_cast<std::uint32_t>(h.width) * h.height)
    corrupt("point count exceeds image size");
  const std::uint64_t blocks =
    static_cast<std::uint64_t>((h.width + h.block_size - 1) / h.block_size)
    * ((h.height + h.block_size - 1) / h.block_size);
  if (h.surface_count > blocks)
    corrupt("surface count exceeds block count");
  return h;
}

//============================================================================

std::vector<std::uint8_t>
serialize_sections(const ShapeMask& occupancy, std::span<const SurfaceTuple> tuples,
                   const UnfitPayload& unfit, int block_size)
{
  const int w = occupancy.width(), h = occupancy.height();
  ShapeMask fitted;
  try {
    fitted = fitted_mask(tuples, occupancy, block_size);
  } catch (const Error& e) {
    inconsistent(e.what());
  }
  const ShapeMask unfit_mask = occupancy.minus(fitted);

  std::vector<std::uint8_t> out;
  out.reserve(bitmap_bytes(w, h) + tuples.size() * kTupleSize);
  ByteWriter wr(out);

  {
    const auto bits = occupancy.raw();
    std::vector<std::uint8_t> bitmap(bitmap_bytes(w, h), 0);
    for (std::size_t k = 0; k < bits.size(); ++k)
      if (bits[k])
        bitmap[k >> 3] |= static_cast<std::uint8_t>(1u << (k & 7));
    out.insert(out.end(), bitmap.begin(), bitmap.end());
  }

  for (const auto& t : tuples) {
    wr.u16(t.row);
    wr.u16(t.col);
    wr.u16(t.len);
    wr.f32(t.coefficients.alpha);
    wr.f32(t.coefficients.beta);
    wr.f32(t.coefficients.gamma);
  }

  if (const auto* q = std::get_if<QuantizedCoefficients>(&unfit)) {
    if (q->width != w || q->height != h
        || q->values.size() != static_cast<std::size_t>(w) * h)
      inconsistent("coefficient matrix size differs from occupancy");
    if (!(q->q_step > 0))
      inconsistent("quantized coefficients need q_step > 0");
    const auto support = packed_support(unfit_mask);
    for (int p = 0; p < h; ++p) {
      const int len = support.row_lengths[p];
      for (int c = 0; c < w; ++c) {
        if (c < len)
          wr.svarint(q->at(p, c));
        else if (q->at(p, c) != 0)
          inconsistent("nonzero coefficient outside support of occupancy \\ fitted");
      }
    }
  } else {
    const auto& raw = std::get<RawUnfitRanges>(unfit).values;
    if (raw.size() != unfit_mask.count())
      inconsistent("raw unfit count " + std::to_string(raw.size())
                   + " != unfit pixels " + std::to_string(unfit_mask.count()));
    for (double v : raw)
      wr.f64(v);
  }
  return out;
}

FrameSections
deserialize_sections(std::span<const std::uint8_t> raw, const FrameHeader& header)
{
  const int w = header.width, h = header.height;
  ByteReader r(raw);
  FrameSections s;

  s.occupancy = ShapeMask(w, h);
  {
    const auto bitmap = r.take(bitmap_bytes(w, h));
    auto bits = s.occupancy.raw();
    for (std::size_t k = 0; k < bits.size(); ++k)
      bits[k] = (bitmap[k >> 3] >> (k & 7)) & 1;
    const std::size_t used = bits.size() & 7;
    if (used && (bitmap.back() >> used) != 0)
      corrupt("nonzero bitmap padding");
  }
  if (s.occupancy.count() != header.point_count)
    inconsistent("occupancy has " + std::to_string(s.occupancy.count())
                 + " points, header says " + std::to_string(header.point_count));

  s.tuples.resize(header.surface_count);
  for (auto& t : s.tuples) {
    t.row = r.u16();
    t.col = r.u16();
    t.len = r.u16();
    t.coefficients.alpha = r.f32();
    t.coefficients.beta = r.f32();
    t.coefficients.gamma = r.f32();
    if (!std::isfinite(t.coefficients.alpha) || !std::isfinite(t.coefficients.beta)
        || !std::isfinite(t.coefficients.gamma))
      corrupt("non-finite surface coefficients");
  }

  ShapeMask fitted;
  try {
    fitted = fitted_mask(s.tuples, s.occupancy, header.block_size);
  } catch (const Error& e) {
    corrupt(e.what());
  }
  const ShapeMask unfit_mask = s.occupancy.minus(fitted);

  if (header.q_step > 0) {
    QuantizedCoefficients q{w, h, static_cast<double>(header.q_step),
                            std::vector<std::int64_t>(static_cast<std::size_t>(w) * h, 0)};
    const auto support = packed_support(unfit_mask);
    for (int p = 0; p < h; ++p)
      for (int c = 0; c < support.row_lengths[p]; ++c)
        q.values[static_cast<std::size_t>(p) * w + c] = r.svarint();
    s.unfit = std::move(q);
  } else {
    RawUnfitRanges ranges;
    const std::size_t n = unfit_mask.count();
    if (r.remaining() < n * 8)
      corrupt("truncated raw unfit ranges");
    ranges.values.resize(n);
    for (auto& v : ranges.values) {
      v = r.f64();
      if (!(v > 0) || !std::isfinite(v))
        corrupt("invalid raw range");
    }
    s.unfit = std::move(ranges);
  }

  if (r.remaining() != 0)
    corrupt(std::to_string(r.remaining()) + " trailing bytes after sections");
  return s;
}

CompressedFrame
encode_frame(FrameHeader header, const FrameSections& sections,
             const EntropyConfig& entropy)
{
  if (sections.occupancy.width() != header.width
      || sections.occupancy.height() != header.height)
    inconsistent("occupancy size differs from header");
  const bool raw_mode = std::holds_alternative<RawUnfitRanges>(sections.unfit);
  if (raw_mode != (header.q_step == 0))
    inconsistent("q_step must be 0 exactly when unfit ranges are stored raw");

  header.version = kFrameVersion;
  header.surface_count = static_cast<std::uint32_t>(sections.tuples.size());
  header.point_count = static_cast<std::uint32_t>(sections.occupancy.count());

  const auto raw = serialize_sections(sections.occupancy, sections.tuples,
                                      sections.unfit, header.block_size);
  return CompressedFrame{header, entropy_encode(raw, entropy)};
}

DecodedFrame
decode_frame(std::span<const std::uint8_t> bytes)
{
  DecodedFrame out;
  out.header = parse_header(bytes);
  const auto& h = out.header;

  // Upper bound of the section bytes, guards against decompression bombs.
  const std::size_t cells = static_cast<std::size_t>(h.width) * h.height;
  const std::size_t limit = bitmap_bytes(h.width, h.height)
    + static_cast<std::size_t>(h.surface_count) * kTupleSize
    + static_cast<std::size_t>(h.point_count) * (h.q_step > 0 ? 10 : 8) + cells;

  const auto raw = entropy_decode(bytes.subspan(kHeaderSize), limit);
  out.sections = deserialize_sections(raw, h);
  return out;
}

//============================================================================

void
append_length_prefixed(std::vector<std::uint8_t>& out,
                       std::span<const std::uint8_t> frame)
{
  if (frame.size() > 0xffffffffu)
    throw Error(ErrorCode::kInvalidArgument, "frame larger than 4 GiB");
  ByteWriter(out).u32(static_cast<std::uint32_t>(frame.size()));
  out.insert(out.end(), frame.begin(), frame.end());
}

void
write_frame_file(const std::filesystem::path& path,
                 const std::vector<std::vector<std::uint8_t>>& frames)
{
  std::vector<std::uint8_t> out;
  for (const auto& f : frames)
    append_length_prefixed(out, f);
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os)
    throw Error(ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  os.write(reinterpret_cast<const char*>(out.data()),
           static_cast<std::streamsize>(out.size()));
  if (!os)
    throw Error(ErrorCode::kIo, "write failed: " + path.string());
}

std::vector<std::vector<std::uint8_t>>
read_frame_file(const std::filesystem::path& path)
{
  std::ifstream is(path, std::ios::binary);
  if (!is)
    throw Error(ErrorCode::kIo, "cannot open " + path.string());
  const std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(is)),
                                       std::istreambuf_iterator<char>());
  std::vector<std::vector<std::uint8_t>> frames;
  ByteReader r(data);
  while (r.remaining() > 0) {
    const std::uint32_t len = r.u32();
    const auto body = r.take(len);
    frames.emplace_back(body.begin(), body.end());
  }
  return frames;
}

}  // namespace rcpcc
