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

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <variant>
#include <vector>

#include "rcpcc/entropy.hpp"
#include "rcpcc/range_image.hpp"
#include "rcpcc/sadct.hpp"
#include "rcpcc/surface_codec.hpp"

namespace rcpcc {

// Frame wire format, little-endian throughout:
//
//   header (43 bytes)
//     magic "RCPC" | version u8 | W u16 | H u16 |
//     delta_theta f32 | delta_phi f32 | h_offset f32 | v_offset f32 |
//     delta_r f32 | q_step f32 | block_size u8 |
//     surface_count u32 | point_count u32 | level_id u8
//   payload = entropy_encode(sections)
//
//   sections
//     occupancy bitmap, ceil(W*H/8) bytes, row-major, LSB first
//     surface_count tuples {row u16, col u16, len u16, alpha f32, beta f32, gamma f32}
//     unfit data:
//       q_step > 0: zig-zag LEB128 varints in packed row-major order over
//                   the SA-DCT support of occupancy \ fitted
//       q_step = 0: f64 ranges of occupancy \ fitted, row-major

inline constexpr std::array<std::uint8_t, 4> kFrameMagic{'R', 'C', 'P', 'C'};
inline constexpr std::uint8_t kFrameVersion = 1;
inline constexpr std::size_t kHeaderSize = 43;
inline constexpr std::size_t kTupleSize = 18;

struct FrameHeader {
  std::uint8_t version = kFrameVersion;
  std::uint16_t width = 0;
  std::uint16_t height = 0;
  float delta_theta = 0;
  float delta_phi = 0;
  float h_offset = 0;
  float v_offset = 0;
  float delta_r = 0;
  float q_step = 0;
  std::uint8_t block_size = 4;
  std::uint32_t surface_count = 0;
  std::uint32_t point_count = 0;
  std::uint8_t level_id = 0;

  ProjectionConfig projection() const;

  friend bool operator==(const FrameHeader&, const FrameHeader&) = default;
};

/// Unfit ranges stored verbatim (no transform), row-major over the unfit mask.
struct RawUnfitRanges {
  std::vector<double> values;

  friend bool operator==(const RawUnfitRanges&, const RawUnfitRanges&) = default;
};

using UnfitPayload = std::variant<QuantizedCoefficients, RawUnfitRanges>;

struct FrameSections {
  ShapeMask occupancy;
  std::vector<SurfaceTuple> tuples;
  UnfitPayload unfit;
};

struct CompressedFrame {
  FrameHeader header;
  std::vector<std::uint8_t> payload;

  /// header bytes followed by the payload
  std::vector<std::uint8_t> bytes() const;
  std::size_t size() const { return kHeaderSize + payload.size(); }
};

struct DecodedFrame {
  FrameHeader header;
  FrameSections sections;
};

std::vector<std::uint8_t> serialize_header(const FrameHeader& header);

/// Throws BadMagic, UnsupportedVersion or CorruptStream.
FrameHeader parse_header(std::span<const std::uint8_t> bytes);

/// Deterministic section layout. Throws InconsistentShape when the unfit data
/// does not match occupancy \ fitted(tuples).
std::vector<std::uint8_t> serialize_sections(const ShapeMask& occupancy,
                                             std::span<const SurfaceTuple> tuples,
                                             const UnfitPayload& unfit,
                                             int block_size);

/// Inverse of serialize_sections for the geometry described by `header`.
FrameSections deserialize_sections(std::span<const std::uint8_t> raw,
                                   const FrameHeader& header);

/// Fills header.surface_count / point_count from `sections`.
CompressedFrame encode_frame(FrameHeader header, const FrameSections& sections,
                             const EntropyConfig& entropy = {});

/// Throws BadMagic, UnsupportedVersion, CorruptStream or InconsistentShape;
/// never reads outside `bytes`.
DecodedFrame decode_frame(std::span<const std::uint8_t> bytes);

//============================================================================
// .rcpcc container: sequence of { u32le length | frame bytes }.

void append_length_prefixed(std::vector<std::uint8_t>& out,
                            std::span<const std::uint8_t> frame);

void write_frame_file(const std::filesystem::path& path,
                      const std::vector<std::vector<std::uint8_t>>& frames);

std::vector<std::vector<std::uint8_t>>
read_frame_file(const std::filesystem::path& path);

}  // namespace rcpcc
