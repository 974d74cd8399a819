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
#include <span>
#include <string>
#include <vector>

#include "rcpcc/bitstream.hpp"
#include "rcpcc/range_image.hpp"

namespace rcpcc {

/// One rung of the rate ladder. Angles in degrees, distances in meters;
/// q_step = 0 stores unfit ranges losslessly instead of through SA-DCT.
struct CompressionLevel {
  int id = 0;
  double delta_theta_deg = 0.5;
  double delta_phi_deg = 0.5;
  double delta_r = 0.3;
  double q_step = 0.2;

  /// Parses "dtheta,dphi,delta_r,q_step".
  static CompressionLevel from_params(const std::string& csv, int id = 0);
  std::string params() const;
};

/// Six levels, fine (0) to coarse (5); level 2 is (0.5, 0.5, 0.3, 0.2).
std::vector<CompressionLevel> default_ladder();

/// Throws InvalidArgument unless ids are 0..n-1 and every parameter is
/// non-decreasing with the id.
void validate_ladder(std::span<const CompressionLevel> ladder);

struct CodecOptions {
  int block_size = 4;
  int min_points = 4;
  EntropyConfig entropy;
  std::size_t bytes_per_input_point = 16;  // KITTI float32 x, y, z, intensity
  // Field of view, degrees.
  double h_fov = 360.0;
  double h_offset = 180.0;
  double v_fov = 28.0;
  double v_offset = 25.0;

  ProjectionConfig projection(const CompressionLevel& level) const;
};

struct EncodeReport {
  std::size_t input_points = 0;
  std::size_t raw_bytes = 0;
  std::size_t compressed_bytes = 0;
  double compression_ratio = 0;
  std::size_t occupied_points = 0;
  std::size_t fitted_points = 0;
  double fitted_fraction = 0;
  std::size_t surface_count = 0;
  double encode_ms = 0;
  ProjectionStats projection;
};

struct CompressResult {
  CompressedFrame frame;
  EncodeReport report;
  RangeImage original;  // the projected input, for quality measurement
};

/// project -> encode_surfaces -> SA-DCT -> quantize -> encode_frame.
CompressResult compress(std::span<const Point3> cloud, const CompressionLevel& level,
                        const CodecOptions& options = {});

/// Range-image reconstruction of a frame, before back projection.
struct Reconstruction {
  RangeImage image;
  ShapeMask fitted;
  ShapeMask occupancy;
  FrameHeader header;
};

/// Smallest range a reconstructed unfit pixel is clamped to, meters.
inline constexpr double kMinReconstructedRange = 1e-3;

Reconstruction reconstruct(std::span<const std::uint8_t> frame_bytes);

/// decode_frame -> decode_surfaces -> dequantize -> SA-IDCT -> back_project.
PointCloud decompress(std::span<const std::uint8_t> frame_bytes);
PointCloud decompress(const CompressedFrame& frame);

}  // namespace rcpcc
