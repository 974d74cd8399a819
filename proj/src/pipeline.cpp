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

#include "rcpcc/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "rcpcc/metrics.hpp"

namespace rcpcc {

CompressionLevel
CompressionLevel::from_params(const std::string& csv, int id)
{
  std::vector<double> v;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size())
        throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidArgument, "bad number '" + item + "' in --params");
    }
  }
  if (v.size() != 4)
    throw Error(ErrorCode::kInvalidArgument,
                "--params needs dtheta,dphi,delta_r,q_step; got '" + csv + "'");
  CompressionLevel level{id, v[0], v[1], v[2], v[3]};
  if (!(level.delta_theta_deg > 0) || !(level.delta_phi_deg > 0)
      || !(level.delta_r > 0) || !(level.q_step >= 0))
    throw Error(ErrorCode::kInvalidArgument,
                "angles and delta_r must be > 0, q_step >= 0");
  return level;
}

std::string
CompressionLevel::params() const
{
  std::ostringstream os;
  os << delta_theta_deg << ',' << delta_phi_deg << ',' << delta_r << ',' << q_step;
  return os.str();
}

std::vector<CompressionLevel>
default_ladder()
{
  return {
    {0, 0.40, 0.40, 0.10, 0.05},
    {1, 0.45, 0.45, 0.20, 0.10},
    {2, 0.50, 0.50, 0.30, 0.20},
    {3, 0.70, 0.70, 0.40, 0.40},
    {4, 1.00, 1.00, 0.50, 0.70},
    {5, 1.40, 1.40, 0.60, 1.00},
  };
}

void
validate_ladder(std::span<const CompressionLevel> ladder)
{
  if (ladder.empty())
    throw Error(ErrorCode::kInvalidArgument, "empty ladder");
  for (std::size_t k = 0; k < ladder.size(); ++k) {
    const auto& l = ladder[k];
    if (l.id != static_cast<int>(k))
      throw Error(ErrorCode::kInvalidArgument, "ladder ids must be 0..n-1");
    if (k == 0)
      continue;
    const auto& p = ladder[k - 1];
    if (l.delta_theta_deg < p.delta_theta_deg || l.delta_phi_deg < p.delta_phi_deg
        || l.delta_r < p.delta_r || l.q_step < p.q_step)
      throw Error(ErrorCode::kInvalidArgument,
                  "ladder parameters must be non-decreasing with the level id");
  }
}

ProjectionConfig
CodecOptions::projection(const CompressionLevel& level) const
{
  return ProjectionConfig::from_fov_degrees(level.delta_theta_deg, level.delta_phi_deg,
                                            h_fov, h_offset, v_fov, v_offset)
    .rounded_to_float();
}

//============================================================================

CompressResult
compress(std::span<const Point3> cloud, const CompressionLevel& level,
         const CodecOptions& options)
{
  const auto t0 = std::chrono::steady_clock::now();

  // Everything the decoder sees goes through float32 first, so encoder-side
  // checks use exactly the decoder's parameters.
  const ProjectionConfig projection = options.projection(level);
  const float q_step = static_cast<float>(level.q_step);
  const float delta_r = static_cast<float>(level.delta_r);
  if (!(q_step >= 0) || !(delta_r > 0))
    throw Error(ErrorCode::kInvalidArgument, "q_step must be >= 0 and delta_r > 0");

  CompressResult result;
  result.original = project(cloud, projection, &result.report.projection);

  FitConfig fit;
  fit.block_size = options.block_size;
  fit.min_points = options.min_points;
  fit.delta_r = level.delta_r;
  const SurfaceEncoding surfaces = encode_surfaces(result.original, fit);

  FrameSections sections;
  sections.occupancy = result.original.occupancy();
  sections.tuples = surfaces.tuples;
  const ShapeMask unfit_mask = sections.occupancy.minus(surfaces.fitted);
  if (q_step > 0) {
    sections.unfit = quantize(sa_dct_forward(surfaces.unfit, unfit_mask), q_step);
  } else {
    RawUnfitRanges raw;
    raw.values.reserve(unfit_mask.count());
    for (int j = 0; j < projection.height; ++j)
      for (int i = 0; i < projection.width; ++i)
        if (unfit_mask.test(i, j))
          raw.values.push_back(surfaces.unfit.at(i, j));
    sections.unfit = std::move(raw);
  }

  FrameHeader header;
  header.width = static_cast<std::uint16_t>(projection.width);
  header.height = static_cast<std::uint16_t>(projection.height);
  header.delta_theta = static_cast<float>(projection.delta_theta);
  header.delta_phi = static_cast<float>(projection.delta_phi);
  header.h_offset = static_cast<float>(projection.h_offset);
  header.v_offset = static_cast<float>(projection.v_offset);
  header.delta_r = delta_r;
  header.q_step = q_step;
  header.block_size = static_cast<std::uint8_t>(options.block_size);
  header.level_id = static_cast<std::uint8_t>(std::clamp(level.id, 0, 255));
  result.frame = encode_frame(header, sections, options.entropy);

  auto& rep = result.report;
  rep.input_points = cloud.size();
  rep.raw_bytes = cloud.size() * options.bytes_per_input_point;
  rep.compressed_bytes = result.frame.size();
  rep.compression_ratio =
    compression_ratio(cloud.size(), rep.compressed_bytes, options.bytes_per_input_point);
  rep.occupied_points = sections.occupancy.count();
  rep.fitted_points = surfaces.fitted.count();
  rep.fitted_fraction = rep.occupied_points
    ? static_cast<double>(rep.fitted_points) / rep.occupied_points
    : 0.0;
  rep.surface_count = surfaces.tuples.size();
  rep.encode_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  return result;
}

Reconstruction
reconstruct(std::span<const std::uint8_t> frame_bytes)
{
  DecodedFrame decoded = decode_frame(frame_bytes);
  const auto& h = decoded.header;
  const ProjectionConfig projection = h.projection();

  Reconstruction out;
  out.header = h;
  out.occupancy = std::move(decoded.sections.occupancy);

  SurfaceDecoding surfaces;
  try {
    surfaces = decode_surfaces(decoded.sections.tuples, out.occupancy, projection,
                               h.block_size);
  } catch (const Error& e) {
    throw Error(ErrorCode::kCorruptStream, e.what());
  }
  out.fitted = std::move(surfaces.fitted);
  out.image = std::move(surfaces.fitted_image);
  const ShapeMask unfit_mask = out.occupancy.minus(out.fitted);

  if (const auto* q = std::get_if<QuantizedCoefficients>(&decoded.sections.unfit)) {
    const RangeImage unfit = sa_idct_inverse(dequantize(*q), unfit_mask, projection);
    for (int j = 0; j < projection.height; ++j)
      for (int i = 0; i < projection.width; ++i)
        if (unfit_mask.test(i, j)) {
          const double r = unfit.at(i, j);
          out.image.set(i, j, std::isfinite(r) ? std::max(r, kMinReconstructedRange)
                                               : kMinReconstructedRange);
        }
  } else {
    const auto& raw = std::get<RawUnfitRanges>(decoded.sections.unfit).values;
    std::size_t k = 0;
    for (int j = 0; j < projection.height; ++j)
      for (int i = 0; i < projection.width; ++i)
        if (unfit_mask.test(i, j))
          out.image.set(i, j, raw[k++]);
  }
  return out;
}

PointCloud
decompress(std::span<const std::uint8_t> frame_bytes)
{
  return back_project(reconstruct(frame_bytes).image);
}

PointCloud
decompress(const CompressedFrame& frame)
{
  return decompress(frame.bytes());
}

}  // namespace rcpcc
