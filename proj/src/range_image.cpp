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

#include "rcpcc/range_image.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace rcpcc {

//============================================================================

namespace {

int pixel_count(double fov, double step)
{
  // Tolerate ulp noise so 360 / 0.5 deg gives 720 rather than 721.
  const double n = fov / step;
  return static_cast<int>(std::ceil(n - 1e-9 * std::max(1.0, n)));
}

}  // namespace

ProjectionConfig
ProjectionConfig::from_fov_degrees(
  double delta_theta_deg,
  double delta_phi_deg,
  double h_fov_deg,
  double h_offset_deg,
  double v_fov_deg,
  double v_offset_deg)
{
  if (!(delta_theta_deg > 0) || !(delta_phi_deg > 0) || !(h_fov_deg > 0)
      || !(v_fov_deg > 0))
    throw Error(ErrorCode::kInvalidArgument,
                "angular resolution and field of view must be positive");

  ProjectionConfig cfg;
  cfg.delta_theta = deg_to_rad(delta_theta_deg);
  cfg.delta_phi = deg_to_rad(delta_phi_deg);
  cfg.h_offset = deg_to_rad(h_offset_deg);
  cfg.v_offset = deg_to_rad(v_offset_deg);
  cfg.width = pixel_count(h_fov_deg, delta_theta_deg);
  cfg.height = pixel_count(v_fov_deg, delta_phi_deg);
  cfg.validate();
  return cfg;
}

ProjectionConfig
ProjectionConfig::rounded_to_float() const
{
  ProjectionConfig cfg = *this;
  cfg.delta_theta = static_cast<float>(delta_theta);
  cfg.delta_phi = static_cast<float>(delta_phi);
  cfg.h_offset = static_cast<float>(h_offset);
  cfg.v_offset = static_cast<float>(v_offset);
  return cfg;
}

void
ProjectionConfig::validate() const
{
  if (!(delta_theta > 0) || !(delta_phi > 0) || !std::isfinite(delta_theta)
      || !std::isfinite(delta_phi))
    throw Error(ErrorCode::kInvalidArgument, "delta_theta/delta_phi must be > 0");
  if (!std::isfinite(h_offset) || !std::isfinite(v_offset))
    throw Error(ErrorCode::kInvalidArgument, "offsets must be finite");
  if (width < 1 || height < 1 || width > 65535 || height > 65535)
    throw Error(ErrorCode::kInvalidArgument,
                "image size out of range: " + std::to_string(width) + "x"
                  + std::to_string(height));
}

//============================================================================

std::size_t
ShapeMask::count() const
{
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

ShapeMask
ShapeMask::minus(const ShapeMask& other) const
{
  ShapeMask out(width_, height_);
  for (std::size_t k = 0; k < bits_.size(); ++k)
    out.bits_[k] = bits_[k] && !other.bits_[k];
  return out;
}

ShapeMask
ShapeMask::intersect(const ShapeMask& other) const
{
  ShapeMask out(width_, height_);
  for (std::size_t k = 0; k < bits_.size(); ++k)
    out.bits_[k] = bits_[k] && other.bits_[k];
  return out;
}

bool
ShapeMask::is_subset_of(const ShapeMask& other) const
{
  if (width_ != other.width_ || height_ != other.height_)
    return false;
  for (std::size_t k = 0; k < bits_.size(); ++k)
    if (bits_[k] && !other.bits_[k])
      return false;
  return true;
}

//============================================================================

ShapeMask
RangeImage::occupancy() const
{
  ShapeMask mask(width(), height());
  auto bits = mask.raw();
  for (std::size_t k = 0; k < cells_.size(); ++k)
    bits[k] = cells_[k] > 0;
  return mask;
}

std::size_t
RangeImage::occupied_count() const
{
  return static_cast<std::size_t>(
    std::count_if(cells_.begin(), cells_.end(), [](double r) { return r > 0; }));
}

RangeImage
RangeImage::masked(const ShapeMask& mask) const
{
  RangeImage out(config_);
  auto bits = mask.raw();
  for (std::size_t k = 0; k < cells_.size(); ++k)
    if (bits[k])
      out.cells_[k] = cells_[k];
  return out;
}

//============================================================================

double
pixel_azimuth(const ProjectionConfig& config, int i)
{
  return (i + 0.5) * config.delta_theta - config.h_offset;
}

double
pixel_elevation(const ProjectionConfig& config, int j)
{
  return (j + 0.5) * config.delta_phi - config.v_offset;
}

RangeImage
project(std::span<const Point3> cloud, const ProjectionConfig& config,
        ProjectionStats* stats)
{
  config.validate();
  RangeImage image(config);
  ProjectionStats st;
  st.points_in = cloud.size();

  for (const auto& p : cloud) {
    const double rxy = std::sqrt(p.x * p.x + p.y * p.y);
    const double r = std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z);
    if (!(r > 0) || !std::isfinite(r)) {
      ++st.zero_range;
      continue;
    }

    const double fi = std::floor((std::atan2(p.y, p.x) + config.h_offset)
                                 / config.delta_theta);
    const double fj = std::floor((std::atan2(p.z, rxy) + config.v_offset)
                                 / config.delta_phi);
    if (!(fi >= 0 && fi < config.width && fj >= 0 && fj < config.height)) {
      ++st.out_of_fov;
      continue;
    }

    const int i = static_cast<int>(fi);
    const int j = static_cast<int>(fj);
    const double prev = image.at(i, j);
    if (prev > 0) {
      ++st.collided;
      if (r < prev)
        image.set(i, j, r);
      continue;
    }
    image.set(i, j, r);
    ++st.projected;
  }

  if (stats)
    *stats = st;
  return image;
}

PointCloud
back_project(const RangeImage& image)
{
  const auto& cfg = image.config();
  PointCloud cloud;
  cloud.reserve(image.occupied_count());

  std::vector<double> cos_t(cfg.width), sin_t(cfg.width);
  for (int i = 0; i < cfg.width; ++i) {
    const double theta = pixel_azimuth(cfg, i);
    cos_t[i] = std::cos(theta);
    sin_t[i] = std::sin(theta);
  }

  for (int j = 0; j < cfg.height; ++j) {
    const double phi = pixel_elevation(cfg, j);
    const double cp = std::cos(phi);
    const double sp = std::sin(phi);
    auto row = image.row(j);
    for (int i = 0; i < cfg.width; ++i) {
      const double r = row[i];
      if (!(r > 0))
        continue;
      cloud.push_back({r * cp * cos_t[i], r * cp * sin_t[i], r * sp, 0.f});
    }
  }
  return cloud;
}

}  // namespace rcpcc
