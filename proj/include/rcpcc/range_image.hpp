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
#include <cstdint>
#include <span>
#include <vector>

#include "rcpcc/common.hpp"

namespace rcpcc {

/// Spherical projection parameters. All angles are radians; `width` counts
/// azimuth pixels (index i), `height` counts elevation pixels (index j).
struct ProjectionConfig {
  double delta_theta = 0;
  double delta_phi = 0;
  double h_offset = 0;
  double v_offset = 0;
  int width = 0;
  int height = 0;

  /// Builds a config from a field of view; width/height are the ceiling of
  /// FOV / resolution. Inputs are degrees.
  static ProjectionConfig from_fov_degrees(
    double delta_theta_deg,
    double delta_phi_deg,
    double h_fov_deg = 360.0,
    double h_offset_deg = 180.0,
    double v_fov_deg = 28.0,
    double v_offset_deg = 25.0);

  /// Default Velodyne HDL-64 setup used by KITTI: 360 deg azimuth and
  /// elevation in [-25, +3] deg.
  static ProjectionConfig kitti(double delta_theta_deg, double delta_phi_deg)
  {
    return from_fov_degrees(delta_theta_deg, delta_phi_deg);
  }

  /// Same config with every angle rounded through float32, as stored in a
  /// frame header.
  ProjectionConfig rounded_to_float() const;

  void validate() const;

  friend bool operator==(const ProjectionConfig&, const ProjectionConfig&) = default;
};

/// Boolean H x W grid, row-major over (j, i).
class ShapeMask {
public:
  ShapeMask() = default;
  ShapeMask(int width, int height)
    : width_(width), height_(height)
    , bits_(static_cast<std::size_t>(width) * height, 0)
  {}

  int width() const { return width_; }
  int height() const { return height_; }

  bool test(int i, int j) const { return bits_[index(i, j)] != 0; }
  void set(int i, int j, bool v = true) { bits_[index(i, j)] = v ? 1 : 0; }

  std::size_t count() const;
  bool empty() const { return count() == 0; }

  std::span<const std::uint8_t> raw() const { return bits_; }
  std::span<std::uint8_t> raw() { return bits_; }

  /// this \ other
  ShapeMask minus(const ShapeMask& other) const;
  /// this & other
  ShapeMask intersect(const ShapeMask& other) const;
  bool is_subset_of(const ShapeMask& other) const;

  friend bool operator==(const ShapeMask&, const ShapeMask&) = default;

private:
  std::size_t index(int i, int j) const
  {
    return static_cast<std::size_t>(j) * width_ + i;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> bits_;
};

/// H x W grid of ranges in meters. A cell value of 0 means empty; every
/// stored range is positive and finite.
class RangeImage {
public:
  RangeImage() = default;
  explicit RangeImage(const ProjectionConfig& config)
    : config_(config)
    , cells_(static_cast<std::size_t>(config.width) * config.height, 0.0)
  {}

  const ProjectionConfig& config() const { return config_; }
  int width() const { return config_.width; }
  int height() const { return config_.height; }

  double at(int i, int j) const { return cells_[index(i, j)]; }
  bool occupied(int i, int j) const { return at(i, j) > 0; }
  void set(int i, int j, double r) { cells_[index(i, j)] = r; }
  void clear(int i, int j) { cells_[index(i, j)] = 0; }

  /// Row j as a contiguous span of width() cells.
  std::span<const double> row(int j) const
  {
    return {cells_.data() + index(0, j), static_cast<std::size_t>(width())};
  }

  std::span<const double> cells() const { return cells_; }

  ShapeMask occupancy() const;
  std::size_t occupied_count() const;

  /// Copy restricted to the cells set in `mask`.
  RangeImage masked(const ShapeMask& mask) const;

  friend bool operator==(const RangeImage&, const RangeImage&) = default;

private:
  std::size_t index(int i, int j) const
  {
    return static_cast<std::size_t>(j) * config_.width + i;
  }

  ProjectionConfig config_;
  std::vector<double> cells_;
};

/// points_in = projected + out_of_fov + collided + zero_range
struct ProjectionStats {
  std::size_t points_in = 0;
  std::size_t projected = 0;
  std::size_t out_of_fov = 0;
  std::size_t collided = 0;
  std::size_t zero_range = 0;
};

/// Projects a cloud into a range image; colliding points keep the nearest
/// range.
RangeImage project(std::span<const Point3> cloud, const ProjectionConfig& config,
                   ProjectionStats* stats = nullptr);

/// Emits one point per occupied cell at the pixel-center direction.
PointCloud back_project(const RangeImage& image);

/// Pixel-center azimuth / elevation of cell (i, j).
double pixel_azimuth(const ProjectionConfig& config, int i);
double pixel_elevation(const ProjectionConfig& config, int j);

}  // namespace rcpcc
