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
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rcpcc/range_image.hpp"

namespace rcpcc {

/// Inverse-range surface 1/r = alpha*i + beta*j + gamma over absolute pixel
/// indices. Stored at float32 precision, which is also the wire precision.
struct SurfaceCoefficients {
  float alpha = 0;
  float beta = 0;
  float gamma = 0;

  friend bool operator==(const SurfaceCoefficients&, const SurfaceCoefficients&) = default;
};

/// One run of `len` horizontally adjacent blocks sharing a surface.
struct SurfaceTuple {
  std::uint16_t row = 0;  // block row
  std::uint16_t col = 0;  // first block column
  std::uint16_t len = 1;  // blocks
  SurfaceCoefficients coefficients;

  friend bool operator==(const SurfaceTuple&, const SurfaceTuple&) = default;
};

struct FitConfig {
  int block_size = 4;
  double delta_r = 0.3;  // meters
  int min_points = 4;

  void validate() const;
};

struct BlockCoord {
  int row = 0;
  int col = 0;
};

/// Blocks per image row / column (partial edge blocks included).
int block_cols(const ProjectionConfig& config, int block_size);
int block_rows(const ProjectionConfig& config, int block_size);

/// Least-squares core of fit_block: minimizes sum (alpha*i + beta*j + gamma - 1/r)^2
/// over the occupied pixels of a block. nullopt when fewer than `min_points`
/// pixels are occupied or the system is singular.
std::optional<std::array<double, 3>>
solve_surface(const RangeImage& image, BlockCoord block, int block_size,
              int min_points);

/// Fits one block and keeps the float32-rounded coefficients only if every
/// occupied pixel passes the range test |r - r_hat| < delta_r.
std::optional<SurfaceCoefficients>
fit_block(const RangeImage& image, BlockCoord block, const FitConfig& config);

/// r_hat = 1 / (alpha*i + beta*j + gamma); throws NonPositiveDenominator.
double predict_range_surface(const SurfaceCoefficients& coeffs, int i, int j);

/// True when every occupied pixel of the block passes the range test against
/// `coeffs`. Empty blocks pass.
bool block_fits(const RangeImage& image, BlockCoord block, int block_size,
                const SurfaceCoefficients& coeffs, double delta_r);

struct SurfaceEncoding {
  std::vector<SurfaceTuple> tuples;  // sorted by (row, col)
  ShapeMask fitted;
  RangeImage unfit;  // occupancy \ fitted, original ranges
};

SurfaceEncoding encode_surfaces(const RangeImage& image, const FitConfig& config);

struct SurfaceDecoding {
  RangeImage fitted_image;  // predicted ranges on the fitted pixels only
  ShapeMask fitted;
};

/// Rebuilds the fitted pixels from tuples and the occupancy mask. The mask is
/// a pure function of (tuples, occupancy), so it equals the encoder's.
/// Throws MalformedTuple on out-of-range, unsorted or overlapping runs.
SurfaceDecoding decode_surfaces(std::span<const SurfaceTuple> tuples,
                                const ShapeMask& occupancy,
                                const ProjectionConfig& projection,
                                int block_size);

/// Fitted mask only; same rules as decode_surfaces.
ShapeMask fitted_mask(std::span<const SurfaceTuple> tuples,
                      const ShapeMask& occupancy, int block_size);

//============================================================================
// Euclidean plane model, kept for the plane-vs-surface ablation.

struct PlaneCoefficients {
  double a = 0;
  double b = 0;
  double c = 0;
  double d = 0;
};

/// r_hat = -d / (a cos(phi) cos(theta) + b cos(phi) sin(theta) + c sin(phi));
/// throws DegeneratePlane on a zero denominator.
double predict_range_plane(const PlaneCoefficients& plane, double theta, double phi);

enum class FitModel { kSurface, kPlane };

struct ModelFit {
  ShapeMask fitted;
  RangeImage predicted;  // model ranges on fitted pixels
  std::size_t runs = 0;
};

/// Runs the block fitting and run merging with either model. The surface
/// branch is exactly encode_surfaces followed by decode_surfaces.
ModelFit fit_with_model(const RangeImage& image, const FitConfig& config,
                        FitModel model);

}  // namespace rcpcc
