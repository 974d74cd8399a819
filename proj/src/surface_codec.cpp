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

#include "rcpcc/surface_codec.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

#include "rcpcc/kernels.hpp"

namespace rcpcc {

void
FitConfig::validate() const
{
  if (block_size < 2 || block_size > 255)
    throw Error(ErrorCode::kInvalidArgument, "block_size must be in [2, 255]");
  if (!(delta_r > 0) || !std::isfinite(delta_r))
    throw Error(ErrorCode::kInvalidArgument, "delta_r must be > 0");
  if (min_points < 3)
    throw Error(ErrorCode::kInvalidArgument, "min_points must be >= 3");
}

int
block_cols(const ProjectionConfig& config, int block_size)
{
  return (config.width + block_size - 1) / block_size;
}

int
block_rows(const ProjectionConfig& config, int block_size)
{
  return (config.height + block_size - 1) / block_size;
}

//============================================================================

namespace {

struct BlockExtent {
  int i0, i1;  // [i0, i1)
  int j0, j1;  // [j0, j1)
};

BlockExtent
extent_of(int width, int height, BlockCoord block, int block_size)
{
  BlockExtent e;
  e.i0 = block.col * block_size;
  e.j0 = block.row * block_size;
  e.i1 = std::min(width, e.i0 + block_size);
  e.j1 = std::min(height, e.j0 + block_size);
  return e;
}

// Occupied-pixel count per block, row-major over (block row, block col).
struct BlockGrid {
  int rows = 0;
  int cols = 0;
  std::vector<int> counts;

  BlockGrid(const RangeImage& image, int block_size)
    : rows(block_rows(image.config(), block_size))
    , cols(block_cols(image.config(), block_size))
    , counts(static_cast<std::size_t>(rows) * cols, 0)
  {
    for (int j = 0; j < image.height(); ++j) {
      auto row = image.row(j);
      int* line = counts.data() + static_cast<std::size_t>(j / block_size) * cols;
      for (int i = 0; i < image.width(); ++i)
        if (row[i] > 0)
          ++line[i / block_size];
    }
  }

  int count(int br, int bc) const
  {
    return counts[static_cast<std::size_t>(br) * cols + bc];
  }
};

// Greedy run construction along each block row: a fitted block is extended
// while the following blocks pass the range test against the same
// coefficients. Empty blocks inside a run are carried, trailing ones are not.
template <class Coeffs, class FitFn, class AcceptFn, class EmitFn>
void
merge_runs(const BlockGrid& grid, FitFn&& fit, AcceptFn&& accepts, EmitFn&& emit)
{
  for (int br = 0; br < grid.rows; ++br) {
    int bc = 0;
    while (bc < grid.cols) {
      if (grid.count(br, bc) == 0) {
        ++bc;
        continue;
      }
      std::optional<Coeffs> coeffs = fit(BlockCoord{br, bc});
      if (!coeffs) {
        ++bc;
        continue;
      }
      int last = bc;
      for (int next = bc + 1; next < grid.cols; ++next) {
        if (grid.count(br, next) == 0)
          continue;
        if (!accepts(BlockCoord{br, next}, *coeffs))
          break;
        last = next;
      }
      emit(br, bc, last - bc + 1, *coeffs);
      bc = last + 1;
    }
  }
}

void
mark_run(const ShapeMask& occupancy, ShapeMask& fitted, int br, int bc, int len,
         int block_size)
{
  const int j0 = br * block_size;
  const int j1 = std::min(occupancy.height(), j0 + block_size);
  const int i0 = bc * block_size;
  const int i1 = std::min(occupancy.width(), (bc + len) * block_size);
  for (int j = j0; j < j1; ++j)
    for (int i = i0; i < i1; ++i)
      if (occupancy.test(i, j))
        fitted.set(i, j);
}

void
validate_tuples(std::span<const SurfaceTuple> tuples, int rows, int cols)
{
  const SurfaceTuple* prev = nullptr;
  for (const auto& t : tuples) {
    if (t.len < 1 || t.row >= rows || t.col + t.len > cols)
      throw Error(ErrorCode::kMalformedTuple,
                  "run (" + std::to_string(t.row) + "," + std::to_string(t.col)
                    + ",len " + std::to_string(t.len) + ") outside "
                    + std::to_string(rows) + "x" + std::to_string(cols)
                    + " blocks");
    if (prev) {
      const bool ordered = t.row > prev->row
        || (t.row == prev->row && t.col >= prev->col + prev->len);
      if (!ordered)
        throw Error(ErrorCode::kMalformedTuple, "runs unsorted or overlapping");
    }
    prev = &t;
  }
}

}  // namespace

//============================================================================

std::optional<std::array<double, 3>>
solve_surface(const RangeImage& image, BlockCoord block, int block_size,
              int min_points)
{
  const auto e = extent_of(image.width(), image.height(), block, block_size);

  int n = 0;
  double si = 0, sj = 0, sy = 0;
  for (int j = e.j0; j < e.j1; ++j)
    for (int i = e.i0; i < e.i1; ++i) {
      const double r = image.at(i, j);
      if (!(r > 0))
        continue;
      ++n;
      si += i;
      sj += j;
      sy += 1.0 / r;
    }
  if (n < min_points || n < 3)
    return std::nullopt;

  // Centered normal equations: the intercept decouples and the remaining
  // 2x2 system is well conditioned regardless of the absolute indices.
  const double mi = si / n, mj = sj / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0, sxt = 0, syt = 0;
  for (int j = e.j0; j < e.j1; ++j)
    for (int i = e.i0; i < e.i1; ++i) {
      const double r = image.at(i, j);
      if (!(r > 0))
        continue;
      const double di = i - mi, dj = j - mj, dt = 1.0 / r - my;
      sxx += di * di;
      sxy += di * dj;
      syy += dj * dj;
      sxt += di * dt;
      syt += dj * dt;
    }

  const double det = sxx * syy - sxy * sxy;
  if (!(det > 1e-10 * sxx * syy) || !(sxx > 0) || !(syy > 0))
    return std::nullopt;

  const double alpha = (sxt * syy - syt * sxy) / det;
  const double beta = (syt * sxx - sxt * sxy) / det;
  const double gamma = my - alpha * mi - beta * mj;
  if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(gamma))
    return std::nullopt;
  return std::array<double, 3>{alpha, beta, gamma};
}

bool
block_fits(const RangeImage& image, BlockCoord block, int block_size,
           const SurfaceCoefficients& coeffs, double delta_r)
{
  const auto e = extent_of(image.width(), image.height(), block, block_size);
  const auto& k = kernels::active();
  for (int j = e.j0; j < e.j1; ++j) {
    if (!k.surface_fits(coeffs.alpha, coeffs.beta, coeffs.gamma, e.i0, j,
                        image.row(j).data() + e.i0, e.i1 - e.i0, delta_r))
      return false;
  }
  return true;
}

std::optional<SurfaceCoefficients>
fit_block(const RangeImage& image, BlockCoord block, const FitConfig& config)
{
  const auto solution = solve_surface(image, block, config.block_size,
                                      config.min_points);
  if (!solution)
    return std::nullopt;

  const SurfaceCoefficients coeffs{static_cast<float>((*solution)[0]),
                                   static_cast<float>((*solution)[1]),
                                   static_cast<float>((*solution)[2])};
  if (!std::isfinite(coeffs.alpha) || !std::isfinite(coeffs.beta)
      || !std::isfinite(coeffs.gamma))
    return std::nullopt;
  if (!block_fits(image, block, config.block_size, coeffs, config.delta_r))
    return std::nullopt;
  return coeffs;
}

double
predict_range_surface(const SurfaceCoefficients& coeffs, int i, int j)
{
  // Same operation order as kernels::surface_fits.
  const double den = (static_cast<double>(coeffs.alpha) * static_cast<double>(i)
                      + static_cast<double>(coeffs.beta) * static_cast<double>(j))
    + static_cast<double>(coeffs.gamma);
  if (!(den > 0))
    throw Error(ErrorCode::kNonPositiveDenominator,
                "surface denominator " + std::to_string(den) + " at ("
                  + std::to_string(i) + "," + std::to_string(j) + ")");
  return 1.0 / den;
}

SurfaceEncoding
encode_surfaces(const RangeImage& image, const FitConfig& config)
{
  config.validate();
  const int b = config.block_size;
  const BlockGrid grid(image, b);
  const ShapeMask occupancy = image.occupancy();

  SurfaceEncoding out;
  out.fitted = ShapeMask(image.width(), image.height());

  merge_runs<SurfaceCoefficients>(
    grid,
    [&](BlockCoord blk) { return fit_block(image, blk, config); },
    [&](BlockCoord blk, const SurfaceCoefficients& c) {
      return block_fits(image, blk, b, c, config.delta_r);
    },
    [&](int br, int bc, int len, const SurfaceCoefficients& c) {
      out.tuples.push_back({static_cast<std::uint16_t>(br),
                            static_cast<std::uint16_t>(bc),
                            static_cast<std::uint16_t>(len), c});
      mark_run(occupancy, out.fitted, br, bc, len, b);
    });

  out.unfit = image.masked(occupancy.minus(out.fitted));
  return out;
}

ShapeMask
fitted_mask(std::span<const SurfaceTuple> tuples, const ShapeMask& occupancy,
            int block_size)
{
  if (block_size < 1)
    throw Error(ErrorCode::kMalformedTuple, "block_size must be positive");
  const int rows = (occupancy.height() + block_size - 1) / block_size;
  const int cols = (occupancy.width() + block_size - 1) / block_size;
  validate_tuples(tuples, rows, cols);

  ShapeMask fitted(occupancy.width(), occupancy.height());
  for (const auto& t : tuples)
    mark_run(occupancy, fitted, t.row, t.col, t.len, block_size);
  return fitted;
}

SurfaceDecoding
decode_surfaces(std::span<const SurfaceTuple> tuples, const ShapeMask& occupancy,
                const ProjectionConfig& projection, int block_size)
{
  if (occupancy.width() != projection.width
      || occupancy.height() != projection.height)
    throw Error(ErrorCode::kShapeMismatch, "occupancy does not match projection");

  SurfaceDecoding out;
  out.fitted = fitted_mask(tuples, occupancy, block_size);
  out.fitted_image = RangeImage(projection);

  for (const auto& t : tuples) {
    const int j0 = t.row * block_size;
    const int j1 = std::min(projection.height, j0 + block_size);
    const int i0 = t.col * block_size;
    const int i1 = std::min(projection.width, (t.col + t.len) * block_size);
    for (int j = j0; j < j1; ++j)
      for (int i = i0; i < i1; ++i) {
        if (!occupancy.test(i, j))
          continue;
        double r;
        try {
          r = predict_range_surface(t.coefficients, i, j);
        } catch (const Error& err) {
          throw Error(ErrorCode::kMalformedTuple, err.what());
        }
        if (!std::isfinite(r))
          throw Error(ErrorCode::kMalformedTuple, "non-finite surface range");
        out.fitted_image.set(i, j, r);
      }
  }
  return out;
}

//============================================================================

double
predict_range_plane(const PlaneCoefficients& plane, double theta, double phi)
{
  const double cp = std::cos(phi);
  const double den = plane.a * cp * std::cos(theta) + plane.b * cp * std::sin(theta)
    + plane.c * std::sin(phi);
  if (den == 0)
    throw Error(ErrorCode::kDegeneratePlane, "ray parallel to plane");
  return -plane.d / den;
}

namespace {

// Plane fitting over a range image, with the pixel-center ray directions
// precomputed once per image.
class PlaneModel {
public:
  PlaneModel(const RangeImage& image, const FitConfig& config)
    : image_(image), config_(config)
  {
    const auto& cfg = image.config();
    cos_t_.resize(cfg.width);
    sin_t_.resize(cfg.width);
    for (int i = 0; i < cfg.width; ++i) {
      cos_t_[i] = std::cos(pixel_azimuth(cfg, i));
      sin_t_[i] = std::sin(pixel_azimuth(cfg, i));
    }
    cos_p_.resize(cfg.height);
    sin_p_.resize(cfg.height);
    for (int j = 0; j < cfg.height; ++j) {
      cos_p_[j] = std::cos(pixel_elevation(cfg, j));
      sin_p_[j] = std::sin(pixel_elevation(cfg, j));
    }
  }

  Eigen::Vector3d direction(int i, int j) const
  {
    return {cos_p_[j] * cos_t_[i], cos_p_[j] * sin_t_[i], sin_p_[j]};
  }

  // Total least squares: the normal is the eigenvector of the scatter
  // matrix with the smallest eigenvalue.
  std::optional<PlaneCoefficients> fit(BlockCoord block) const
  {
    const auto e = extent(block);
    std::vector<Eigen::Vector3d> pts;
    for (int j = e.j0; j < e.j1; ++j)
      for (int i = e.i0; i < e.i1; ++i) {
        const double r = image_.at(i, j);
        if (r > 0)
          pts.push_back(r * direction(i, j));
      }
    if (static_cast<int>(pts.size()) < config_.min_points)
      return std::nullopt;

    Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
    for (const auto& p : pts)
      centroid += p;
    centroid /= static_cast<double>(pts.size());
    Eigen::Matrix3d scatter = Eigen::Matrix3d::Zero();
    for (const auto& p : pts)
      scatter += (p - centroid) * (p - centroid).transpose();

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(scatter);
    if (solver.info() != Eigen::Success)
      return std::nullopt;
    // Reject collinear samples: the two largest eigenvalues must both be
    // significant for the normal to be defined.
    const auto& ev = solver.eigenvalues();
    if (!(ev(1) > 1e-12 * ev(2)))
      return std::nullopt;
    const Eigen::Vector3d n = solver.eigenvectors().col(0);
    PlaneCoefficients plane{n.x(), n.y(), n.z(), -n.dot(centroid)};
    if (!accepts(block, plane))
      return std::nullopt;
    return plane;
  }

  bool accepts(BlockCoord block, const PlaneCoefficients& plane) const
  {
    const auto e = extent(block);
    for (int j = e.j0; j < e.j1; ++j)
      for (int i = e.i0; i < e.i1; ++i) {
        const double r = image_.at(i, j);
        if (!(r > 0))
          continue;
        const double rhat = predict(plane, i, j);
        if (!(rhat > 0) || !(std::fabs(r - rhat) < config_.delta_r))
          return false;
      }
    return true;
  }

  double predict(const PlaneCoefficients& plane, int i, int j) const
  {
    const double den = plane.a * cos_p_[j] * cos_t_[i]
      + plane.b * cos_p_[j] * sin_t_[i] + plane.c * sin_p_[j];
    if (den == 0)
      return -1;
    return -plane.d / den;
  }

private:
  BlockExtent extent(BlockCoord block) const
  {
    return extent_of(image_.width(), image_.height(), block, config_.block_size);
  }

  const RangeImage& image_;
  const FitConfig& config_;
  std::vector<double> cos_t_, sin_t_, cos_p_, sin_p_;
};

}  // namespace

ModelFit
fit_with_model(const RangeImage& image, const FitConfig& config, FitModel model)
{
  config.validate();
  ModelFit out;

  if (model == FitModel::kSurface) {
    auto enc = encode_surfaces(image, config);
    auto dec = decode_surfaces(enc.tuples, image.occupancy(), image.config(),
                               config.block_size);
    out.fitted = std::move(dec.fitted);
    out.predicted = std::move(dec.fitted_image);
    out.runs = enc.tuples.size();
    return out;
  }

  const int b = config.block_size;
  const BlockGrid grid(image, b);
  const ShapeMask occupancy = image.occupancy();
  const PlaneModel plane_model(image, config);
  out.fitted = ShapeMask(image.width(), image.height());
  out.predicted = RangeImage(image.config());

  merge_runs<PlaneCoefficients>(
    grid,
    [&](BlockCoord blk) { return plane_model.fit(blk); },
    [&](BlockCoord blk, const PlaneCoefficients& p) {
      return plane_model.accepts(blk, p);
    },
    [&](int br, int bc, int len, const PlaneCoefficients& p) {
      ++out.runs;
      const int j0 = br * b, j1 = std::min(image.height(), j0 + b);
      const int i0 = bc * b, i1 = std::min(image.width(), (bc + len) * b);
      for (int j = j0; j < j1; ++j)
        for (int i = i0; i < i1; ++i)
          if (occupancy.test(i, j)) {
            out.fitted.set(i, j);
            out.predicted.set(i, j, plane_model.predict(p, i, j));
          }
    });
  return out;
}

}  // namespace rcpcc
