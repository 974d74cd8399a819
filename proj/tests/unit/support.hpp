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

#include <cmath>
#include <algorithm>
#include <array>
#include <random>
#include <vector>

#include "rcpcc/range_image.hpp"

namespace rcpcc::test {

using Rng = std::mt19937_64;

inline double
uniform(Rng& rng, double a, double b)
{
  return std::uniform_real_distribution<double>(a, b)(rng);
}

inline int
uniform_int(Rng& rng, int a, int b)
{
  return std::uniform_int_distribution<int>(a, b)(rng);
}

/// Random mask with roughly `density` of the cells set.
inline ShapeMask
random_mask(Rng& rng, int w, int h, double density)
{
  ShapeMask m(w, h);
  for (int j = 0; j < h; ++j)
    for (int i = 0; i < w; ++i)
      if (uniform(rng, 0, 1) < density)
        m.set(i, j);
  return m;
}

/// Small range image built from a few inverse-range planes, noise and holes.
inline RangeImage
random_range_image(Rng& rng, const ProjectionConfig& cfg, double hole_rate = 0.2,
                   double noise = 0.05)
{
  RangeImage img(cfg);
  const int patches = uniform_int(rng, 1, 4);
  std::vector<std::array<double, 4>> planes;  // split column, alpha, beta, gamma
  for (int p = 0; p < patches; ++p)
    planes.push_back({uniform(rng, 0, cfg.width), uniform(rng, -2e-4, 2e-4),
                      uniform(rng, -2e-3, 2e-3), uniform(rng, 0.03, 0.3)});
  std::normal_distribution<double> gauss(0.0, noise);
  for (int j = 0; j < cfg.height; ++j)
    for (int i = 0; i < cfg.width; ++i) {
      if (uniform(rng, 0, 1) < hole_rate)
        continue;
      const auto* pl = &planes[0];
      for (const auto& p : planes)
        if (i >= p[0])
          pl = &p;
      double inv = (*pl)[1] * i + (*pl)[2] * j + (*pl)[3];
      inv = std::max(inv, 0.008);
      double r = 1.0 / inv + gauss(rng);
      if (uniform(rng, 0, 1) < 0.03)
        r = uniform(rng, 2, 80);
      img.set(i, j, std::max(r, 0.5));
    }
  return img;
}

/// Config with explicit offsets and sizes (degrees in, radians stored).
inline ProjectionConfig
make_config(double dt_deg, double dp_deg, double h_off_deg, double v_off_deg, int w, int h)
{
  ProjectionConfig c;
  c.delta_theta = deg_to_rad(dt_deg);
  c.delta_phi = deg_to_rad(dp_deg);
  c.h_offset = deg_to_rad(h_off_deg);
  c.v_offset = deg_to_rad(v_off_deg);
  c.width = w;
  c.height = h;
  return c;
}

}  // namespace rcpcc::test
