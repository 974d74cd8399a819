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

#include "rcpcc/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>

#include "rcpcc/io.hpp"

namespace rcpcc::synth {

namespace {

constexpr double kSensorHeight = 1.73;
constexpr int kBeams = 64;
constexpr int kAzimuthBins = 360;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Ray {
  double dx, dy, dz;
};

struct Hit {
  double t = kInf;
  double cos_incidence = 1;
  double reflectivity = 0;
  double extra_noise = 0;
};

enum class Shape { kBox, kCylinder, kSphere };

struct Prim {
  Shape shape = Shape::kBox;
  // Box: center (cx, cy), half extents (hx, hy), z range, yaw.
  // Cylinder: center (cx, cy), radius hx, z range.
  // Sphere: center (cx, cy, z0), radius hx.
  double cx = 0, cy = 0, hx = 0, hy = 0, z0 = 0, z1 = 0, yaw = 0;
  double reflectivity = 0.4;
  double mean_free_path = 0;  // > 0 makes the volume porous (foliage)
  double extra_noise = 0;

  double bound_radius() const
  {
    return shape == Shape::kBox ? std::hypot(hx, hy) : hx;
  }
};

// Entry/exit distances of the ray with the primitive, or false on a miss.
bool
intersect(const Prim& p, const Ray& r, double& t_in, double& t_out, double& cos_inc)
{
  switch (p.shape) {
  case Shape::kBox: {
    const double c = std::cos(p.yaw), s = std::sin(p.yaw);
    // Ray origin is the sensor at (0, 0, 0); express it in the box frame.
    const double ox = c * -p.cx + s * -p.cy, oy = -s * -p.cx + c * -p.cy;
    const double dx = c * r.dx + s * r.dy, dy = -s * r.dx + c * r.dy;
    const std::array<double, 3> o{ox, oy, 0.0};
    const std::array<double, 3> d{dx, dy, r.dz};
    const std::array<double, 3> lo{-p.hx, -p.hy, p.z0};
    const std::array<double, 3> hi{p.hx, p.hy, p.z1};
    double a = 0, b = kInf;
    int axis = -1;
    for (int k = 0; k < 3; ++k) {
      if (std::fabs(d[k]) < 1e-12) {
        if (o[k] < lo[k] || o[k] > hi[k])
          return false;
        continue;
      }
      double t0 = (lo[k] - o[k]) / d[k], t1 = (hi[k] - o[k]) / d[k];
      if (t0 > t1)
        std::swap(t0, t1);
      if (t0 > a) {
        a = t0;
        axis = k;
      }
      b = std::min(b, t1);
      if (a > b)
        return false;
    }
    if (axis < 0)
      return false;
    t_in = a;
    t_out = b;
    cos_inc = std::fabs(d[axis]);
    return true;
  }
  case Shape::kCylinder: {
    const double a = r.dx * r.dx + r.dy * r.dy;
    if (a < 1e-12)
      return false;
    const double bh = -(r.dx * p.cx + r.dy * p.cy);
    const double c = p.cx * p.cx + p.cy * p.cy - p.hx * p.hx;
    const double disc = bh * bh - a * c;
    if (disc < 0 || c < 0)
      return false;
    const double sq = std::sqrt(disc);
    const double t = (-bh - sq) / a;
    if (t <= 0)
      return false;
    const double z = t * r.dz;
    if (z < p.z0 || z > p.z1)
      return false;
    t_in = t;
    t_out = (-bh + sq) / a;
    const double nx = (t * r.dx - p.cx) / p.hx, ny = (t * r.dy - p.cy) / p.hx;
    cos_inc = std::fabs(nx * r.dx + ny * r.dy);
    return true;
  }
  case Shape::kSphere: {
    const double bh = -(r.dx * p.cx + r.dy * p.cy + r.dz * p.z0);
    const double c = p.cx * p.cx + p.cy * p.cy + p.z0 * p.z0 - p.hx * p.hx;
    const double disc = bh * bh - c;
    if (disc < 0 || c < 0)
      return false;
    const double sq = std::sqrt(disc);
    t_in = -bh - sq;
    t_out = -bh + sq;
    if (t_in <= 0)
      return false;
    const double nx = t_in * r.dx - p.cx, ny = t_in * r.dy - p.cy, nz = t_in * r.dz - p.z0;
    cos_inc = std::fabs(nx * r.dx + ny * r.dy + nz * r.dz) / p.hx;
    return true;
  }
  }
  return false;
}

// Smooth lattice value noise in [-1, 1] with unit cell size.
double
value_noise(std::uint64_t seed, double x, double y)
{
  auto lattice = [seed](std::int64_t i, std::int64_t j) {
    std::uint64_t h = seed ^ (static_cast<std::uint64_t>(i) * 0x9e3779b97f4a7c15ull)
      ^ (static_cast<std::uint64_t>(j) * 0xc2b2ae3d27d4eb4full);
    h ^= h >> 31;
    h *= 0xbf58476d1ce4e5b9ull;
    h ^= h >> 29;
    return static_cast<double>(h >> 11) * 0x1.0p-52 - 1.0;
  };
  const double fx = std::floor(x), fy = std::floor(y);
  const auto i = static_cast<std::int64_t>(fx), j = static_cast<std::int64_t>(fy);
  double u = x - fx, v = y - fy;
  u = u * u * (3 - 2 * u);
  v = v * v * (3 - 2 * v);
  const double a = lattice(i, j) + u * (lattice(i + 1, j) - lattice(i, j));
  const double b = lattice(i, j + 1) + u * (lattice(i + 1, j + 1) - lattice(i, j + 1));
  return a + v * (b - a);
}

struct Scene {
  double ground_a = 0, ground_b = 0;  // z = -h + a x + b y + undulation
  std::uint64_t terrain_seed = 0;
  double heading = 0, lane = 0, half_road = 0;
  std::vector<Prim> prims;
  std::array<std::vector<int>, kAzimuthBins> bins;

  double ground_height(double x, double y) const
  {
    return -kSensorHeight + ground_a * x + ground_b * y
      + 0.15 * value_noise(terrain_seed, x / 15.0, y / 15.0)
      - 0.15 * value_noise(terrain_seed, 0.0, 0.0);
  }

  // Distance across the road axis, meters.
  double road_offset(double x, double y) const
  {
    return -std::sin(heading) * x + std::cos(heading) * y + lane;
  }

  // Small-scale roughness: asphalt is nearly flat, verges are grass.
  double roughness(double x, double y) const
  {
    const double amp = std::fabs(road_offset(x, y)) < half_road ? 0.006 : 0.05;
    return amp * (value_noise(terrain_seed + 1, x / 0.4, y / 0.4)
                  + 0.5 * value_noise(terrain_seed + 2, x / 0.13, y / 0.13));
  }

  void index()
  {
    for (int k = 0; k < static_cast<int>(prims.size()); ++k) {
      const auto& p = prims[k];
      const double d = std::hypot(p.cx, p.cy);
      const double rad = p.bound_radius() + 0.05;
      if (d <= rad) {
        for (auto& b : bins)
          b.push_back(k);
        continue;
      }
      const double centre = rad_to_deg(std::atan2(p.cy, p.cx));
      const double half = rad_to_deg(std::asin(rad / d));
      const int lo = static_cast<int>(std::floor(centre - half));
      const int hi = static_cast<int>(std::floor(centre + half));
      for (int b = lo; b <= hi; ++b)
        bins[((b % kAzimuthBins) + kAzimuthBins) % kAzimuthBins].push_back(k);
    }
  }
};

class SceneBuilder {
public:
  explicit SceneBuilder(std::uint64_t seed) : rng_(seed) {}

  Scene build()
  {
    Scene s;
    s.ground_a = uni(-0.008, 0.008);
    s.ground_b = uni(-0.008, 0.008);
    s.terrain_seed = rng_();
    heading_ = uni(0, 2 * std::numbers::pi);
    lane_ = uni(-2.5, 2.5);
    const double half_road = uni(4.0, 7.5);
    s.heading = heading_;
    s.lane = lane_;
    s.half_road = half_road;
    const double walk = uni(2.0, 4.0);
    const double g = -kSensorHeight;

    for (int side : {-1, 1}) {
      const double edge = side * half_road;
      // Curb and sidewalk slab.
      add_box(s, 0, edge + side * walk / 2, 130, walk / 2, g - 1, g + 0.13, 0, 0.3);

      // Parked cars.
      for (double u = -70; u < 70; u += uni(5.5, 9.0))
        if (chance(0.55))
          add_car(s, u, edge - side * uni(1.0, 1.3), uni(-0.05, 0.05));

      // Trees, poles, pedestrians on the sidewalk.
      for (double u = -90 + uni(0, 10); u < 90; u += uni(7, 16)) {
        const double v = edge + side * (walk - uni(0.5, 1.0));
        if (chance(0.6))
          add_tree(s, u, v);
      }
      for (double u = -100 + uni(0, 30); u < 100; u += uni(25, 40))
        add_cylinder(s, u, edge + side * 0.4, 0.12, g, g + 7.5, 0.5, 0.0);
      for (int k = 0, n = static_cast<int>(uni(0, 4)); k < n; ++k)
        add_cylinder(s, uni(-30, 30), edge + side * uni(0.8, walk - 0.3), 0.28,
                     g + 0.13, g + uni(1.5, 1.9), 0.35, 0.01);

      // Street furniture: bins, signs, bikes, bollards.
      for (double u = -60 + uni(0, 5); u < 60; u += uni(3, 9)) {
        const double v = edge + side * uni(0.3, walk - 0.3);
        const double w = uni(0.15, 0.6), h = uni(0.5, 2.2);
        add_box(s, u, v, w, uni(0.1, 0.5), g, g + 0.13 + h, uni(-0.8, 0.8), uni(0.2, 0.8));
      }

      // Building row (or hedges and open lots).
      const double front = edge + side * walk;
      for (double u = -130; u < 130;) {
        const double length = uni(8, 35);
        const double setback = chance(0.3) ? uni(0.0, 0.3) : uni(1, 5);
        if (chance(0.8)) {
          const double depth = uni(8, 16);
          const double height = uni(5, 22);
          const double yaw = uni(-0.05, 0.05);
          const double refl = uni(0.25, 0.6);
          // Facade split into segments with recesses and bays.
          for (double a = 0; a < length;) {
            const double seg = std::min(length - a, uni(2.5, 9));
            const double inset = chance(0.4) ? uni(-0.6, 0.6) : 0.0;
            add_box(s, u + a + seg / 2, front + side * (setback + inset + depth / 2),
                    seg / 2, depth / 2, g - 1, height + g + (chance(0.3) ? uni(-3, 3) : 0),
                    yaw, refl * uni(0.7, 1.3));
            if (chance(0.25))
              add_box(s, u + a + seg / 2, front + side * (setback + inset - 0.5), seg * 0.4,
                      0.5, g + uni(2.5, 4), g + uni(4.5, 5.5), yaw, refl);
            a += seg;
          }
          for (int b = 0, n = static_cast<int>(uni(0, 4)); b < n; ++b)
            add_bush(s, u + uni(0, length), front + side * uni(0.3, std::max(0.4, setback)));
        } else {
          Prim hedge;
          hedge.shape = Shape::kBox;
          place(hedge, u + length / 2, front + side * (setback / 2 + 0.6));
          hedge.hx = length / 2;
          hedge.hy = 0.6;
          hedge.z0 = g - 1;
          hedge.z1 = g + uni(0.8, 1.8);
          hedge.yaw = heading_;
          hedge.reflectivity = 0.15;
          hedge.mean_free_path = 0.4;
          hedge.extra_noise = 0.03;
          s.prims.push_back(hedge);
        }
        u += length + (chance(0.25) ? uni(4, 15) : uni(0, 2));
      }
    }
    // Moving traffic.
    for (int k = 0, n = static_cast<int>(uni(0, 5)); k < n; ++k) {
      const double u = uni(-60, 60);
      if (std::fabs(u) < 4)
        continue;
      add_car(s, u, uni(-half_road + 1.5, half_road - 1.5), uni(-0.1, 0.1));
    }
    s.index();
    return s;
  }

private:
  double uni(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }
  bool chance(double p) { return uni(0, 1) < p; }

  // Road frame (u along, v across) to sensor frame.
  void place(Prim& p, double u, double v) const
  {
    const double vv = v - lane_;
    p.cx = std::cos(heading_) * u - std::sin(heading_) * vv;
    p.cy = std::sin(heading_) * u + std::cos(heading_) * vv;
  }

  void add_box(Scene& s, double u, double v, double hu, double hv, double z0, double z1,
               double yaw, double refl)
  {
    Prim p;
    p.shape = Shape::kBox;
    place(p, u, v);
    p.hx = hu;
    p.hy = hv;
    p.z0 = z0;
    p.z1 = z1;
    p.yaw = heading_ + yaw;
    p.reflectivity = refl;
    s.prims.push_back(p);
  }

  void add_cylinder(Scene& s, double u, double v, double radius, double z0, double z1,
                    double refl, double extra_noise)
  {
    Prim p;
    p.shape = Shape::kCylinder;
    place(p, u, v);
    p.hx = radius;
    p.z0 = z0;
    p.z1 = z1;
    p.reflectivity = refl;
    p.extra_noise = extra_noise;
    s.prims.push_back(p);
  }

  void add_car(Scene& s, double u, double v, double yaw)
  {
    if (std::hypot(u, v - lane_) < 3.5)
      return;
    const double g = -kSensorHeight;
    const double len = uni(3.9, 4.8), wid = uni(1.7, 1.9), roof = uni(1.4, 1.7);
    const double refl = uni(0.3, 0.9);
    add_box(s, u, v, len / 2, wid / 2, g + 0.25, g + 0.95, yaw, refl);
    add_box(s, u - 0.2, v, len * 0.27, wid / 2 - 0.1, g + 0.95, g + roof, yaw, refl * 0.5);
    for (double du : {-len * 0.33, len * 0.33})
      add_box(s, u + du, v, 0.33, wid / 2 - 0.05, g, g + 0.3, yaw, 0.05);
  }

  void add_bush(Scene& s, double u, double v)
  {
    Prim bush;
    bush.shape = Shape::kSphere;
    place(bush, u, v);
    bush.hx = uni(0.5, 1.3);
    bush.z0 = -kSensorHeight + bush.hx * 0.5;
    bush.reflectivity = 0.2;
    bush.mean_free_path = uni(0.2, 0.6);
    bush.extra_noise = 0.04;
    s.prims.push_back(bush);
  }

  void add_tree(Scene& s, double u, double v)
  {
    const double g = -kSensorHeight;
    const double trunk_h = uni(2.2, 3.5);
    add_cylinder(s, u, v, uni(0.12, 0.3), g, g + trunk_h + 0.5, 0.3, 0.005);
    Prim crown;
    crown.shape = Shape::kSphere;
    place(crown, u, v);
    crown.hx = uni(1.4, 3.0);
    crown.z0 = g + trunk_h + crown.hx * 0.7;
    crown.reflectivity = 0.2;
    crown.mean_free_path = uni(0.3, 0.9);
    crown.extra_noise = 0.05;
    s.prims.push_back(crown);
  }

  std::mt19937_64 rng_;
  double heading_ = 0;
  double lane_ = 0;
};

struct BeamLayout {
  std::array<double, kBeams> elevation{};
  std::array<double, kBeams> azimuth_offset{};
  std::array<double, kBeams> range_bias{};
};

const BeamLayout&
hdl64_layout()
{
  static const BeamLayout layout = [] {
    BeamLayout b;
    std::mt19937_64 cal(0x64e64e64ull);
    std::uniform_real_distribution<double> jitter(-0.02, 0.02), offset(-0.09, 0.09);
    std::normal_distribution<double> bias(0.0, 0.015);
    for (int k = 0; k < kBeams; ++k) {
      const double e = k < 32 ? 2.0 - k * (10.33 / 31) : -8.83 - (k - 32) * (15.5 / 31);
      b.elevation[k] = deg_to_rad(e + jitter(cal));
      b.azimuth_offset[k] = deg_to_rad(offset(cal));
      b.range_bias[k] = bias(cal);
    }
    return b;
  }();
  return layout;
}

}  // namespace

PointCloud
street_scan(std::uint64_t seed, const ScanOptions& options)
{
  if (options.azimuth_steps <= 0 || !(options.max_range > options.min_range))
    throw Error(ErrorCode::kInvalidArgument, "bad scan options");
  const Scene scene = SceneBuilder(seed).build();
  const BeamLayout& beams = hdl64_layout();
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double start = unit(rng) * 2 * std::numbers::pi;

  PointCloud cloud;
  cloud.reserve(static_cast<std::size_t>(kBeams) * options.azimuth_steps);
  for (int a = 0; a < options.azimuth_steps; ++a) {
    const double base = start + 2 * std::numbers::pi * a / options.azimuth_steps;
    for (int k = 0; k < kBeams; ++k) {
      const double az = base + beams.azimuth_offset[k];
      const double el = beams.elevation[k];
      const Ray ray{std::cos(el) * std::cos(az), std::cos(el) * std::sin(az), std::sin(el)};

      Hit hit;
      const double denom = ray.dz - scene.ground_a * ray.dx - scene.ground_b * ray.dy;
      if (denom < -1e-9) {
        double t = -kSensorHeight / denom;
        for (int it = 0; it < 6 && t < 2 * options.max_range; ++it)
          t = scene.ground_height(t * ray.dx, t * ray.dy) / ray.dz;
        const double dz = std::max(-ray.dz, 0.06);
        hit.t = t - scene.roughness(t * ray.dx, t * ray.dy) / dz;
        hit.cos_incidence = -denom;
        hit.reflectivity = 0.25;
        hit.extra_noise = 0.005;
      }
      double deg = std::fmod(rad_to_deg(az), 360.0);
      if (deg < 0)
        deg += 360.0;
      const int bin = std::min(kAzimuthBins - 1, static_cast<int>(deg));
      for (int idx : scene.bins[bin]) {
        const Prim& p = scene.prims[idx];
        double t_in = 0, t_out = 0, cos_inc = 1;
        if (!intersect(p, ray, t_in, t_out, cos_inc) || t_in >= hit.t)
          continue;
        double t = t_in;
        if (p.mean_free_path > 0) {
          t = t_in - p.mean_free_path * std::log1p(-unit(rng));
          if (t > t_out || t >= hit.t)
            continue;
          cos_inc = 0.5 + 0.5 * unit(rng);
        }
        hit.t = t;
        hit.cos_incidence = cos_inc;
        hit.reflectivity = p.reflectivity;
        hit.extra_noise = p.extra_noise;
      }
      if (!std::isfinite(hit.t))
        continue;
      const double sigma = options.noise_sigma + hit.extra_noise;
      const double r = hit.t + beams.range_bias[k] + sigma * gauss(rng);
      const double far_drop = std::clamp((r - 60.0) / (options.max_range - 60.0), 0.0, 1.0);
      if (unit(rng) < options.dropout + 0.5 * far_drop * (1.0 - hit.reflectivity))
        continue;
      if (r < options.min_range || r > options.max_range)
        continue;
      const double inten = std::clamp(
        hit.reflectivity * (0.3 + 0.7 * hit.cos_incidence) + 0.02 * gauss(rng), 0.0, 1.0);
      cloud.push_back({r * ray.dx, r * ray.dy, r * ray.dz, static_cast<float>(inten)});
    }
  }
  return cloud;
}

std::vector<std::filesystem::path>
write_street_dataset(const std::filesystem::path& dir, int count, std::uint64_t first_seed,
                     const ScanOptions& options)
{
  if (count < 0)
    throw Error(ErrorCode::kInvalidArgument, "negative frame count");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec)
    throw Error(ErrorCode::kIo, "cannot create " + dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> out;
  for (int k = 0; k < count; ++k) {
    char name[32];
    std::snprintf(name, sizeof name, "%06d.bin", k);
    out.push_back(dir / name);
    write_kitti_bin(out.back(), street_scan(first_seed + static_cast<std::uint64_t>(k), options));
  }
  return out;
}

}  // namespace rcpcc::synth
