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

#include <cstdint>
#include <filesystem>
#include <vector>

#include "rcpcc/common.hpp"

namespace rcpcc::synth {

/// Ray-cast scan of a procedural street scene with a Velodyne HDL-64E style
/// beam layout (64 lasers, +2 to -24.3 deg, sensor 1.73 m above ground).
/// Used where real KITTI frames are unavailable; deterministic per seed.
struct ScanOptions {
  int azimuth_steps = 2048;
  double noise_sigma = 0.02;  // meters, 1 sigma range noise
  double min_range = 2.5;
  double max_range = 120.0;
  double dropout = 0.02;  // probability a valid return is missing
};

PointCloud street_scan(std::uint64_t seed, const ScanOptions& options = {});

/// Writes `count` scans as KITTI .bin files named 000000.bin, ... into `dir`
/// using seeds first_seed, first_seed + 1, ...
std::vector<std::filesystem::path>
write_street_dataset(const std::filesystem::path& dir, int count,
                     std::uint64_t first_seed = 0, const ScanOptions& options = {});

}  // namespace rcpcc::synth
