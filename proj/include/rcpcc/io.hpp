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

#include <filesystem>
#include <vector>

#include "rcpcc/common.hpp"

namespace rcpcc {

/// KITTI velodyne .bin: little-endian float32 (x, y, z, intensity) records.
/// Throws Io when unreadable or when the size is not a multiple of 16.
PointCloud read_kitti_bin(const std::filesystem::path& path);
void write_kitti_bin(const std::filesystem::path& path, const PointCloud& cloud);

/// Whitespace-separated "x y z [intensity]" per line; '#' starts a comment.
PointCloud read_xyz(const std::filesystem::path& path);
void write_xyz(const std::filesystem::path& path, const PointCloud& cloud);

/// Dispatches on extension: .bin or .xyz/.txt.
PointCloud read_point_cloud(const std::filesystem::path& path);

/// A file yields itself; a directory yields its .bin/.xyz/.txt files sorted
/// by name.
std::vector<std::filesystem::path> list_frames(const std::filesystem::path& input);

}  // namespace rcpcc
