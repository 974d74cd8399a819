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

#include "rcpcc/io.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

namespace rcpcc {

namespace fs = std::filesystem;

namespace {

float
load_f32le(const unsigned char* p)
{
  const std::uint32_t u = static_cast<std::uint32_t>(p[0])
    | static_cast<std::uint32_t>(p[1]) << 8 | static_cast<std::uint32_t>(p[2]) << 16
    | static_cast<std::uint32_t>(p[3]) << 24;
  return std::bit_cast<float>(u);
}

void
store_f32le(float v, char* p)
{
  const auto u = std::bit_cast<std::uint32_t>(v);
  for (int b = 0; b < 4; ++b)
    p[b] = static_cast<char>(u >> (8 * b));
}

std::string
lower_ext(const fs::path& p)
{
  auto ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext;
}

}  // namespace

PointCloud
read_kitti_bin(const fs::path& path)
{
  std::ifstream is(path, std::ios::binary);
  if (!is)
    throw Error(ErrorCode::kIo, "cannot open " + path.string());
  const std::vector<unsigned char> data((std::istreambuf_iterator<char>(is)),
                                        std::istreambuf_iterator<char>());
  if (data.size() % 16 != 0)
    throw Error(ErrorCode::kIo, path.string() + ": size " + std::to_string(data.size())
                                  + " is not a multiple of 16 bytes");
  PointCloud cloud(data.size() / 16);
  for (std::size_t k = 0; k < cloud.size(); ++k) {
    const unsigned char* p = data.data() + 16 * k;
    cloud[k] = {load_f32le(p), load_f32le(p + 4), load_f32le(p + 8), load_f32le(p + 12)};
  }
  return cloud;
}

void
write_kitti_bin(const fs::path& path, const PointCloud& cloud)
{
  std::vector<char> data(cloud.size() * 16);
  for (std::size_t k = 0; k < cloud.size(); ++k) {
    char* p = data.data() + 16 * k;
    store_f32le(static_cast<float>(cloud[k].x), p);
    store_f32le(static_cast<float>(cloud[k].y), p + 4);
    store_f32le(static_cast<float>(cloud[k].z), p + 8);
    store_f32le(cloud[k].intensity, p + 12);
  }
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os)
    throw Error(ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  os.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!os)
    throw Error(ErrorCode::kIo, "write failed: " + path.string());
}

PointCloud
read_xyz(const fs::path& path)
{
  std::ifstream is(path);
  if (!is)
    throw Error(ErrorCode::kIo, "cannot open " + path.string());
  PointCloud cloud;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.resize(hash);
    std::istringstream ls(line);
    Point3 p;
    if (!(ls >> p.x)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos)
        continue;
      throw Error(ErrorCode::kIo, path.string() + ":" + std::to_string(lineno)
                                    + ": expected 'x y z [intensity]'");
    }
    if (!(ls >> p.y >> p.z))
      throw Error(ErrorCode::kIo, path.string() + ":" + std::to_string(lineno)
                                    + ": expected 'x y z [intensity]'");
    double intensity = 0;
    if (ls >> intensity)
      p.intensity = static_cast<float>(intensity);
    cloud.push_back(p);
  }
  return cloud;
}

void
write_xyz(const fs::path& path, const PointCloud& cloud)
{
  std::ofstream os(path, std::ios::trunc);
  if (!os)
    throw Error(ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  os.precision(9);
  for (const auto& p : cloud)
    os << p.x << ' ' << p.y << ' ' << p.z << ' ' << p.intensity << '\n';
  if (!os)
    throw Error(ErrorCode::kIo, "write failed: " + path.string());
}

PointCloud
read_point_cloud(const fs::path& path)
{
  const auto ext = lower_ext(path);
  if (ext == ".bin")
    return read_kitti_bin(path);
  if (ext == ".xyz" || ext == ".txt")
    return read_xyz(path);
  throw Error(ErrorCode::kIo, "unsupported point cloud format: " + path.string());
}

std::vector<fs::path>
list_frames(const fs::path& input)
{
  std::error_code ec;
  if (!fs::exists(input, ec))
    throw Error(ErrorCode::kIo, "no such file or directory: " + input.string());
  if (!fs::is_directory(input, ec))
    return {input};

  std::vector<fs::path> frames;
  for (const auto& entry : fs::directory_iterator(input)) {
    if (!entry.is_regular_file())
      continue;
    const auto ext = lower_ext(entry.path());
    if (ext == ".bin" || ext == ".xyz" || ext == ".txt")
      frames.push_back(entry.path());
  }
  std::sort(frames.begin(), frames.end());
  return frames;
}

}  // namespace rcpcc
