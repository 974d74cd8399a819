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

#include <doctest.h>

#include <filesystem>
#include <fstream>

#include <unistd.h>

#include "rcpcc/io.hpp"

using namespace rcpcc;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir()
  {
    path = fs::temp_directory_path() / ("rcpcc_io_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("kitti bin files round trip at float precision")
{
  TempDir dir;
  const PointCloud cloud{{1.5, -2.25, 0.125, 0.5f}, {10, 20, -1.73, 0.0f}};
  write_kitti_bin(dir.path / "a.bin", cloud);
  CHECK(fs::file_size(dir.path / "a.bin") == 32);
  const auto back = read_kitti_bin(dir.path / "a.bin");
  REQUIRE(back.size() == 2);
  CHECK(back[0].x == 1.5);
  CHECK(back[0].intensity == 0.5f);
  CHECK(back[1].z == static_cast<float>(-1.73));
}

TEST_CASE("bad kitti sizes are I/O errors")
{
  TempDir dir;
  std::ofstream(dir.path / "bad.bin", std::ios::binary) << "12345";
  try {
    read_kitti_bin(dir.path / "bad.bin");
    FAIL("expected Io");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kIo);
  }
  CHECK_THROWS_AS(read_kitti_bin(dir.path / "missing.bin"), Error);
}

TEST_CASE("xyz text files")
{
  TempDir dir;
  std::ofstream(dir.path / "p.xyz") << "# comment\n1 2 3\n\n4 5 6 0.7\n";
  const auto c = read_point_cloud(dir.path / "p.xyz");
  REQUIRE(c.size() == 2);
  CHECK(c[1].z == 6.0);
  CHECK(c[1].intensity == doctest::Approx(0.7));
  std::ofstream(dir.path / "q.xyz") << "1 2\n";
  CHECK_THROWS_AS(read_xyz(dir.path / "q.xyz"), Error);
  write_xyz(dir.path / "r.xyz", c);
  CHECK(read_xyz(dir.path / "r.xyz").size() == 2);
}

TEST_CASE("frame listing sorts and filters")
{
  TempDir dir;
  for (const char* n : {"000002.bin", "000001.bin", "notes.md", "000003.xyz"})
    std::ofstream(dir.path / n) << "";
  const auto frames = list_frames(dir.path);
  REQUIRE(frames.size() == 3);
  CHECK(frames[0].filename() == "000001.bin");
  CHECK(frames[2].filename() == "000003.xyz");
  CHECK(list_frames(dir.path / "000001.bin").size() == 1);
  CHECK_THROWS_AS(list_frames(dir.path / "nope"), Error);
  CHECK_THROWS_AS(read_point_cloud(dir.path / "notes.md"), Error);
}
