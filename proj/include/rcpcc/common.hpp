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

#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace rcpcc {

enum class ErrorCode {
  kInvalidArgument,
  kIo,
  kNoFit,
  kNonPositiveDenominator,
  kDegeneratePlane,
  kMalformedTuple,
  kShapeMismatch,
  kInconsistentShape,
  kBadMagic,
  kUnsupportedVersion,
  kCorruptStream,
  kConfigMismatch,
  kLinkClosed,
};

const char* to_string(ErrorCode code);

/// Every recoverable failure in the library is reported as an Error carrying
/// a machine-readable code.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what)
    , code_(code)
  {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

struct Point3 {
  double x = 0;
  double y = 0;
  double z = 0;
  float intensity = 0;
};

using PointCloud = std::vector<Point3>;

constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

}  // namespace rcpcc
