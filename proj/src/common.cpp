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

#include "rcpcc/common.hpp"

namespace rcpcc {

const char* to_string(ErrorCode code)
{
  switch (code) {
  case ErrorCode::kInvalidArgument: return "InvalidArgument";
  case ErrorCode::kIo: return "Io";
  case ErrorCode::kNoFit: return "NoFit";
  case ErrorCode::kNonPositiveDenominator: return "NonPositiveDenominator";
  case ErrorCode::kDegeneratePlane: return "DegeneratePlane";
  case ErrorCode::kMalformedTuple: return "MalformedTuple";
  case ErrorCode::kShapeMismatch: return "ShapeMismatch";
  case ErrorCode::kInconsistentShape: return "InconsistentShape";
  case ErrorCode::kBadMagic: return "BadMagic";
  case ErrorCode::kUnsupportedVersion: return "UnsupportedVersion";
  case ErrorCode::kCorruptStream: return "CorruptStream";
  case ErrorCode::kConfigMismatch: return "ConfigMismatch";
  case ErrorCode::kLinkClosed: return "LinkClosed";
  }
  return "Unknown";
}

}  // namespace rcpcc
