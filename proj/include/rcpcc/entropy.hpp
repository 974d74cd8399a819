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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace rcpcc {

/// Lossless back end applied to the serialized frame sections. The coded
/// stream starts with a one-byte backend tag, so any decoder handles any
/// backend.
enum class EntropyBackend : std::uint8_t {
  kIdentity = 0,
  kDeflate = 1,  // zlib
  kLzma = 2,     // raw LZMA2 (liblzma)
};

struct EntropyConfig {
  EntropyBackend backend = EntropyBackend::kLzma;
  int level = 6;  // backend specific: zlib 0-9, lzma preset 0-9
};

EntropyBackend parse_entropy_backend(const std::string& name);
const char* to_string(EntropyBackend backend);

std::vector<std::uint8_t> entropy_encode(std::span<const std::uint8_t> raw,
                                         const EntropyConfig& config = {});

/// Throws CorruptStream on undecodable input or when the declared size
/// exceeds `max_output`.
std::vector<std::uint8_t> entropy_decode(std::span<const std::uint8_t> coded,
                                         std::size_t max_output);

}  // namespace rcpcc
