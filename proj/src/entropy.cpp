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

#include "rcpcc/entropy.hpp"

#include <lzma.h>
#include <zlib.h>

#include <algorithm>
#include <bit>
#include <cstring>

#include "rcpcc/common.hpp"

// Coded layout: tag u8 | raw_size u32le | backend data
//   deflate: zlib stream
//   lzma:    preset u8 | dict_log2 u8 | raw LZMA2 stream

namespace rcpcc {

namespace {

constexpr std::size_t kPrefix = 5;

[[noreturn]] void
corrupt(const std::string& what)
{
  throw Error(ErrorCode::kCorruptStream, what);
}

void
put_prefix(std::vector<std::uint8_t>& out, EntropyBackend backend, std::size_t size)
{
  if (size > 0xffffffffu)
    throw Error(ErrorCode::kInvalidArgument, "entropy input larger than 4 GiB");
  out.push_back(static_cast<std::uint8_t>(backend));
  for (int b = 0; b < 4; ++b)
    out.push_back(static_cast<std::uint8_t>(size >> (8 * b)));
}

lzma_options_lzma
lzma_options(int preset, int dict_log2)
{
  lzma_options_lzma opt;
  if (lzma_lzma_preset(&opt, static_cast<std::uint32_t>(preset)))
    corrupt("bad lzma preset");
  opt.dict_size = 1u << dict_log2;
  return opt;
}

std::vector<std::uint8_t>
lzma_encode(std::span<const std::uint8_t> raw, int preset)
{
  // A dictionary larger than the input buys nothing and costs allocation.
  int dict_log2 = 12;
  while (dict_log2 < 26 && (std::size_t{1} << dict_log2) < raw.size())
    ++dict_log2;
  lzma_options_lzma opt = lzma_options(preset, dict_log2);
  lzma_filter filters[] = {{LZMA_FILTER_LZMA2, &opt},
                           {LZMA_VLI_UNKNOWN, nullptr}};

  std::vector<std::uint8_t> out;
  put_prefix(out, EntropyBackend::kLzma, raw.size());
  out.push_back(static_cast<std::uint8_t>(preset));
  out.push_back(static_cast<std::uint8_t>(dict_log2));
  const std::size_t header = out.size();
  out.resize(header + raw.size() + raw.size() / 16 + 256);
  std::size_t pos = header;
  const lzma_ret ret = lzma_raw_buffer_encode(filters, nullptr, raw.data(), raw.size(),
                                              out.data(), &pos, out.size());
  if (ret != LZMA_OK)
    throw Error(ErrorCode::kInvalidArgument, "lzma encode failed");
  out.resize(pos);
  return out;
}

std::vector<std::uint8_t>
deflate_encode(std::span<const std::uint8_t> raw, int level)
{
  std::vector<std::uint8_t> out;
  put_prefix(out, EntropyBackend::kDeflate, raw.size());
  uLongf bound = compressBound(static_cast<uLong>(raw.size()));
  const std::size_t header = out.size();
  out.resize(header + bound);
  if (compress2(out.data() + header, &bound, raw.data(),
                static_cast<uLong>(raw.size()), level) != Z_OK)
    throw Error(ErrorCode::kInvalidArgument, "deflate encode failed");
  out.resize(header + bound);
  return out;
}

}  // namespace

EntropyBackend
parse_entropy_backend(const std::string& name)
{
  if (name == "identity" || name == "none")
    return EntropyBackend::kIdentity;
  if (name == "deflate" || name == "zlib")
    return EntropyBackend::kDeflate;
  if (name == "lzma" || name == "xz")
    return EntropyBackend::kLzma;
  throw Error(ErrorCode::kInvalidArgument, "unknown entropy backend '" + name + "'");
}

const char*
to_string(EntropyBackend backend)
{
  switch (backend) {
  case EntropyBackend::kIdentity: return "identity";
  case EntropyBackend::kDeflate: return "deflate";
  case EntropyBackend::kLzma: return "lzma";
  }
  return "unknown";
}

std::vector<std::uint8_t>
entropy_encode(std::span<const std::uint8_t> raw, const EntropyConfig& config)
{
  if (config.level < 0 || config.level > 9)
    throw Error(ErrorCode::kInvalidArgument, "entropy level must be in [0, 9]");
  switch (config.backend) {
  case EntropyBackend::kIdentity: {
    std::vector<std::uint8_t> out;
    put_prefix(out, EntropyBackend::kIdentity, raw.size());
    out.insert(out.end(), raw.begin(), raw.end());
    return out;
  }
  case EntropyBackend::kDeflate: return deflate_encode(raw, config.level);
  case EntropyBackend::kLzma: return lzma_encode(raw, config.level);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown entropy backend");
}

std::vector<std::uint8_t>
entropy_decode(std::span<const std::uint8_t> coded, std::size_t max_output)
{
  if (coded.size() < kPrefix)
    corrupt("entropy stream shorter than its prefix");
  const auto tag = coded[0];
  std::size_t size = 0;
  for (int b = 0; b < 4; ++b)
    size |= static_cast<std::size_t>(coded[1 + b]) << (8 * b);
  if (size > max_output)
    corrupt("declared size " + std::to_string(size) + " exceeds limit "
            + std::to_string(max_output));
  auto body = coded.subspan(kPrefix);

  std::vector<std::uint8_t> out(size);
  switch (static_cast<EntropyBackend>(tag)) {
  case EntropyBackend::kIdentity:
    if (body.size() != size)
      corrupt("identity stream length mismatch");
    std::copy(body.begin(), body.end(), out.begin());
    return out;

  case EntropyBackend::kDeflate: {
    uLongf got = static_cast<uLongf>(size);
    // uncompress() rejects a zero-capacity destination buffer.
    std::uint8_t dummy = 0;
    const int ret = uncompress(size ? out.data() : &dummy, &got, body.data(),
                               static_cast<uLong>(body.size()));
    if (ret != Z_OK || got != size)
      corrupt("deflate stream invalid");
    return out;
  }

  case EntropyBackend::kLzma: {
    if (body.size() < 2)
      corrupt("lzma stream too short");
    const int preset = body[0];
    const int dict_log2 = body[1];
    if (preset > 9 || dict_log2 < 12 || dict_log2 > 26)
      corrupt("lzma parameters out of range");
    lzma_options_lzma opt = lzma_options(preset, dict_log2);
    lzma_filter filters[] = {{LZMA_FILTER_LZMA2, &opt},
                             {LZMA_VLI_UNKNOWN, nullptr}};
    std::size_t in_pos = 0, out_pos = 0;
    std::uint8_t dummy = 0;
    const lzma_ret ret =
      lzma_raw_buffer_decode(filters, nullptr, body.data() + 2, &in_pos,
                             body.size() - 2, size ? out.data() : &dummy, &out_pos,
                             size);
    if (ret != LZMA_OK || out_pos != size || in_pos != body.size() - 2)
      corrupt("lzma stream invalid");
    return out;
  }
  }
  corrupt("unknown entropy backend tag " + std::to_string(tag));
}

}  // namespace rcpcc
