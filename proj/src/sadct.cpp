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

#include "rcpcc/sadct.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "rcpcc/kernels.hpp"

namespace rcpcc {

namespace {

constexpr double kSqrtHalf = 0.70710678118654752440;

// Lazily built cosine tables, indexed by transform length. Local to one
// transform call.
class CosTables {
public:
  explicit CosTables(int max_length) : tables_(max_length + 1) {}

  const double* get(int length)
  {
    auto& t = tables_[length];
    if (t.empty())
      t = dct_cos_table(length);
    return t.data();
  }

private:
  std::vector<std::vector<double>> tables_;
};

void
check_dims(int width, int height, const ShapeMask& shape)
{
  if (shape.width() != width || shape.height() != height)
    throw Error(ErrorCode::kShapeMismatch,
                "shape " + std::to_string(shape.width()) + "x"
                  + std::to_string(shape.height()) + " vs data "
                  + std::to_string(width) + "x" + std::to_string(height));
}

}  // namespace

std::vector<double>
dct_cos_table(int length)
{
  std::vector<double> table(4 * static_cast<std::size_t>(length));
  for (std::size_t m = 0; m < table.size(); ++m)
    table[m] = std::cos(std::numbers::pi * static_cast<double>(m) / (2.0 * length));
  return table;
}

std::vector<double>
dct_matrix(int length)
{
  if (length < 1)
    throw Error(ErrorCode::kInvalidArgument, "DCT length must be >= 1");
  const auto table = dct_cos_table(length);
  const std::size_t period = table.size();
  std::vector<double> m(static_cast<std::size_t>(length) * length);
  for (int p = 0; p < length; ++p)
    for (int k = 0; k < length; ++k) {
      const std::size_t idx = (static_cast<std::size_t>(p) * (2 * k + 1)) % period;
      m[static_cast<std::size_t>(p) * length + k] = (p == 0 ? kSqrtHalf : 1.0) * table[idx];
    }
  return m;
}

PackedSupport
packed_support(const ShapeMask& shape)
{
  PackedSupport s;
  s.column_lengths.assign(shape.width(), 0);
  s.row_lengths.assign(shape.height(), 0);
  for (int j = 0; j < shape.height(); ++j)
    for (int i = 0; i < shape.width(); ++i)
      if (shape.test(i, j))
        ++s.column_lengths[i];
  for (int i = 0; i < shape.width(); ++i) {
    for (int p = 0; p < s.column_lengths[i]; ++p)
      ++s.row_lengths[p];
    s.size += s.column_lengths[i];
  }
  return s;
}

PackedCoefficients
sa_dct_forward(const RangeImage& unfit, const ShapeMask& shape)
{
  const int w = unfit.width(), h = unfit.height();
  check_dims(w, h, shape);
  const auto support = packed_support(shape);
  const auto& k = kernels::active();
  CosTables tables(std::max(w, h));

  std::vector<double> cols(static_cast<std::size_t>(w) * h, 0.0);
  std::vector<double> in(std::max(w, h)), out(std::max(w, h));

  for (int i = 0; i < w; ++i) {
    const int len = support.column_lengths[i];
    if (len == 0)
      continue;
    int n = 0;
    for (int j = 0; j < h; ++j)
      if (shape.test(i, j))
        in[n++] = unfit.at(i, j);
    const double a = std::sqrt(2.0 / len);
    k.dct_forward(tables.get(len), len, in.data(), out.data(), kSqrtHalf * a, a);
    for (int p = 0; p < len; ++p)
      cols[static_cast<std::size_t>(p) * w + i] = out[p];
  }

  PackedCoefficients result{w, h, std::vector<double>(cols.size(), 0.0)};
  for (int p = 0; p < h; ++p) {
    const int len = support.row_lengths[p];
    if (len == 0)
      continue;
    int n = 0;
    for (int i = 0; i < w; ++i)
      if (support.column_lengths[i] > p)
        in[n++] = cols[static_cast<std::size_t>(p) * w + i];
    const double a = std::sqrt(2.0 / len);
    k.dct_forward(tables.get(len), len, in.data(),
                  result.values.data() + static_cast<std::size_t>(p) * w,
                  kSqrtHalf * a, a);
  }
  return result;
}

RangeImage
sa_idct_inverse(const PackedCoefficients& coeffs, const ShapeMask& shape,
                const ProjectionConfig& projection)
{
  const int w = coeffs.width, h = coeffs.height;
  check_dims(w, h, shape);
  if (projection.width != w || projection.height != h)
    throw Error(ErrorCode::kShapeMismatch, "projection does not match coefficients");
  if (coeffs.values.size() != static_cast<std::size_t>(w) * h)
    throw Error(ErrorCode::kShapeMismatch, "coefficient matrix size");

  const auto support = packed_support(shape);
  for (int p = 0; p < h; ++p)
    for (int q = support.row_lengths[p]; q < w; ++q)
      if (coeffs.at(p, q) != 0)
        throw Error(ErrorCode::kShapeMismatch,
                    "coefficient (" + std::to_string(p) + "," + std::to_string(q)
                      + ") outside packed support");

  const auto& k = kernels::active();
  CosTables tables(std::max(w, h));
  std::vector<double> cols(static_cast<std::size_t>(w) * h, 0.0);
  std::vector<double> in(std::max(w, h)), out(std::max(w, h));

  for (int p = 0; p < h; ++p) {
    const int len = support.row_lengths[p];
    if (len == 0)
      continue;
    const double a = std::sqrt(2.0 / len);
    k.dct_inverse(tables.get(len), len,
                  coeffs.values.data() + static_cast<std::size_t>(p) * w,
                  out.data(), 2.0 / (a * len));
    int n = 0;
    for (int i = 0; i < w; ++i)
      if (support.column_lengths[i] > p)
        cols[static_cast<std::size_t>(p) * w + i] = out[n++];
  }

  RangeImage image(projection);
  for (int i = 0; i < w; ++i) {
    const int len = support.column_lengths[i];
    if (len == 0)
      continue;
    for (int p = 0; p < len; ++p)
      in[p] = cols[static_cast<std::size_t>(p) * w + i];
    const double a = std::sqrt(2.0 / len);
    k.dct_inverse(tables.get(len), len, in.data(), out.data(), 2.0 / (a * len));
    int n = 0;
    for (int j = 0; j < h; ++j)
      if (shape.test(i, j))
        image.set(i, j, out[n++]);
  }
  return image;
}

QuantizedCoefficients
quantize(const PackedCoefficients& coeffs, double q_step)
{
  if (!(q_step > 0) || !std::isfinite(q_step))
    throw Error(ErrorCode::kInvalidArgument, "q_step must be > 0");
  QuantizedCoefficients q{coeffs.width, coeffs.height, q_step,
                          std::vector<std::int64_t>(coeffs.values.size())};
  if (!kernels::active().quantize(coeffs.values.data(), q.values.data(),
                                  q.values.size(), q_step))
    throw Error(ErrorCode::kInvalidArgument,
                "coefficient out of range for q_step " + std::to_string(q_step));
  return q;
}

PackedCoefficients
dequantize(const QuantizedCoefficients& q)
{
  PackedCoefficients c{q.width, q.height, std::vector<double>(q.values.size())};
  kernels::active().dequantize(q.values.data(), c.values.data(), c.values.size(),
                               q.q_step);
  return c;
}

}  // namespace rcpcc
