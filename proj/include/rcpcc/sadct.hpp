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
#include <vector>

#include "rcpcc/range_image.hpp"

namespace rcpcc {

/// Shape-adaptive DCT.
///
/// Forward: every column's masked values are shifted to the top and
/// transformed with an orthonormal DCT-II of their own length; then each row
/// of that packed layout is shifted left and transformed again. The packed
/// support is structural: row p holds one coefficient for every column whose
/// length exceeds p, whatever the coefficient values are.
///
/// With the normalization A_L = sqrt(2/L) both passes are orthonormal, so the
/// inverse is exact and quantization error is independent of segment length.

/// Column lengths and the packed row lengths derived from a shape.
struct PackedSupport {
  std::vector<int> column_lengths;  // per image column i
  std::vector<int> row_lengths;     // per packed row p
  std::size_t size = 0;             // == shape.count()

  bool contains(int p, int q) const { return q < row_lengths[p]; }
};

PackedSupport packed_support(const ShapeMask& shape);

/// Packed H x W coefficient matrix; entries outside the support are zero.
struct PackedCoefficients {
  int width = 0;
  int height = 0;
  std::vector<double> values;  // row-major (p, q)

  double at(int p, int q) const
  {
    return values[static_cast<std::size_t>(p) * width + q];
  }
};

struct QuantizedCoefficients {
  int width = 0;
  int height = 0;
  double q_step = 0;
  std::vector<std::int64_t> values;  // row-major (p, q)

  std::int64_t at(int p, int q) const
  {
    return values[static_cast<std::size_t>(p) * width + q];
  }

  friend bool operator==(const QuantizedCoefficients&, const QuantizedCoefficients&) = default;
};

/// cos(pi * m / (2L)) for m in [0, 4L); every DCT entry is one of these.
std::vector<double> dct_cos_table(int length);

/// L x L row-major matrix with entry (p, k) = a0(p) cos(p (k + 1/2) pi / L),
/// a0(0) = sqrt(1/2), a0(p > 0) = 1. Satisfies (2/L) M^T M = I.
std::vector<double> dct_matrix(int length);

/// Throws ShapeMismatch when the image and shape sizes differ.
PackedCoefficients sa_dct_forward(const RangeImage& unfit, const ShapeMask& shape);

/// Inverse transform onto the cells of `shape`. Values are the raw
/// reconstruction and may be non-positive once coefficients were quantized;
/// cells outside the shape are 0. Throws ShapeMismatch if a nonzero
/// coefficient lies outside the support implied by `shape`.
RangeImage sa_idct_inverse(const PackedCoefficients& coeffs, const ShapeMask& shape,
                           const ProjectionConfig& projection);

/// round(C / q_step), half away from zero. Throws InvalidArgument for a
/// non-positive step or a coefficient too large for 62 bits.
QuantizedCoefficients quantize(const PackedCoefficients& coeffs, double q_step);

PackedCoefficients dequantize(const QuantizedCoefficients& q);

}  // namespace rcpcc
