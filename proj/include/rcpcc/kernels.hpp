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

// Arithmetic inner loops of the codec. Every ISA variant must produce results
// bit-identical to the scalar reference: the same operations in the same
// order per output element, no FMA contraction. Bitstreams therefore do not
// depend on which variant the dispatcher picked.

namespace rcpcc::kernels {

enum class Isa { kScalar, kAvx2 };

const char* to_string(Isa isa);

struct KernelTable {
  Isa isa;

  // y[p] = (sum_k cos_table[p*(2k+1) mod 4n] * x[k]) * (p == 0 ? scale0 : scale)
  // for p in [0, n). `cos_table` holds cos(pi*m / (2n)) for m in [0, 4n).
  void (*dct_forward)(const double* cos_table, int n, const double* x,
                      double* y, double scale0, double scale);

  // x[k] = (sum_p cos_table[p*(2k+1) mod 4n] * (c[p] * a0(p))) * scale
  // with a0(0) = sqrt(1/2) and a0(p) = 1 otherwise.
  void (*dct_inverse)(const double* cos_table, int n, const double* c,
                      double* x, double scale);

  // True when every occupied (r > 0) entry of ranges[0..count) satisfies
  // |r - 1/den| < delta_r with den = (alpha*(i0+k) + beta*j) + gamma > 0.
  bool (*surface_fits)(float alpha, float beta, float gamma, int i0, int j,
                       const double* ranges, int count, double delta_r);

  // q[k] = round_half_away(c[k] / step). Returns false if any quotient is
  // not finite or its magnitude reaches 2^62.
  bool (*quantize)(const double* c, std::int64_t* q, std::size_t n,
                   double step);

  // c[k] = double(q[k]) * step
  void (*dequantize)(const std::int64_t* q, double* c, std::size_t n,
                     double step);
};

/// Kernels chosen for this process: the widest supported ISA unless the
/// RCPCC_SIMD environment variable is set to "scalar".
const KernelTable& active();

/// Kernels for one ISA, or nullptr when the build or the CPU lacks it.
const KernelTable* for_isa(Isa isa);

const KernelTable& scalar_table();

}  // namespace rcpcc::kernels
