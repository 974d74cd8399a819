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

#include "rcpcc/kernels.hpp"

namespace rcpcc::kernels {

inline constexpr double kSqrtHalf = 0.70710678118654752440;
inline constexpr double kQuantLimit = 4611686018427387904.0;  // 2^62

namespace scalar {
void dct_forward(const double*, int, const double*, double*, double, double);
void dct_inverse(const double*, int, const double*, double*, double);
bool surface_fits(float, float, float, int, int, const double*, int, double);
bool quantize(const double*, std::int64_t*, std::size_t, double);
void dequantize(const std::int64_t*, double*, std::size_t, double);
}  // namespace scalar

#if defined(RCPCC_HAVE_AVX2)
namespace avx2 {
void dct_forward(const double*, int, const double*, double*, double, double);
void dct_inverse(const double*, int, const double*, double*, double);
bool surface_fits(float, float, float, int, int, const double*, int, double);
bool quantize(const double*, std::int64_t*, std::size_t, double);
void dequantize(const std::int64_t*, double*, std::size_t, double);
}  // namespace avx2
#endif

}  // namespace rcpcc::kernels
