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

// Compiled with -mavx2 (no -mfma); only reached after a runtime CPU check.

#include <immintrin.h>

#include <cmath>

#include "kernels_impl.hpp"

namespace rcpcc::kernels::avx2 {

namespace {

// Lane-wise `idx = (idx + step) mod period` for idx, step in [0, period).
inline __m128i
advance(__m128i idx, __m128i step, __m128i period, __m128i period_minus_one)
{
  idx = _mm_add_epi32(idx, step);
  const __m128i wrap = _mm_cmpgt_epi32(idx, period_minus_one);
  return _mm_sub_epi32(idx, _mm_and_si128(wrap, period));
}

}  // namespace

void
dct_forward(const double* cos_table, int n, const double* x, double* y,
            double scale0, double scale)
{
  const int period = 4 * n;
  const __m128i vperiod = _mm_set1_epi32(period);
  const __m128i vperiod1 = _mm_set1_epi32(period - 1);

  int p = 0;
  for (; p + 4 <= n; p += 4) {
    __m128i idx = _mm_setr_epi32(p, p + 1, p + 2, p + 3);
    const __m128i step = _mm_add_epi32(idx, idx);
    __m256d acc = _mm256_setzero_pd();
    for (int k = 0; k < n; ++k) {
      const __m256d t = _mm256_i32gather_pd(cos_table, idx, 8);
      acc = _mm256_add_pd(acc, _mm256_mul_pd(t, _mm256_set1_pd(x[k])));
      idx = advance(idx, step, vperiod, vperiod1);
    }
    const __m256d s = _mm256_setr_pd(p == 0 ? scale0 : scale, scale, scale, scale);
    _mm256_storeu_pd(y + p, _mm256_mul_pd(acc, s));
  }

  for (; p < n; ++p) {
    const int step = 2 * p;
    int idx = p;
    double acc = 0;
    for (int k = 0; k < n; ++k) {
      acc = acc + cos_table[idx] * x[k];
      idx += step;
      if (idx >= period)
        idx -= period;
    }
    y[p] = acc * (p == 0 ? scale0 : scale);
  }
}

void
dct_inverse(const double* cos_table, int n, const double* c, double* x,
            double scale)
{
  const int period = 4 * n;
  const __m128i vperiod = _mm_set1_epi32(period);
  const __m128i vperiod1 = _mm_set1_epi32(period - 1);
  const __m256d vscale = _mm256_set1_pd(scale);

  int k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m128i step =
      _mm_setr_epi32(2 * k + 1, 2 * k + 3, 2 * k + 5, 2 * k + 7);
    __m128i idx = _mm_setzero_si128();
    __m256d acc = _mm256_setzero_pd();
    for (int p = 0; p < n; ++p) {
      const double cp = c[p] * (p == 0 ? kSqrtHalf : 1.0);
      const __m256d t = _mm256_i32gather_pd(cos_table, idx, 8);
      acc = _mm256_add_pd(acc, _mm256_mul_pd(t, _mm256_set1_pd(cp)));
      idx = advance(idx, step, vperiod, vperiod1);
    }
    _mm256_storeu_pd(x + k, _mm256_mul_pd(acc, vscale));
  }

  for (; k < n; ++k) {
    const int step = 2 * k + 1;
    int idx = 0;
    double acc = 0;
    for (int p = 0; p < n; ++p) {
      const double cp = c[p] * (p == 0 ? kSqrtHalf : 1.0);
      acc = acc + cos_table[idx] * cp;
      idx += step;
      if (idx >= period)
        idx -= period;
    }
    x[k] = acc * scale;
  }
}

bool
surface_fits(float alpha, float beta, float gamma, int i0, int j,
             const double* ranges, int count, double delta_r)
{
  const double a = alpha;
  const double g = gamma;
  const double bj = static_cast<double>(beta) * static_cast<double>(j);

  const __m256d va = _mm256_set1_pd(a);
  const __m256d vg = _mm256_set1_pd(g);
  const __m256d vbj = _mm256_set1_pd(bj);
  const __m256d vdr = _mm256_set1_pd(delta_r);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));

  int k = 0;
  for (; k + 4 <= count; k += 4) {
    const __m256d r = _mm256_loadu_pd(ranges + k);
    const __m256d occupied = _mm256_cmp_pd(r, zero, _CMP_GT_OQ);
    if (_mm256_movemask_pd(occupied) == 0)
      continue;
    const __m256d vi = _mm256_cvtepi32_pd(_mm_setr_epi32(i0 + k, i0 + k + 1,
                                                         i0 + k + 2, i0 + k + 3));
    const __m256d den = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(va, vi), vbj), vg);
    const __m256d den_ok = _mm256_cmp_pd(den, zero, _CMP_GT_OQ);
    const __m256d rhat = _mm256_div_pd(one, den);
    const __m256d err = _mm256_and_pd(_mm256_sub_pd(r, rhat), abs_mask);
    const __m256d err_ok = _mm256_cmp_pd(err, vdr, _CMP_LT_OQ);
    const __m256d ok = _mm256_and_pd(den_ok, err_ok);
    // Lanes that are occupied but not ok fail the block.
    if (_mm256_movemask_pd(_mm256_andnot_pd(ok, occupied)) != 0)
      return false;
  }

  for (; k < count; ++k) {
    const double r = ranges[k];
    if (!(r > 0))
      continue;
    const double den = (a * static_cast<double>(i0 + k) + bj) + g;
    if (!(den > 0))
      return false;
    if (!(std::fabs(r - 1.0 / den) < delta_r))
      return false;
  }
  return true;
}

bool
quantize(const double* c, std::int64_t* q, std::size_t n, double step)
{
  const __m256d vstep = _mm256_set1_pd(step);
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d limit = _mm256_set1_pd(kQuantLimit);
  const __m256d sign_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(
    static_cast<long long>(0x8000000000000000ULL)));

  alignas(32) double lanes[4];
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d v = _mm256_div_pd(_mm256_loadu_pd(c + k), vstep);
    const __m256d sign = _mm256_and_pd(v, sign_mask);
    const __m256d mag = _mm256_andnot_pd(sign_mask, v);
    __m256d t = _mm256_round_pd(mag, _MM_FROUND_TO_ZERO | _MM_FROUND_NO_EXC);
    const __m256d frac = _mm256_sub_pd(mag, t);
    t = _mm256_add_pd(t, _mm256_and_pd(_mm256_cmp_pd(frac, half, _CMP_GE_OQ), one));
    if (_mm256_movemask_pd(_mm256_cmp_pd(t, limit, _CMP_LT_OQ)) != 0xF)
      return false;
    _mm256_store_pd(lanes, _mm256_or_pd(t, sign));
    for (int l = 0; l < 4; ++l)
      q[k + l] = static_cast<std::int64_t>(lanes[l]);
  }

  for (; k < n; ++k) {
    const double v = std::round(c[k] / step);
    if (!(std::fabs(v) < kQuantLimit))
      return false;
    q[k] = static_cast<std::int64_t>(v);
  }
  return true;
}

void
dequantize(const std::int64_t* q, double* c, std::size_t n, double step)
{
  // int64 -> double via the 1.5 * 2^52 bias; exact for |q| < 2^51.
  const __m256i bias_i = _mm256_set1_epi64x(0x4338000000000000LL);
  const __m256d bias_d = _mm256_castsi256_pd(bias_i);
  const __m256i hi = _mm256_set1_epi64x((1LL << 51) - 1);
  const __m256i lo = _mm256_set1_epi64x(-(1LL << 51) + 1);
  const __m256d vstep = _mm256_set1_pd(step);

  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(q + k));
    const __m256i out_of_range =
      _mm256_or_si256(_mm256_cmpgt_epi64(v, hi), _mm256_cmpgt_epi64(lo, v));
    if (!_mm256_testz_si256(out_of_range, out_of_range)) {
      for (int l = 0; l < 4; ++l)
        c[k + l] = static_cast<double>(q[k + l]) * step;
      continue;
    }
    const __m256d d =
      _mm256_sub_pd(_mm256_castsi256_pd(_mm256_add_epi64(v, bias_i)), bias_d);
    _mm256_storeu_pd(c + k, _mm256_mul_pd(d, vstep));
  }

  for (; k < n; ++k)
    c[k] = static_cast<double>(q[k]) * step;
}

}  // namespace rcpcc::kernels::avx2
