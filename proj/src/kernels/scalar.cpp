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

#include <cmath>

#include "kernels_impl.hpp"

namespace rcpcc::kernels::scalar {

void
dct_forward(const double* cos_table, int n, const double* x, double* y,
            double scale0, double scale)
{
  const int period = 4 * n;
  for (int p = 0; p < n; ++p) {
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
  for (int k = 0; k < n; ++k) {
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
  const double b = beta;
  const double g = gamma;
  const double bj = b * static_cast<double>(j);
  for (int k = 0; k < count; ++k) {
    const double r = ranges[k];
    if (!(r > 0))
      continue;
    const double den = (a * static_cast<double>(i0 + k) + bj) + g;
    if (!(den > 0))
      return false;
    const double rhat = 1.0 / den;
    if (!(std::fabs(r - rhat) < delta_r))
      return false;
  }
  return true;
}

bool
quantize(const double* c, std::int64_t* q, std::size_t n, double step)
{
  for (std::size_t k = 0; k < n; ++k) {
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
  for (std::size_t k = 0; k < n; ++k)
    c[k] = static_cast<double>(q[k]) * step;
}

}  // namespace rcpcc::kernels::scalar
