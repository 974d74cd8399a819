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

#include <cstdlib>
#include <cstring>

#include "kernels_impl.hpp"

namespace rcpcc::kernels {

const char*
to_string(Isa isa)
{
  switch (isa) {
  case Isa::kScalar: return "scalar";
  case Isa::kAvx2: return "avx2";
  }
  return "unknown";
}

namespace {

constexpr KernelTable kScalarTable{
  Isa::kScalar,
  scalar::dct_forward,
  scalar::dct_inverse,
  scalar::surface_fits,
  scalar::quantize,
  scalar::dequantize,
};

#if defined(RCPCC_HAVE_AVX2)
constexpr KernelTable kAvx2Table{
  Isa::kAvx2,
  avx2::dct_forward,
  avx2::dct_inverse,
  avx2::surface_fits,
  avx2::quantize,
  avx2::dequantize,
};

bool
cpu_has_avx2()
{
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
}
#endif

const KernelTable&
select()
{
  const char* forced = std::getenv("RCPCC_SIMD");
  if (forced && std::strcmp(forced, "scalar") == 0)
    return kScalarTable;
  if (const KernelTable* t = for_isa(Isa::kAvx2))
    return *t;
  return kScalarTable;
}

}  // namespace

const KernelTable&
scalar_table()
{
  return kScalarTable;
}

const KernelTable*
for_isa(Isa isa)
{
  switch (isa) {
  case Isa::kScalar: return &kScalarTable;
  case Isa::kAvx2:
#if defined(RCPCC_HAVE_AVX2)
    if (cpu_has_avx2())
      return &kAvx2Table;
#endif
    return nullptr;
  }
  return nullptr;
}

const KernelTable&
active()
{
  static const KernelTable& table = select();
  return table;
}

}  // namespace rcpcc::kernels
