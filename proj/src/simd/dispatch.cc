// Copyright 2026 The ReRo Bounds Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <string_view>

#include "rero/simd/kernels.h"

namespace rero::simd {

absl::string_view IsaName(Isa isa) {
  return isa == Isa::kAvx2 ? "avx2" : "scalar";
}

bool CpuSupportsAvx2() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable& Kernels() {
  static const KernelTable& selected = []() -> const KernelTable& {
    const char* env = std::getenv("RERO_SIMD");
    if (env != nullptr && absl::string_view(env) == "scalar") {
      return ScalarKernels();
    }
    const KernelTable* avx2 = Avx2Kernels();
    if (avx2 != nullptr && CpuSupportsAvx2()) return *avx2;
    return ScalarKernels();
  }();
  return selected;
}

}  // namespace rero::simd
