// Copyright 2026 The dising Authors
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

#include <atomic>
#include <cstdlib>
#include <string>

#include "dising/kernels.hpp"

namespace dising::kernels {

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
  }
  return "unknown";
}

Isa parse_isa(std::string_view name) {
  if (name == "scalar") return Isa::kScalar;
  if (name == "avx2") return Isa::kAvx2;
  if (name == "auto") return best_available();
  throw ConfigError("unknown kernel '" + std::string(name) + "' (expected scalar, avx2 or auto)");
}

bool is_available(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if defined(DISING_HAVE_AVX2_KERNEL)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

Isa best_available() { return is_available(Isa::kAvx2) ? Isa::kAvx2 : Isa::kScalar; }

namespace {

Isa initial_isa() {
  if (const char* env = std::getenv("DISING_KERNEL")) {
    const Isa requested = parse_isa(env);
    if (is_available(requested)) return requested;
  }
  return best_available();
}

std::atomic<Isa>& active_slot() {
  static std::atomic<Isa> slot{initial_isa()};
  return slot;
}

}  // namespace

Isa active_isa() { return active_slot().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (!is_available(isa)) {
    throw ConfigError("kernel '" + std::string(to_string(isa)) + "' is not supported on this CPU");
  }
  active_slot().store(isa, std::memory_order_relaxed);
}

void apply_rhs(Isa isa, const RhsTerms& terms, const Complex* rho, Complex* out,
               Complex* scratch) {
#if defined(DISING_HAVE_AVX2_KERNEL)
  if (isa == Isa::kAvx2) {
    rhs_avx2(terms, rho, out, scratch);
    return;
  }
#endif
  (void)isa;
  rhs_scalar(terms, rho, out, scratch);
}

}  // namespace dising::kernels
