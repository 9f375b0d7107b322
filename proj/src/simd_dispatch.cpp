#include <cstdlib>
#include <cstring>

#include "zl/simd.hpp"

namespace zl::simd {

namespace {

Isa detect() {
  const char* env = std::getenv("ZL_SIMD");
  if (env && std::strcmp(env, "scalar") == 0) return Isa::Scalar;
  return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
}

Isa& current() {
  static Isa isa = detect();
  return isa;
}

}  // namespace

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa active_isa() { return current(); }

void force_isa(Isa isa) {
  if (isa == Isa::Avx2 && !cpu_has_avx2()) isa = Isa::Scalar;
  current() = isa;
}

const Kernels& kernels() { return current() == Isa::Avx2 ? avx2_kernels() : scalar_kernels(); }

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

}  // namespace zl::simd
