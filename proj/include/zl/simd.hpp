#pragma once

#include <complex>

namespace zl::simd {

using cplx = std::complex<double>;

enum class Isa { Scalar, Avx2 };

// All matrices are column-major with explicit leading dimension.
struct Kernels {
  // y = A x, A is m x n.
  void (*cgemv)(int m, int n, const cplx* a, int lda, const cplx* x, cplx* y);
  // y = A^H x, A is m x n, y has n entries.
  void (*cgemv_h)(int m, int n, const cplx* a, int lda, const cplx* x, cplx* y);
  // C = A B, A is m x k, B is k x n.
  void (*cgemm)(int m, int n, int k, const cplx* a, int lda, const cplx* b, int ldb, cplx* c,
                int ldc);
  // out[i] = sum_j coef[j] z[i]^j, degree = ncoef - 1.
  void (*horner_batch)(const cplx* coef, int ncoef, const cplx* z, cplx* out, int nz);
};

const Kernels& scalar_kernels();
const Kernels& avx2_kernels();
bool cpu_has_avx2();

// AVX2 when the CPU has it unless ZL_SIMD=scalar; force_isa overrides both.
Isa active_isa();
void force_isa(Isa isa);
const Kernels& kernels();
const char* isa_name(Isa isa);

}  // namespace zl::simd
