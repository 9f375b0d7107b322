#include "zl/simd.hpp"

namespace zl::simd {

namespace {

void cgemv(int m, int n, const cplx* a, int lda, const cplx* x, cplx* y) {
  for (int i = 0; i < m; ++i) y[i] = 0.0;
  for (int j = 0; j < n; ++j) {
    const cplx xj = x[j];
    const cplx* col = a + static_cast<long>(j) * lda;
    for (int i = 0; i < m; ++i) y[i] += col[i] * xj;
  }
}

void cgemv_h(int m, int n, const cplx* a, int lda, const cplx* x, cplx* y) {
  for (int j = 0; j < n; ++j) {
    const cplx* col = a + static_cast<long>(j) * lda;
    cplx acc = 0.0;
    for (int i = 0; i < m; ++i) acc += std::conj(col[i]) * x[i];
    y[j] = acc;
  }
}

void cgemm(int m, int n, int k, const cplx* a, int lda, const cplx* b, int ldb, cplx* c, int ldc) {
  for (int j = 0; j < n; ++j) cgemv(m, k, a, lda, b + static_cast<long>(j) * ldb, c + static_cast<long>(j) * ldc);
}

void horner_batch(const cplx* coef, int ncoef, const cplx* z, cplx* out, int nz) {
  for (int i = 0; i < nz; ++i) {
    cplx acc = 0.0;
    for (int j = ncoef - 1; j >= 0; --j) acc = acc * z[i] + coef[j];
    out[i] = acc;
  }
}

}  // namespace

const Kernels& scalar_kernels() {
  static const Kernels k{cgemv, cgemv_h, cgemm, horner_batch};
  return k;
}

}  // namespace zl::simd
