#include <immintrin.h>

#include "zl/simd.hpp"

namespace zl::simd {

namespace {

// Interleaved (re, im) pairs: one __m256d holds two complex numbers.
inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d br = _mm256_movedup_pd(b);
  const __m256d bi = _mm256_permute_pd(b, 0xF);
  const __m256d as = _mm256_permute_pd(a, 0x5);
  return _mm256_fmaddsub_pd(a, br, _mm256_mul_pd(as, bi));
}

void cgemv(int m, int n, const cplx* a, int lda, const cplx* x, cplx* y) {
  const int m2 = m & ~1;
  for (int i = 0; i < m; ++i) y[i] = 0.0;
  for (int j = 0; j < n; ++j) {
    const cplx* col = a + static_cast<long>(j) * lda;
    const __m256d xr = _mm256_set1_pd(x[j].real());
    const __m256d xi = _mm256_set1_pd(x[j].imag());
    for (int i = 0; i < m2; i += 2) {
      const __m256d v = load2(col + i);
      const __m256d t = _mm256_mul_pd(_mm256_permute_pd(v, 0x5), xi);
      store2(y + i, _mm256_add_pd(load2(y + i), _mm256_fmaddsub_pd(v, xr, t)));
    }
    if (m2 < m) y[m2] += col[m2] * x[j];
  }
}

void cgemv_h(int m, int n, const cplx* a, int lda, const cplx* x, cplx* y) {
  const int m2 = m & ~1;
  for (int j = 0; j < n; ++j) {
    const cplx* col = a + static_cast<long>(j) * lda;
    __m256d acc1 = _mm256_setzero_pd(), acc2 = _mm256_setzero_pd();
    for (int i = 0; i < m2; i += 2) {
      const __m256d v = load2(col + i);
      const __m256d w = load2(x + i);
      acc1 = _mm256_fmadd_pd(v, w, acc1);
      acc2 = _mm256_fmadd_pd(v, _mm256_permute_pd(w, 0x5), acc2);
    }
    alignas(32) double r1[4], r2[4];
    _mm256_store_pd(r1, acc1);
    _mm256_store_pd(r2, acc2);
    cplx s((r1[0] + r1[1]) + (r1[2] + r1[3]), (r2[0] - r2[1]) + (r2[2] - r2[3]));
    if (m2 < m) s += std::conj(col[m2]) * x[m2];
    y[j] = s;
  }
}

void cgemm(int m, int n, int k, const cplx* a, int lda, const cplx* b, int ldb, cplx* c, int ldc) {
  for (int j = 0; j < n; ++j) cgemv(m, k, a, lda, b + static_cast<long>(j) * ldb, c + static_cast<long>(j) * ldc);
}

void horner_batch(const cplx* coef, int ncoef, const cplx* z, cplx* out, int nz) {
  const int n2 = nz & ~1;
  for (int i = 0; i < n2; i += 2) {
    const __m256d zz = load2(z + i);
    __m256d acc = _mm256_setzero_pd();
    for (int j = ncoef - 1; j >= 0; --j) {
      const __m256d c = _mm256_setr_pd(coef[j].real(), coef[j].imag(), coef[j].real(), coef[j].imag());
      acc = _mm256_add_pd(cmul(acc, zz), c);
    }
    store2(out + i, acc);
  }
  for (int i = n2; i < nz; ++i) {
    cplx acc = 0.0;
    for (int j = ncoef - 1; j >= 0; --j) acc = acc * z[i] + coef[j];
    out[i] = acc;
  }
}

}  // namespace

const Kernels& avx2_kernels() {
  static const Kernels k{cgemv, cgemv_h, cgemm, horner_batch};
  return k;
}

}  // namespace zl::simd
