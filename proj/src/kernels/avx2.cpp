// Compiled with -mavx2 (and without -mfma) when the compiler targets x86-64.
#include "kernels_impl.hpp"

#if defined(__AVX2__)
#include <immintrin.h>

namespace yigmag::kernels {
namespace avx2 {
namespace {

void scale_complex(cplx* x, const double* gain, std::size_t n) {
  double* p = reinterpret_cast<double*>(x);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d g = _mm256_loadu_pd(gain + i);
    const __m256d g01 = _mm256_permute4x64_pd(g, 0x50);  // g0 g0 g1 g1
    const __m256d g23 = _mm256_permute4x64_pd(g, 0xFA);  // g2 g2 g3 g3
    _mm256_storeu_pd(p + 2 * i, _mm256_mul_pd(_mm256_loadu_pd(p + 2 * i), g01));
    _mm256_storeu_pd(p + 2 * i + 4, _mm256_mul_pd(_mm256_loadu_pd(p + 2 * i + 4), g23));
  }
  scalar::scale_complex(x + i, gain + i, n - i);
}

void scale_complex_const(cplx* x, double factor, std::size_t n) {
  double* p = reinterpret_cast<double*>(x);
  const __m256d f = _mm256_set1_pd(factor);
  const std::size_t m = 2 * n;
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4) {
    _mm256_storeu_pd(p + i, _mm256_mul_pd(_mm256_loadu_pd(p + i), f));
  }
  for (; i < m; ++i) p[i] = p[i] * factor;
}

void multiply(double* out, const double* a, const double* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  scalar::multiply(out + i, a + i, b + i, n - i);
}

void accumulate_norm(double* acc, const cplx* x, double scale, std::size_t n) {
  const double* p = reinterpret_cast<const double*>(x);
  const __m256d s = _mm256_set1_pd(scale);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v01 = _mm256_loadu_pd(p + 2 * i);
    const __m256d v23 = _mm256_loadu_pd(p + 2 * i + 4);
    // hadd -> [n0, n2, n1, n3]; restore order with a lane permute.
    const __m256d h = _mm256_hadd_pd(_mm256_mul_pd(v01, v01), _mm256_mul_pd(v23, v23));
    const __m256d norms = _mm256_permute4x64_pd(h, 0xD8);
    const __m256d a = _mm256_loadu_pd(acc + i);
    _mm256_storeu_pd(acc + i, _mm256_add_pd(a, _mm256_mul_pd(s, norms)));
  }
  scalar::accumulate_norm(acc + i, x + i, scale, n - i);
}

void multiply_conj(cplx* out, const cplx* z, const cplx* c, std::size_t n) {
  const double* zp = reinterpret_cast<const double*>(z);
  const double* cp = reinterpret_cast<const double*>(c);
  double* op = reinterpret_cast<double*>(out);
  const __m256d odd_sign = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d zv = _mm256_loadu_pd(zp + 2 * i);
    const __m256d cv = _mm256_loadu_pd(cp + 2 * i);
    const __m256d zr = _mm256_movedup_pd(zv);           // a a
    const __m256d zi = _mm256_permute_pd(zv, 0xF);      // b b
    const __m256d cs = _mm256_permute_pd(cv, 0x5);      // ci cr
    const __m256d t1 = _mm256_mul_pd(zr, cv);           // a*cr  a*ci
    const __m256d t2 = _mm256_mul_pd(zi, cs);           // b*ci  b*cr
    _mm256_storeu_pd(op + 2 * i, _mm256_add_pd(t2, _mm256_xor_pd(t1, odd_sign)));
  }
  scalar::multiply_conj(out + i, z + i, c + i, n - i);
}

void central_difference(double* out, const double* x, double scale, std::size_t n) {
  if (n < 3) return;
  const std::size_t m = n - 2;
  const __m256d s = _mm256_set1_pd(scale);
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i + 2), _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(out + i, _mm256_mul_pd(s, d));
  }
  for (; i < m; ++i) out[i] = scale * (x[i + 2] - x[i]);
}

const KernelTable table{
    "avx2",        scale_complex, scale_complex_const, multiply, accumulate_norm,
    multiply_conj, central_difference,
};

}  // namespace
}  // namespace avx2

const KernelTable* avx2_table_if_built() { return &avx2::table; }

}  // namespace yigmag::kernels

#else

namespace yigmag::kernels {
const KernelTable* avx2_table_if_built() { return nullptr; }
}  // namespace yigmag::kernels

#endif
