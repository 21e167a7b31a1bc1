#include "kernels_impl.hpp"

#if defined(__aarch64__) && defined(__ARM_NEON)
#include <arm_neon.h>

namespace yigmag::kernels {
namespace neon {
namespace {

void scale_complex(cplx* x, const double* gain, std::size_t n) {
  double* p = reinterpret_cast<double*>(x);
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t g = vdupq_n_f64(gain[i]);
    vst1q_f64(p + 2 * i, vmulq_f64(vld1q_f64(p + 2 * i), g));
  }
}

void scale_complex_const(cplx* x, double factor, std::size_t n) {
  double* p = reinterpret_cast<double*>(x);
  const float64x2_t f = vdupq_n_f64(factor);
  for (std::size_t i = 0; i < n; ++i) vst1q_f64(p + 2 * i, vmulq_f64(vld1q_f64(p + 2 * i), f));
}

void multiply(double* out, const double* a, const double* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(out + i, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  scalar::multiply(out + i, a + i, b + i, n - i);
}

void accumulate_norm(double* acc, const cplx* x, double scale, std::size_t n) {
  const double* p = reinterpret_cast<const double*>(x);
  const float64x2_t s = vdupq_n_f64(scale);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t v0 = vld1q_f64(p + 2 * i);
    const float64x2_t v1 = vld1q_f64(p + 2 * i + 2);
    // Pairwise add of squares: [re0^2 + im0^2, re1^2 + im1^2].
    const float64x2_t norms = vpaddq_f64(vmulq_f64(v0, v0), vmulq_f64(v1, v1));
    vst1q_f64(acc + i, vaddq_f64(vld1q_f64(acc + i), vmulq_f64(s, norms)));
  }
  scalar::accumulate_norm(acc + i, x + i, scale, n - i);
}

void multiply_conj(cplx* out, const cplx* z, const cplx* c, std::size_t n) {
  const double* zp = reinterpret_cast<const double*>(z);
  const double* cp = reinterpret_cast<const double*>(c);
  double* op = reinterpret_cast<double*>(out);
  const float64x2_t odd_sign = {1.0, -1.0};
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t zv = vld1q_f64(zp + 2 * i);
    const float64x2_t cv = vld1q_f64(cp + 2 * i);
    const float64x2_t zr = vdupq_laneq_f64(zv, 0);
    const float64x2_t zi = vdupq_laneq_f64(zv, 1);
    const float64x2_t cs = vextq_f64(cv, cv, 1);
    const float64x2_t t1 = vmulq_f64(zr, cv);
    const float64x2_t t2 = vmulq_f64(zi, cs);
    // Multiplying by -1 is an exact sign flip.
    vst1q_f64(op + 2 * i, vaddq_f64(t2, vmulq_f64(t1, odd_sign)));
  }
}

void central_difference(double* out, const double* x, double scale, std::size_t n) {
  if (n < 3) return;
  const std::size_t m = n - 2;
  const float64x2_t s = vdupq_n_f64(scale);
  std::size_t i = 0;
  for (; i + 2 <= m; i += 2) {
    vst1q_f64(out + i, vmulq_f64(s, vsubq_f64(vld1q_f64(x + i + 2), vld1q_f64(x + i))));
  }
  for (; i < m; ++i) out[i] = scale * (x[i + 2] - x[i]);
}

const KernelTable table{
    "neon",        scale_complex, scale_complex_const, multiply, accumulate_norm,
    multiply_conj, central_difference,
};

}  // namespace
}  // namespace neon

const KernelTable* neon_table_if_built() { return &neon::table; }

}  // namespace yigmag::kernels

#else

namespace yigmag::kernels {
const KernelTable* neon_table_if_built() { return nullptr; }
}  // namespace yigmag::kernels

#endif
