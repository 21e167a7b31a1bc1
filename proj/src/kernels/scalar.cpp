#include "kernels_impl.hpp"

namespace yigmag::kernels::scalar {

void scale_complex(cplx* x, const double* gain, std::size_t n) {
  double* p = reinterpret_cast<double*>(x);
  for (std::size_t i = 0; i < n; ++i) {
    p[2 * i] = p[2 * i] * gain[i];
    p[2 * i + 1] = p[2 * i + 1] * gain[i];
  }
}

void scale_complex_const(cplx* x, double factor, std::size_t n) {
  double* p = reinterpret_cast<double*>(x);
  for (std::size_t i = 0; i < 2 * n; ++i) p[i] = p[i] * factor;
}

void multiply(double* out, const double* a, const double* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void accumulate_norm(double* acc, const cplx* x, double scale, std::size_t n) {
  const double* p = reinterpret_cast<const double*>(x);
  for (std::size_t i = 0; i < n; ++i) {
    const double re = p[2 * i];
    const double im = p[2 * i + 1];
    const double s = re * re + im * im;
    acc[i] = acc[i] + scale * s;
  }
}

void multiply_conj(cplx* out, const cplx* z, const cplx* c, std::size_t n) {
  const double* zp = reinterpret_cast<const double*>(z);
  const double* cp = reinterpret_cast<const double*>(c);
  double* op = reinterpret_cast<double*>(out);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = zp[2 * i];
    const double b = zp[2 * i + 1];
    const double cr = cp[2 * i];
    const double ci = cp[2 * i + 1];
    // (a + ib)(cr - i ci); written out so std::complex's NaN recovery path
    // never runs and the vector variants can match it bit for bit.
    op[2 * i] = b * ci + a * cr;
    op[2 * i + 1] = b * cr + -(a * ci);
  }
}

void central_difference(double* out, const double* x, double scale, std::size_t n) {
  if (n < 3) return;
  for (std::size_t i = 0; i + 2 < n; ++i) out[i] = scale * (x[i + 2] - x[i]);
}

}  // namespace yigmag::kernels::scalar
