#pragma once

#include "yigmag/kernels.hpp"

namespace yigmag::kernels {

namespace scalar {
void scale_complex(cplx* x, const double* gain, std::size_t n);
void scale_complex_const(cplx* x, double factor, std::size_t n);
void multiply(double* out, const double* a, const double* b, std::size_t n);
void accumulate_norm(double* acc, const cplx* x, double scale, std::size_t n);
void multiply_conj(cplx* out, const cplx* z, const cplx* c, std::size_t n);
void central_difference(double* out, const double* x, double scale, std::size_t n);
}  // namespace scalar

// Defined in avx2.cpp / neon.cpp; null when the variant is not built.
const KernelTable* avx2_table_if_built();
const KernelTable* neon_table_if_built();

}  // namespace yigmag::kernels
