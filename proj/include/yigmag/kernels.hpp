#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

// Data-parallel inner loops shared by the signal chain.
//
// Every kernel exists as a scalar reference and, where the target allows, as
// an AVX2 or NEON variant. The vector variants perform the same IEEE
// operations in the same order as the scalar code (no FMA contraction, no
// reassociation), so all variants produce bit-identical output. The active
// table is picked once at startup from CPU features and can be forced with
// the YIGMAG_KERNELS environment variable ("scalar", "avx2", "neon").
namespace yigmag::kernels {

using cplx = std::complex<double>;

struct KernelTable {
  const char* name;

  // x[i] *= gain[i] for both real and imaginary parts.
  void (*scale_complex)(cplx* x, const double* gain, std::size_t n);

  // x[i] *= factor.
  void (*scale_complex_const)(cplx* x, double factor, std::size_t n);

  // out[i] = a[i] * b[i].
  void (*multiply)(double* out, const double* a, const double* b, std::size_t n);

  // acc[i] += scale * (re(x[i])^2 + im(x[i])^2).
  void (*accumulate_norm)(double* acc, const cplx* x, double scale, std::size_t n);

  // out[i] = z[i] * conj(c[i]).
  void (*multiply_conj)(cplx* out, const cplx* z, const cplx* c, std::size_t n);

  // out[i] = scale * (x[i + 2] - x[i]) for i in [0, n - 2). Central difference
  // centred on x[i + 1].
  void (*central_difference)(double* out, const double* x, double scale, std::size_t n);
};

const KernelTable& scalar_table();

// Null when the variant was not compiled in or the CPU lacks the feature.
const KernelTable* avx2_table();
const KernelTable* neon_table();

// Every table usable on this machine, scalar first.
std::vector<const KernelTable*> available_tables();

const KernelTable& active();

// Force a variant by name. Returns false if it is unavailable.
bool select(std::string_view name);

// Convenience wrappers over the active table.
inline void scale_complex(std::span<cplx> x, std::span<const double> gain) {
  active().scale_complex(x.data(), gain.data(), x.size());
}
inline void scale_complex(std::span<cplx> x, double factor) {
  active().scale_complex_const(x.data(), factor, x.size());
}
inline void multiply(std::span<double> out, std::span<const double> a, std::span<const double> b) {
  active().multiply(out.data(), a.data(), b.data(), out.size());
}
inline void accumulate_norm(std::span<double> acc, std::span<const cplx> x, double scale) {
  active().accumulate_norm(acc.data(), x.data(), scale, acc.size());
}
inline void multiply_conj(std::span<cplx> out, std::span<const cplx> z, std::span<const cplx> c) {
  active().multiply_conj(out.data(), z.data(), c.data(), out.size());
}

}  // namespace yigmag::kernels
