#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

// Thin RAII layer over FFTW. All transforms are unnormalized in the forward
// direction; the inverse real transform divides by n so irfft(rfft(x)) == x.
// Plans are created with FFTW_ESTIMATE, which keeps results independent of
// planner timing and therefore reproducible run to run.
namespace yigmag::fft {

using cplx = std::complex<double>;

// Forward real-to-complex transform into out[0 .. n/2]. out must hold at
// least n/2 + 1 elements; input is preserved.
void rfft_into(std::span<const double> in, std::span<cplx> out);

std::vector<cplx> rfft(std::span<const double> in);

// Inverse of rfft for a length-n real signal. spectrum holds n/2 + 1 bins and
// is consumed (FFTW's c2r overwrites its input).
std::vector<double> irfft(std::vector<cplx> spectrum, std::size_t n);

// In-place complex transform, unnormalized in both directions.
void fft_inplace(std::span<cplx> data, bool inverse);

}  // namespace yigmag::fft
