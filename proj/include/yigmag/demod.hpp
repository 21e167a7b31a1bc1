#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "yigmag/encode.hpp"
#include "yigmag/error.hpp"

namespace yigmag {

struct AnalyticSignal {
  double sample_rate = 0.0;
  std::vector<std::complex<double>> samples;
  double if_hz = 0.0;
};

// Full-record FFT construction: zero negative bins, double positive bins.
// Warns (Bedrosian) when more than 1e-6 of the signal power lies below
// 0.1 if_hz or above 1.9 if_hz.
AnalyticSignal analytic_signal(const Waveform& w, Warnings* warnings = nullptr);

// Same construction in blocks of block_size output samples, each transformed
// with margin samples of context on both sides (overlap-save).
AnalyticSignal analytic_signal_blocked(const Waveform& w, std::size_t block_size,
                                       std::size_t margin = 4096);

// Continuous phase. Throws NumericalError when the nominal per-sample IF
// step reaches pi or any wrapped step exceeds 0.99 pi.
std::vector<double> unwrap_phase(const AnalyticSignal& a);

enum class DerivativeScheme {
  // (phi[n+1] - phi[n-1]) / (2 dt)
  central,
  // Central difference with its trapezoid response (B[n-1] + 2B[n] + B[n+1])/4
  // inverted to second order; residual error sin^6(pi f / fs).
  compensated,
};

struct RecoveredField {
  FieldSeries field;
  // Samples at each end computed with shortened or one-sided stencils.
  std::size_t edge_samples = 0;
};

// B_sen = (1/gamma) dphi/dt - b0, with phi the phase of the analytic signal
// and lo_offset_hz the frequency removed ahead of the digitizer (physical
// carrier = if_hz + lo_offset_hz). The IF ramp is divided out before
// unwrapping so only the deviation phase is differentiated.
RecoveredField recover_field(const AnalyticSignal& a, double b0, double lo_offset_hz,
                             DerivativeScheme scheme = DerivativeScheme::compensated);

}  // namespace yigmag
