#include "yigmag/demod.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "yigmag/constants.hpp"
#include "yigmag/fft.hpp"
#include "yigmag/kernels.hpp"

namespace yigmag {

using cplx = std::complex<double>;
using constants::pi;
using constants::two_pi;

namespace {

// One-sided spectrum of a real record to its analytic signal, in place of a
// length-n complex buffer.
void build_analytic(std::span<const double> x, std::vector<cplx>& full,
                    std::vector<cplx>* half_out) {
  const std::size_t n = x.size();
  std::vector<cplx> half(n / 2 + 1);
  fft::rfft_into(x, half);
  full.assign(n, cplx(0.0, 0.0));
  full[0] = half[0];
  const std::size_t pos_end = (n % 2 == 0) ? n / 2 : (n + 1) / 2;
  for (std::size_t k = 1; k < pos_end; ++k) full[k] = 2.0 * half[k];
  if (n % 2 == 0) full[n / 2] = half[n / 2];
  if (half_out) *half_out = std::move(half);
  fft::fft_inplace(full, true);
  kernels::active().scale_complex_const(full.data(), 1.0 / static_cast<double>(n), n);
}

}  // namespace

AnalyticSignal analytic_signal(const Waveform& w, Warnings* warnings) {
  if (w.samples.size() < 4) throw InvalidInput("analytic_signal: record too short");
  AnalyticSignal a;
  a.sample_rate = w.sample_rate;
  a.if_hz = w.carrier_hz;
  std::vector<cplx> half;
  build_analytic(w.samples, a.samples, warnings ? &half : nullptr);
  if (warnings) {
    const double df = w.sample_rate / static_cast<double>(w.samples.size());
    double total = 0.0;
    double outside = 0.0;
    for (std::size_t k = 1; k < half.size(); ++k) {
      const double p = std::norm(half[k]);
      const double f = df * static_cast<double>(k);
      total += p;
      if (f < 0.1 * w.carrier_hz || f > 1.9 * w.carrier_hz) outside += p;
    }
    if (total > 0.0 && outside / total > 1e-6) {
      warn(warnings, "analytic_signal: signal band reaches within 10% of the if or of DC, "
                     "Bedrosian condition violated");
    }
  }
  return a;
}

AnalyticSignal analytic_signal_blocked(const Waveform& w, std::size_t block_size,
                                       std::size_t margin) {
  if (block_size == 0) throw InvalidInput("analytic_signal_blocked: block size must be positive");
  const std::size_t n = w.samples.size();
  if (n < 4) throw InvalidInput("analytic_signal_blocked: record too short");
  AnalyticSignal a;
  a.sample_rate = w.sample_rate;
  a.if_hz = w.carrier_hz;
  a.samples.resize(n);
  std::vector<cplx> buf;
  for (std::size_t start = 0; start < n; start += block_size) {
    const std::size_t stop = std::min(n, start + block_size);
    const std::size_t lo = start >= margin ? start - margin : 0;
    const std::size_t hi = std::min(n, stop + margin);
    build_analytic(std::span<const double>(w.samples).subspan(lo, hi - lo), buf, nullptr);
    std::copy(buf.begin() + static_cast<std::ptrdiff_t>(start - lo),
              buf.begin() + static_cast<std::ptrdiff_t>(stop - lo),
              a.samples.begin() + static_cast<std::ptrdiff_t>(start));
  }
  return a;
}

namespace {

void check_if_step(const AnalyticSignal& a, const char* who) {
  if (!(a.sample_rate > 0.0)) throw InvalidInput(std::string(who) + ": sample rate must be positive");
  if (two_pi * a.if_hz / a.sample_rate >= pi) {
    throw NumericalError(std::string(who) + ": sample rate below twice the if, phase ambiguous");
  }
}

// Unwraps principal values in place. The 2 pi multiple is tracked as an
// integer so long records accumulate no rounding in the offset.
void unwrap_in_place(std::vector<double>& phase, const char* who) {
  std::int64_t turns = 0;
  double prev = phase.empty() ? 0.0 : phase[0];
  for (std::size_t i = 1; i < phase.size(); ++i) {
    const double raw = phase[i];
    double d = raw - prev;
    prev = raw;
    if (d > pi) {
      --turns;
      d -= two_pi;
    } else if (d <= -pi) {
      ++turns;
      d += two_pi;
    }
    if (std::abs(d) > 0.99 * pi) {
      throw NumericalError(std::string(who) + ": phase step near pi at sample " +
                           std::to_string(i) + ", unwrap ambiguous");
    }
    phase[i] = raw + two_pi * static_cast<double>(turns);
  }
}

}  // namespace

std::vector<double> unwrap_phase(const AnalyticSignal& a) {
  check_if_step(a, "unwrap_phase");
  std::vector<double> phase(a.samples.size());
  for (std::size_t i = 0; i < phase.size(); ++i) phase[i] = std::arg(a.samples[i]);
  unwrap_in_place(phase, "unwrap_phase");
  return phase;
}

RecoveredField recover_field(const AnalyticSignal& a, double b0, double lo_offset_hz,
                             DerivativeScheme scheme) {
  check_if_step(a, "recover_field");
  const std::size_t n = a.samples.size();
  if (n < 8) throw InvalidInput("recover_field: record too short");

  // Residual phase after removing the nominal IF ramp.
  std::vector<double> psi(n);
  {
    constexpr std::size_t chunk = 4096;
    std::vector<cplx> ref(chunk);
    std::vector<cplx> rot(chunk);
    const long double cycles = static_cast<long double>(a.if_hz) / a.sample_rate;
    for (std::size_t start = 0; start < n; start += chunk) {
      const std::size_t len = std::min(chunk, n - start);
      for (std::size_t j = 0; j < len; ++j) {
        long double c = static_cast<long double>(start + j) * cycles;
        c -= std::floor(c);
        const double ph = static_cast<double>(c * 2.0L * std::numbers::pi_v<long double>);
        ref[j] = cplx(std::cos(ph), std::sin(ph));
      }
      kernels::active().multiply_conj(rot.data(), a.samples.data() + start, ref.data(), len);
      for (std::size_t j = 0; j < len; ++j) psi[start + j] = std::arg(rot[j]);
    }
  }
  unwrap_in_place(psi, "recover_field");

  // Constant part: (if + lo_offset)/gamma_hz - b0, in extended precision to
  // avoid cancelling two ~0.2 T numbers.
  const double offset = static_cast<double>(
      (static_cast<long double>(a.if_hz) + static_cast<long double>(lo_offset_hz)) /
          static_cast<long double>(constants::gamma_hz) -
      static_cast<long double>(b0));

  const double fs = a.sample_rate;
  // C[n] centred on n+1 after the kernel; shift into place.
  std::vector<double> c(n, 0.0);
  kernels::active().central_difference(c.data() + 1, psi.data(), fs / (2.0 * constants::gamma), n);
  c[0] = (psi[1] - psi[0]) * fs / constants::gamma;
  c[n - 1] = (psi[n - 1] - psi[n - 2]) * fs / constants::gamma;

  RecoveredField out;
  out.field.sample_rate = fs;
  out.field.b0 = b0;
  out.field.samples.assign(n, 0.0);
  std::vector<double>& b = out.field.samples;

  if (scheme == DerivativeScheme::central) {
    for (std::size_t i = 0; i < n; ++i) b[i] = c[i] + offset;
    out.edge_samples = 1;
    return out;
  }

  // s2 = -(D/4) C with D the second difference; B = C + s2 + s2(s2).
  std::vector<double> s2(n, 0.0);
  for (std::size_t i = 2; i + 2 < n; ++i) s2[i] = -0.25 * (c[i - 1] - 2.0 * c[i] + c[i + 1]);
  for (std::size_t i = 0; i < n; ++i) b[i] = c[i];
  for (std::size_t i = 2; i + 2 < n; ++i) b[i] += s2[i];
  for (std::size_t i = 3; i + 3 < n; ++i) b[i] += -0.25 * (s2[i - 1] - 2.0 * s2[i] + s2[i + 1]);
  for (std::size_t i = 0; i < n; ++i) b[i] += offset;
  out.edge_samples = 3;
  return out;
}

}  // namespace yigmag
