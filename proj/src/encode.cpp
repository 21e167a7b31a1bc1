#include "yigmag/encode.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "yigmag/constants.hpp"
#include "yigmag/fft.hpp"
#include "yigmag/kernels.hpp"

namespace yigmag {

using constants::gamma;
using constants::two_pi;

void FieldSeries::validate(Warnings* warnings) const {
  if (!(std::isfinite(sample_rate) && sample_rate > 0.0)) {
    throw InvalidInput("FieldSeries: sample rate must be positive");
  }
  if (!std::isfinite(b0)) throw InvalidInput("FieldSeries: non-finite b0");
  double peak = 0.0;
  for (double v : samples) {
    if (!std::isfinite(v)) throw InvalidInput("FieldSeries: non-finite sample");
    peak = std::max(peak, std::abs(v));
  }
  if (b0 != 0.0 && peak / std::abs(b0) > 1e-3) {
    warn(warnings, "FieldSeries: max|B_sen|/b0 > 1e-3, outside the linear projection regime");
  }
}

std::vector<double> integrate_deviation_phase(const FieldSeries& field) {
  std::vector<double> phi(field.samples.size());
  if (phi.empty()) return phi;
  const double half_step = 0.5 * gamma / field.sample_rate;
  double acc = 0.0;
  phi[0] = 0.0;
  for (std::size_t n = 1; n < phi.size(); ++n) {
    acc += half_step * (field.samples[n - 1] + field.samples[n]);
    phi[n] = acc;
  }
  return phi;
}

std::vector<double> integrate_phase(const FieldSeries& field) {
  std::vector<double> phi = integrate_deviation_phase(field);
  const double w0 = gamma * field.b0;
  for (std::size_t n = 0; n < phi.size(); ++n) {
    phi[n] += w0 * (static_cast<double>(n) / field.sample_rate);
  }
  return phi;
}

double effective_carrier_hz(double b0, double carrier_offset_hz) {
  const long double f = static_cast<long double>(constants::gamma_hz) * b0 +
                        static_cast<long double>(carrier_offset_hz);
  return static_cast<double>(f);
}

namespace {

// 2 pi frac(n f / fs), evaluated so that n f / fs keeps ~1e-19 relative
// precision even for n ~ 1e9.
struct CarrierPhase {
  long double cycles_per_sample;

  double operator()(std::size_t n) const {
    long double c = static_cast<long double>(n) * cycles_per_sample;
    c -= std::floor(c);
    return static_cast<double>(c * 2.0L * std::numbers::pi_v<long double>);
  }
};

}  // namespace

Waveform synthesize_waveform(const FieldSeries& field, const SynthesisOptions& options,
                             Warnings* warnings) {
  field.validate(warnings);
  const std::size_t n = field.samples.size();
  if (!options.alpha.empty() && options.alpha.size() != n) {
    throw InvalidInput("synthesize_waveform: alpha length differs from field length");
  }

  const long double carrier = static_cast<long double>(constants::gamma_hz) * field.b0 +
                              static_cast<long double>(options.carrier_offset_hz);
  double peak = 0.0;
  for (double v : field.samples) peak = std::max(peak, std::abs(v));
  const double excursion = constants::gamma_hz * peak + options.modulation_bandwidth_hz;
  const double c = static_cast<double>(carrier);
  if (!(c - excursion > 0.0) || !(c + excursion < 0.5 * field.sample_rate)) {
    throw SamplingError("synthesize_waveform: carrier " + std::to_string(c) +
                        " Hz with excursion " + std::to_string(excursion) +
                        " Hz does not fit in (0, fs/2)");
  }

  std::vector<double> phi = integrate_deviation_phase(field);
  if (options.leeson) {
    const std::vector<double> noise =
        synthesize_phase_noise(*options.leeson, field.sample_rate, n, options.seed, warnings);
    for (std::size_t i = 0; i < n; ++i) phi[i] += noise[i];
  }

  const CarrierPhase ramp{carrier / static_cast<long double>(field.sample_rate)};
  Waveform w;
  w.sample_rate = field.sample_rate;
  w.carrier_hz = c;
  w.samples = std::move(phi);
  for (std::size_t i = 0; i < n; ++i) w.samples[i] = std::cos(ramp(i) + w.samples[i]);
  if (!options.alpha.empty()) {
    for (std::size_t i = 0; i < n; ++i) w.samples[i] *= 1.0 + options.alpha[i];
  }
  return w;
}

double modulation_index(double b_rms, double omega_m) {
  if (!(omega_m > 0.0)) throw DomainError("modulation_index: omega_m must be positive");
  return std::sqrt(2.0) * gamma * b_rms / omega_m;
}

double predict_sideband(double b_rms, double omega_m, Warnings* warnings) {
  if (!(omega_m > 0.0)) throw DomainError("predict_sideband: omega_m must be positive");
  if (modulation_index(b_rms, omega_m) > 0.1) {
    warn(warnings, "predict_sideband: modulation index above 0.1, narrowband result inaccurate");
  }
  return gamma * b_rms / (std::sqrt(2.0) * omega_m);
}

std::vector<double> sideband_spectrum_exact(double b_rms, double omega_m, int k_max) {
  if (k_max < 1) throw InvalidInput("sideband_spectrum_exact: k_max must be >= 1");
  const double beta = modulation_index(b_rms, omega_m);
  std::vector<double> out(2 * static_cast<std::size_t>(k_max) + 1);
  for (int k = 0; k <= k_max; ++k) {
    const double j = std::cyl_bessel_j(static_cast<double>(k), std::abs(beta));
    // J_k(-x) = (-1)^k J_k(x)
    const double jk = (beta < 0.0 && (k & 1)) ? -j : j;
    out[static_cast<std::size_t>(k_max + k)] = jk;
    out[static_cast<std::size_t>(k_max - k)] = (k & 1) ? -jk : jk;
  }
  return out;
}

Waveform mix_down(const Waveform& w, double lo_hz, double if_hz, const MixOptions& options) {
  const double fs = w.sample_rate;
  if (!(fs > 0.0)) throw InvalidInput("mix_down: sample rate must be positive");
  if (options.decimation < 1) throw InvalidInput("mix_down: decimation must be >= 1");
  if (!(if_hz > 0.0)) throw SamplingError("mix_down: intermediate frequency must be positive");
  if (!(lo_hz > 0.0) || !(lo_hz < w.carrier_hz)) {
    throw SamplingError("mix_down: lo must lie below the carrier");
  }
  if (std::abs(w.carrier_hz - lo_hz - if_hz) > 1e-9 * std::max(1.0, w.carrier_hz)) {
    throw InvalidInput("mix_down: carrier - lo does not equal if");
  }
  const double cutoff = std::min(0.25 * fs, 0.5 * fs / static_cast<double>(options.decimation));
  const double bw = options.modulation_bandwidth_hz;
  if (!(if_hz - bw > 0.0) || !(if_hz + bw < cutoff)) {
    throw SamplingError("mix_down: difference band does not fit below the low-pass cutoff");
  }
  double image = std::fmod(w.carrier_hz + lo_hz, fs);
  if (image > 0.5 * fs) image = fs - image;
  if (!(image - bw > cutoff)) {
    throw SamplingError("mix_down: sum-frequency image overlaps the difference band");
  }

  const std::size_t n = w.samples.size();
  const CarrierPhase lo{static_cast<long double>(lo_hz) / static_cast<long double>(fs)};
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = std::cos(lo(i));
  kernels::active().multiply(x.data(), x.data(), w.samples.data(), n);

  std::vector<fft::cplx> spec(n / 2 + 1);
  fft::rfft_into(x, spec);
  x.clear();
  x.shrink_to_fit();
  const double df = fs / static_cast<double>(n);
  for (std::size_t k = 0; k < spec.size(); ++k) {
    if (static_cast<double>(k) * df >= cutoff) spec[k] = 0.0;
  }
  kernels::active().scale_complex_const(spec.data(), 2.0, spec.size());
  std::vector<double> y = fft::irfft(std::move(spec), n);

  Waveform out;
  out.carrier_hz = if_hz;
  out.sample_rate = fs / static_cast<double>(options.decimation);
  if (options.decimation == 1) {
    out.samples = std::move(y);
  } else {
    out.samples.reserve(n / options.decimation + 1);
    for (std::size_t i = 0; i < n; i += options.decimation) out.samples.push_back(y[i]);
  }
  return out;
}

}  // namespace yigmag
