#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "yigmag/error.hpp"
#include "yigmag/leeson.hpp"

namespace yigmag {

// B(t) = b0 + samples[n], sampled uniformly.
struct FieldSeries {
  double sample_rate = 0.0;  // Hz
  std::vector<double> samples;  // T, field beyond the bias
  double b0 = 0.0;  // T

  // Throws InvalidInput on a bad rate or non-finite samples; warns when
  // max|B_sen|/b0 exceeds 1e-3 (linear projection regime).
  void validate(Warnings* warnings = nullptr) const;
  double duration() const { return static_cast<double>(samples.size()) / sample_rate; }
};

// Carrier-normalized real voltage, V0 = 1.
struct Waveform {
  double sample_rate = 0.0;
  std::vector<double> samples;
  double carrier_hz = 0.0;
};

// Total phase: gamma b0 t[n] plus the trapezoidal integral of gamma B_sen,
// phi[0] = 0.
std::vector<double> integrate_phase(const FieldSeries& field);

// Only the field-driven part, gamma * cumtrapz(B_sen).
std::vector<double> integrate_deviation_phase(const FieldSeries& field);

struct SynthesisOptions {
  std::optional<LeesonModel> leeson;
  // Places the numeric carrier at gamma b0 / 2pi + carrier_offset_hz, a
  // representable stand-in for the physical microwave carrier.
  double carrier_offset_hz = 0.0;
  std::uint64_t seed = 0;
  // Field bandwidth used in the Nyquist check on top of peak deviation.
  double modulation_bandwidth_hz = 0.0;
  // Optional multiplicative amplitude noise, v = (1 + alpha) cos(...).
  std::span<const double> alpha;
};

// Nominal numeric carrier frequency gamma b0 / 2pi + offset.
double effective_carrier_hz(double b0, double carrier_offset_hz);

// v[n] = (1 + alpha[n]) cos(phi[n] + phi_noise[n] + 2 pi carrier_offset t[n]).
// The linear carrier ramp is reduced modulo 2 pi in extended precision before
// the deviation is added, so long records keep full phase resolution.
Waveform synthesize_waveform(const FieldSeries& field, const SynthesisOptions& options,
                             Warnings* warnings = nullptr);

// Narrowband FM sideband amplitude relative to the carrier,
// s = gamma b_rms / (sqrt(2) omega_m). Warns when beta > 0.1.
double predict_sideband(double b_rms, double omega_m, Warnings* warnings = nullptr);

double modulation_index(double b_rms, double omega_m);

// J_k(beta) for k = -k_max .. k_max, element k_max is the carrier.
std::vector<double> sideband_spectrum_exact(double b_rms, double omega_m, int k_max);

struct MixOptions {
  // Keep every decimation-th sample after filtering. The brick wall sits at
  // min(fs/4, fs/(2 decimation)).
  std::size_t decimation = 1;
  // Band occupied by modulation around the carrier, for the overlap check.
  double modulation_bandwidth_hz = 0.0;
};

// Ideal mixer: multiply by cos(2 pi lo t), brick-wall low-pass, x2 so the
// difference carrier has unit amplitude.
Waveform mix_down(const Waveform& w, double lo_hz, double if_hz, const MixOptions& options = {});

}  // namespace yigmag
