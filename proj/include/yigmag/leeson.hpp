#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "yigmag/error.hpp"

// Leeson phase-noise model.
//
// L(f) is the single-sideband phase noise: the positive-frequency half of the
// double-sided phase PSD. A one-sided phase PSD S_phi(f) is therefore 2 L(f).
//
// The f_L^2/f^2 term is regenerative: the loop integrates in-loop phase
// fluctuations slower than the resonator half-width, so additive amplifier
// noise is amplified by (1 + f_L^2/f^2) at the output (see leeson_effect).
// Buffer and mixer noise outside the loop is not modelled.
namespace yigmag {

struct LeesonModel {
  double f_leeson = 0.0;     // Hz
  double f_corner = 0.0;     // Hz
  double noise_factor = 0.0;
  double p_sustain = 0.0;    // W
  double temperature = 0.0;  // K

  void validate() const;
};

struct PhaseNoiseSpectrum {
  std::vector<double> offsets;  // Hz, strictly increasing
  std::vector<double> l_dbchz;

  void validate() const;
};

// sqrt(L(f_m)) in 1/sqrt(Hz).
double leeson_l_half(const LeesonModel& model, double f_m);

double leeson_l_dbchz(const LeesonModel& model, double f_m);

// White floor F k T / (2 P_s), 1/Hz.
double leeson_floor(const LeesonModel& model);

PhaseNoiseSpectrum evaluate(const LeesonModel& model, std::span<const double> offsets);

struct LeesonFit {
  LeesonModel model;
  double residual_rms_db = 0.0;
  int iterations = 0;
};

// Least squares in dB against log-spaced offsets, equal weights, over
// offsets >= f_min. F enters additively in dB, so a coarse (f_L, f_c) grid
// with F solved in closed form seeds Levenberg-Marquardt in
// (ln f_L, ln f_c, ln F).
LeesonFit fit_leeson(const PhaseNoiseSpectrum& spectrum, double p_sustain, double temperature,
                     double f_min = 3.0e3);

// Output phase PSD for in-loop additive phase PSD s_psi.
double leeson_effect(double s_psi, double f_m, double f_leeson);

// Phase time series (rad) whose PSD follows the model. White Gaussian noise
// at the floor is shaped in the frequency domain by
// sqrt((f_L^2/f^2 + 1)(f_c/f + 1)); the DC bin is zeroed.
std::vector<double> synthesize_phase_noise(const LeesonModel& model, double sample_rate,
                                           std::size_t n_samples, std::uint64_t seed,
                                           Warnings* warnings = nullptr);

inline constexpr std::size_t min_synthesis_length = std::size_t{1} << 14;

}  // namespace yigmag
