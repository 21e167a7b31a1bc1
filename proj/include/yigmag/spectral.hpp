#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "yigmag/encode.hpp"
#include "yigmag/leeson.hpp"

namespace yigmag {

enum class SpectralUnits { asd, psd };

inline constexpr const char* single_sided_convention =
    "single-sided, +/- bins combined in quadrature";

// freqs start at bin 1. For SpectralUnits::asd values are T/sqrt(Hz), for
// psd T^2/Hz.
struct AsdSpectrum {
  std::vector<double> freqs;
  std::vector<double> asd;
  double bin_hz = 0.0;
  std::size_t segments = 0;
  double tukey_alpha = 0.0;
  SpectralUnits units = SpectralUnits::asd;
  std::string convention = single_sided_convention;
};

// Tukey (tapered cosine) window, symmetric, alpha = 0 rectangular and
// alpha = 1 Hann.
std::vector<double> tukey_window(std::size_t n, double alpha);

// Disjoint segments of segment_seconds, each Tukey-windowed and transformed.
// Bin k of a segment of N samples gives
//   P_k = 2 |X_k|^2 / (fs sum w^2),  ASD_k = sqrt(P_k)
// (factor 1 at the Nyquist bin), so a bin-centred sinusoid of rms A reads
// A sqrt(T) with a rectangular window and white noise of variance s^2 reads
// s sqrt(2/fs). Segments are combined as the mean of P, i.e. rms-averaged.
AsdSpectrum field_asd(const FieldSeries& field, double segment_seconds = 1.0,
                      double tukey_alpha = 0.01, SpectralUnits units = SpectralUnits::asd);

// One spectrum per segment, same normalization as field_asd.
std::vector<AsdSpectrum> segment_asds(const FieldSeries& field, double segment_seconds = 1.0,
                                      double tukey_alpha = 0.01);

// Value of the bin at bin_hz in each spectrum. Throws InvalidInput if the
// spectra disagree on binning or no bin lies within half a bin of bin_hz.
std::vector<double> chop_detect(std::span<const AsdSpectrum> spectra, double bin_hz);

// Index of the bin nearest f, or throws InvalidInput.
std::size_t bin_index(const AsdSpectrum& s, double f);

// rms of the ASD over [f_lo, f_hi], skipping +/- guard bins around each
// excluded frequency.
double band_rms(const AsdSpectrum& s, double f_lo, double f_hi,
                std::span<const double> exclude = {}, std::size_t guard = 2);

using SpectralFunction = std::function<double(double)>;

// eta(f) = sqrt(2) f / (gamma/2pi) * L^(1/2)(f).
double sensitivity_at(double l_half, double f_m);
SpectralFunction sensitivity_from_phase_noise(SpectralFunction l_half);

SpectralFunction sensitivity_leeson_closed_form(const LeesonModel& model);

// f_c << f << f_L limit: (1/2)(kappa_L/gamma) sqrt(F k T / P_s) with
// kappa_L = 4 pi f_L.
double sensitivity_plateau(const LeesonModel& model);

// Plateau with F = 1: thermal-noise-limited, optimally coupled transmission
// interferometer with an ideal amplifier.
double ideal_interferometer_sensitivity(double kappa_l, double temperature, double p_sustain);

}  // namespace yigmag
