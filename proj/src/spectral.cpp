#include "yigmag/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "yigmag/constants.hpp"
#include "yigmag/fft.hpp"
#include "yigmag/kernels.hpp"

namespace yigmag {

std::vector<double> tukey_window(std::size_t n, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidInput("tukey_window: alpha outside [0, 1]");
  std::vector<double> w(n, 1.0);
  if (n < 2 || alpha == 0.0) return w;
  const double m = static_cast<double>(n - 1);
  const double edge = 0.5 * alpha * m;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = static_cast<double>(i);
    if (x < edge) {
      w[i] = 0.5 * (1.0 - std::cos(constants::pi * x / edge));
    } else if (x > m - edge) {
      w[i] = 0.5 * (1.0 - std::cos(constants::pi * (m - x) / edge));
    }
  }
  return w;
}

namespace {

struct Segmenter {
  std::size_t len = 0;
  std::size_t count = 0;
  std::vector<double> window;
  double norm = 0.0;  // 2 / (fs sum w^2)
};

Segmenter make_segmenter(const FieldSeries& field, double segment_seconds, double tukey_alpha,
                         const char* who) {
  if (!(field.sample_rate > 0.0)) throw InvalidInput(std::string(who) + ": sample rate must be positive");
  if (!(segment_seconds > 0.0)) throw InvalidInput(std::string(who) + ": segment length must be positive");
  if (!(tukey_alpha >= 0.0 && tukey_alpha <= 1.0)) {
    throw InvalidInput(std::string(who) + ": tukey alpha outside [0, 1]");
  }
  Segmenter s;
  s.len = static_cast<std::size_t>(std::llround(segment_seconds * field.sample_rate));
  if (s.len < 4) throw InvalidInput(std::string(who) + ": segment shorter than 4 samples");
  s.count = field.samples.size() / s.len;
  if (s.count < 2) throw InvalidInput(std::string(who) + ": record shorter than two segments");
  s.window = tukey_window(s.len, tukey_alpha);
  double sw2 = 0.0;
  for (double v : s.window) sw2 += v * v;
  s.norm = 2.0 / (field.sample_rate * sw2);
  return s;
}

// Adds the segment's one-sided PSD (bins 1 .. len/2) times weight into acc.
void accumulate_segment(const FieldSeries& field, const Segmenter& seg, std::size_t index,
                        double weight, std::vector<double>& work, std::vector<fft::cplx>& spec,
                        std::vector<double>& acc) {
  const double* x = field.samples.data() + index * seg.len;
  kernels::active().multiply(work.data(), x, seg.window.data(), seg.len);
  fft::rfft_into(work, spec);
  const std::size_t bins = seg.len / 2;
  kernels::active().accumulate_norm(acc.data(), spec.data() + 1, weight * seg.norm, bins);
  if (seg.len % 2 == 0) {
    // Nyquist bin has no negative-frequency partner.
    acc[bins - 1] -= 0.5 * weight * seg.norm * std::norm(spec[bins]);
  }
}

AsdSpectrum empty_spectrum(const FieldSeries& field, const Segmenter& seg, double alpha,
                           SpectralUnits units) {
  AsdSpectrum out;
  out.bin_hz = field.sample_rate / static_cast<double>(seg.len);
  out.tukey_alpha = alpha;
  out.units = units;
  const std::size_t bins = seg.len / 2;
  out.freqs.resize(bins);
  for (std::size_t k = 0; k < bins; ++k) out.freqs[k] = out.bin_hz * static_cast<double>(k + 1);
  out.asd.assign(bins, 0.0);
  return out;
}

}  // namespace

AsdSpectrum field_asd(const FieldSeries& field, double segment_seconds, double tukey_alpha,
                      SpectralUnits units) {
  const Segmenter seg = make_segmenter(field, segment_seconds, tukey_alpha, "field_asd");
  AsdSpectrum out = empty_spectrum(field, seg, tukey_alpha, units);
  out.segments = seg.count;
  std::vector<double> work(seg.len);
  std::vector<fft::cplx> spec(seg.len / 2 + 1);
  const double weight = 1.0 / static_cast<double>(seg.count);
  for (std::size_t i = 0; i < seg.count; ++i) {
    accumulate_segment(field, seg, i, weight, work, spec, out.asd);
  }
  if (units == SpectralUnits::asd) {
    for (double& v : out.asd) v = std::sqrt(std::max(v, 0.0));
  }
  return out;
}

std::vector<AsdSpectrum> segment_asds(const FieldSeries& field, double segment_seconds,
                                      double tukey_alpha) {
  const Segmenter seg = make_segmenter(field, segment_seconds, tukey_alpha, "segment_asds");
  std::vector<double> work(seg.len);
  std::vector<fft::cplx> spec(seg.len / 2 + 1);
  std::vector<AsdSpectrum> out;
  out.reserve(seg.count);
  for (std::size_t i = 0; i < seg.count; ++i) {
    AsdSpectrum s = empty_spectrum(field, seg, tukey_alpha, SpectralUnits::asd);
    s.segments = 1;
    accumulate_segment(field, seg, i, 1.0, work, spec, s.asd);
    for (double& v : s.asd) v = std::sqrt(std::max(v, 0.0));
    out.push_back(std::move(s));
  }
  return out;
}

std::size_t bin_index(const AsdSpectrum& s, double f) {
  if (s.freqs.empty() || !(s.bin_hz > 0.0)) throw InvalidInput("bin_index: empty spectrum");
  const double k = std::round(f / s.bin_hz) - 1.0;
  if (k < 0.0 || k >= static_cast<double>(s.freqs.size()) ||
      std::abs(s.freqs[static_cast<std::size_t>(k)] - f) > 0.5 * s.bin_hz) {
    throw InvalidInput("bin_index: no bin at " + std::to_string(f) + " Hz");
  }
  return static_cast<std::size_t>(k);
}

std::vector<double> chop_detect(std::span<const AsdSpectrum> spectra, double bin_hz) {
  std::vector<double> trace;
  if (spectra.empty()) return trace;
  const AsdSpectrum& first = spectra.front();
  const std::size_t k = bin_index(first, bin_hz);
  trace.reserve(spectra.size());
  for (const auto& s : spectra) {
    if (s.freqs.size() != first.freqs.size() || s.bin_hz != first.bin_hz) {
      throw InvalidInput("chop_detect: spectra do not share binning");
    }
    trace.push_back(s.asd[k]);
  }
  return trace;
}

double band_rms(const AsdSpectrum& s, double f_lo, double f_hi, std::span<const double> exclude,
                std::size_t guard) {
  double acc = 0.0;
  std::size_t count = 0;
  const double reach = (static_cast<double>(guard) + 0.5) * s.bin_hz;
  for (std::size_t k = 0; k < s.freqs.size(); ++k) {
    const double f = s.freqs[k];
    if (f < f_lo || f > f_hi) continue;
    bool skip = false;
    for (double e : exclude) skip = skip || std::abs(f - e) < reach;
    if (skip) continue;
    acc += s.asd[k] * s.asd[k];
    ++count;
  }
  if (count == 0) throw InvalidInput("band_rms: no bins in band");
  return std::sqrt(acc / static_cast<double>(count));
}

double sensitivity_at(double l_half, double f_m) {
  if (!(f_m > 0.0)) throw DomainError("sensitivity_at: offset must be positive");
  return std::sqrt(2.0) * f_m / constants::gamma_hz * l_half;
}

SpectralFunction sensitivity_from_phase_noise(SpectralFunction l_half) {
  return [l_half = std::move(l_half)](double f_m) { return sensitivity_at(l_half(f_m), f_m); };
}

SpectralFunction sensitivity_leeson_closed_form(const LeesonModel& model) {
  model.validate();
  return [model](double f_m) {
    if (!(f_m > 0.0)) throw DomainError("sensitivity_leeson_closed_form: offset must be positive");
    const double r = model.f_leeson / f_m;
    const double l = 0.5 * (r * r + 1.0) * (model.f_corner / f_m + 1.0) *
                     (model.noise_factor * constants::k_b * model.temperature / model.p_sustain);
    return std::sqrt(2.0) * f_m / constants::gamma_hz * std::sqrt(l);
  };
}

double sensitivity_plateau(const LeesonModel& model) {
  model.validate();
  const double kappa_l = 2.0 * constants::two_pi * model.f_leeson;
  return 0.5 * kappa_l / constants::gamma *
         std::sqrt(model.noise_factor * constants::k_b * model.temperature / model.p_sustain);
}

double ideal_interferometer_sensitivity(double kappa_l, double temperature, double p_sustain) {
  return 0.5 * kappa_l / constants::gamma * std::sqrt(constants::k_b * temperature / p_sustain);
}

}  // namespace yigmag
