#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "yigmag/demod.hpp"
#include "yigmag/encode.hpp"
#include "yigmag/fmr.hpp"
#include "yigmag/leeson.hpp"
#include "yigmag/spectral.hpp"

namespace yigmag {

struct Tone {
  double f_hz = 0.0;
  double b_rms_tesla = 0.0;
  double phase_rad = 0.0;
};

// Tones are on for the first duty * period_s of every period.
struct ChopSchedule {
  double period_s = 0.0;
  double duty = 0.5;

  bool on_at(double t) const;
};

struct SamplingPlan {
  double sample_rate_hz = 5.0e6;  // synthesis rate
  double if_hz = 1.0e6;
  // 0: synthesize directly at the IF. Otherwise synthesize at lo + if and
  // mix down, decimating by `decimation`.
  double lo_hz = 0.0;
  std::size_t decimation = 1;
  double duration_s = 10.0;
  // Extra record synthesized on both sides and discarded after
  // demodulation, so FFT edge ringing never reaches the analysed span.
  double guard_s = 0.1;

  double analysis_rate_hz() const { return sample_rate_hz / static_cast<double>(decimation); }
};

struct SpectralPlan {
  double segment_s = 1.0;
  double tukey_alpha = 0.01;
  double noise_band_lo_hz = 30.0e3;
  double noise_band_hi_hz = 40.0e3;
  double fit_f_min_hz = 3.0e3;
};

struct Scenario {
  ResonatorModel resonator;
  std::optional<LeesonModel> leeson;
  std::vector<Tone> tones;
  std::optional<ChopSchedule> chop;
  SamplingPlan sampling;
  SpectralPlan spectral;
  std::uint64_t seed = 1;

  void validate() const;
};

// Resonator with the coupling rates of the reference device and 0.178 T bias.
ResonatorModel reference_resonator();
// Leeson parameters fitted to the reference oscillator.
LeesonModel reference_leeson();

// 0.9 pT at 35 kHz, 10 s, chopped with a 2 s period.
Scenario reference_scenario();

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;
EnvLookup process_env();

// INI file, one section per block:
//   [run] seed reference_tones
//   [resonator] kappa0_hz kappa1_hz kappa2_hz b0_tesla ms_a_per_m
//               k1_over_mu0ms_tesla theta_rad demag_x demag_y demag_z
//   [leeson] enabled f_leeson_hz f_corner_hz noise_factor p_sustain_w |
//            p_sustain_dbm temperature_k
//   [sampling] sample_rate_hz if_hz lo_hz decimation duration_s guard_s
//   [spectral] segment_s tukey_alpha noise_band_lo_hz noise_band_hi_hz
//              fit_f_min_hz
//   [tone.<name>] f_hz b_rms_tesla phase_rad
//   [chop] enabled period_s duty
// Kappas are in Hz (kappa / 2pi). Unset keys keep reference_scenario()
// values; a file with any [tone.*] section replaces the reference tones, and
// reference_tones = false drops them otherwise.
// YIGMAG_<SECTION>_<KEY> in the environment overrides a key, with '.' in
// section names written as '_' (YIGMAG_TONE_A_F_HZ). Unknown sections or
// keys are a ConfigError; syntax errors a ParseError.
Scenario parse_scenario(std::istream& in, const std::string& source,
                        const EnvLookup& env = process_env());
Scenario load_scenario(const std::filesystem::path& path, const EnvLookup& env = process_env());

// Fully resolved configuration, the same keys as the INI file.
nlohmann::json scenario_json(const Scenario& s);

// Field program (tones times chop gate) sampled at `rate` for n samples,
// with the first sample at analysis time t0.
FieldSeries build_field(const Scenario& s, double rate, double t0, std::size_t n);

struct ChopSummary {
  std::vector<double> trace;  // T/sqrt(Hz) in the tone bin, one per segment
  std::vector<bool> on;
  double on_mean = 0.0;
  double off_mean = 0.0;
  double on_min = 0.0;
  double off_max = 0.0;
  double separation = 0.0;  // on_mean / off_mean
};

struct RunResult {
  FieldSeries recovered;  // analysed span only
  AsdSpectrum asd;
  std::optional<ChopSummary> chop;
  nlohmann::json report;
};

// encode -> (mix) -> demod -> spectral. Module errors are rethrown with the
// failing stage prefixed to the message.
RunResult run_scenario(const Scenario& s, Warnings* warnings = nullptr);

// Writes recovered field (binary + sidecar), asd.txt, chop.txt and
// report.json into dir.
void write_run(const std::filesystem::path& dir, const RunResult& result);

// Phase noise in dBc/Hz recovered from a field ASD by inverting
// eta = sqrt(2) f / (gamma/2pi) L^(1/2), averaged in log-spaced bands.
// Bins within two of any `exclude` frequency are skipped.
PhaseNoiseSpectrum phase_noise_from_asd(const AsdSpectrum& asd, double f_lo, double f_hi,
                                        int bands_per_decade = 20,
                                        std::span<const double> exclude = {});

struct SidebandPoint {
  double f_m_hz = 0.0;
  double beta = 0.0;
  double predicted = 0.0;  // predict_sideband
  double measured = 0.0;   // |X(fc + fm)| / |X(fc)| from the DFT
  double lower = 0.0;      // |X(fc - fm)| / |X(fc)|
};

// Synthesizes a noiseless tone of b_rms at each f_m (carrier and tones on
// DFT bins of a record_s record) and reads the first sideband pair.
std::vector<SidebandPoint> sideband_sweep(double b_rms, std::span<const double> f_m_hz,
                                          double sample_rate, double carrier_hz, double record_s,
                                          double b0 = 0.178);

}  // namespace yigmag
