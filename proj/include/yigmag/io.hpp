#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "yigmag/encode.hpp"
#include "yigmag/fmr.hpp"
#include "yigmag/leeson.hpp"
#include "yigmag/spectral.hpp"

// Text tables are comma separated (whitespace also accepted), one row per
// line, '#' starts a comment. Binary series are little-endian float64 with
// a "<path>.json" sidecar.
namespace yigmag::io {

namespace fs = std::filesystem;

// Rows of exactly `columns` numbers. Throws ParseError with the 1-based line.
std::vector<std::vector<double>> read_table(std::istream& in, std::size_t columns,
                                            const std::string& source,
                                            std::vector<std::size_t>* line_numbers = nullptr);

// freq_hz, re(S11), im(S11), re(S21), im(S21)
std::vector<SweepSample> read_sweep(const fs::path& path);
void write_sweep(const fs::path& path, const std::vector<SweepSample>& sweep);

// offset_hz, l_dbchz
PhaseNoiseSpectrum read_phase_noise(const fs::path& path);
void write_phase_noise(const fs::path& path, const PhaseNoiseSpectrum& spectrum);

// time_s, b_tesla. Sample rate is taken from the time column, which must be
// uniform to 1e-6 of a step.
FieldSeries read_field_text(const fs::path& path, double b0);
void write_field_text(const fs::path& path, const FieldSeries& field);

void write_waveform(const fs::path& path, const Waveform& w);
Waveform read_waveform(const fs::path& path);

void write_field_binary(const fs::path& path, const FieldSeries& field);
FieldSeries read_field_binary(const fs::path& path);

// Binary when a sidecar exists next to the file, text otherwise.
FieldSeries read_field_any(const fs::path& path, double b0);

// freq_hz, asd_t_per_rthz plus a JSON sidecar with window metadata.
void write_spectrum(const fs::path& path, const AsdSpectrum& s);

std::string leeson_fit_json(const LeesonFit& fit, int indent = 2);
std::string sweep_fit_json(const SweepFit& fit, int indent = 2);

}  // namespace yigmag::io
