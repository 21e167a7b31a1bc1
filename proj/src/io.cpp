#include "yigmag/io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "yigmag/constants.hpp"
#include "yigmag/error.hpp"

namespace yigmag::io {

using json = nlohmann::json;

namespace {

std::ifstream open_in(const fs::path& path, std::ios::openmode mode = std::ios::in) {
  std::ifstream in(path, mode);
  if (!in) throw ConfigError("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const fs::path& path, std::ios::openmode mode = std::ios::out) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, mode);
  if (!out) throw ConfigError("cannot write " + path.string());
  return out;
}

fs::path sidecar(const fs::path& path) { return fs::path(path.string() + ".json"); }

json read_json(const fs::path& path) {
  std::ifstream in = open_in(path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream out = open_out(path);
  out << j.dump(2) << "\n";
}

template <class T>
T require(const json& j, const char* key, const fs::path& path) {
  if (!j.contains(key)) throw ConfigError(path.string() + ": missing key " + key);
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": bad value for " + key + ": " + e.what());
  }
}

void write_f64(const fs::path& path, const std::vector<double>& v) {
  std::ofstream out = open_out(path, std::ios::binary);
  if constexpr (std::endian::native == std::endian::little) {
    out.write(reinterpret_cast<const char*>(v.data()),
              static_cast<std::streamsize>(v.size() * sizeof(double)));
  } else {
    for (double d : v) {
      std::uint64_t u;
      std::memcpy(&u, &d, 8);
      u = __builtin_bswap64(u);
      out.write(reinterpret_cast<const char*>(&u), 8);
    }
  }
  if (!out) throw ConfigError("write failed: " + path.string());
}

std::vector<double> read_f64(const fs::path& path, std::size_t n) {
  std::ifstream in = open_in(path, std::ios::binary);
  in.seekg(0, std::ios::end);
  const auto bytes = static_cast<std::size_t>(in.tellg());
  if (bytes != n * sizeof(double)) {
    throw ConfigError(path.string() + ": size " + std::to_string(bytes) + " bytes, sidecar says " +
                      std::to_string(n) + " samples");
  }
  in.seekg(0);
  std::vector<double> v(n);
  in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(bytes));
  if constexpr (std::endian::native != std::endian::little) {
    for (double& d : v) {
      std::uint64_t u;
      std::memcpy(&u, &d, 8);
      u = __builtin_bswap64(u);
      std::memcpy(&d, &u, 8);
    }
  }
  return v;
}

std::string fmt(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

}  // namespace

std::vector<std::vector<double>> read_table(std::istream& in, std::size_t columns,
                                            const std::string& source,
                                            std::vector<std::size_t>* line_numbers) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    for (char& c : line) {
      if (c == ',' || c == '\t' || c == '\r') c = ' ';
    }
    std::istringstream ss(line);
    std::vector<double> row;
    std::string tok;
    while (ss >> tok) {
      double v = 0.0;
      const char* b = tok.data();
      const char* e = tok.data() + tok.size();
      auto [ptr, ec] = std::from_chars(b, e, v);
      if (ec != std::errc() || ptr != e || !std::isfinite(v)) {
        throw ParseError(source, lineno, "not a finite number: '" + tok + "'");
      }
      row.push_back(v);
    }
    if (row.empty()) continue;
    if (row.size() != columns) {
      throw ParseError(source, lineno,
                       "expected " + std::to_string(columns) + " columns, got " +
                           std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
    if (line_numbers) line_numbers->push_back(lineno);
  }
  return rows;
}

std::vector<SweepSample> read_sweep(const fs::path& path) {
  std::ifstream in = open_in(path);
  std::vector<SweepSample> out;
  for (const auto& r : read_table(in, 5, path.string())) {
    out.push_back({r[0], {r[1], r[2]}, {r[3], r[4]}});
  }
  return out;
}

void write_sweep(const fs::path& path, const std::vector<SweepSample>& sweep) {
  std::ofstream out = open_out(path);
  out << "# freq_hz, re_s11, im_s11, re_s21, im_s21\n";
  for (const auto& s : sweep) {
    out << fmt(s.freq_hz) << ", " << fmt(s.s11.real()) << ", " << fmt(s.s11.imag()) << ", "
        << fmt(s.s21.real()) << ", " << fmt(s.s21.imag()) << "\n";
  }
}

PhaseNoiseSpectrum read_phase_noise(const fs::path& path) {
  std::ifstream in = open_in(path);
  PhaseNoiseSpectrum s;
  for (const auto& r : read_table(in, 2, path.string())) {
    s.offsets.push_back(r[0]);
    s.l_dbchz.push_back(r[1]);
  }
  try {
    s.validate();
  } catch (const InvalidInput& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return s;
}

void write_phase_noise(const fs::path& path, const PhaseNoiseSpectrum& spectrum) {
  std::ofstream out = open_out(path);
  out << "# offset_hz, l_dbchz\n";
  for (std::size_t i = 0; i < spectrum.offsets.size(); ++i) {
    out << fmt(spectrum.offsets[i]) << ", " << fmt(spectrum.l_dbchz[i]) << "\n";
  }
}

FieldSeries read_field_text(const fs::path& path, double b0) {
  std::ifstream in = open_in(path);
  std::vector<std::size_t> lines;
  const auto rows = read_table(in, 2, path.string(), &lines);
  if (rows.size() < 2) throw ConfigError(path.string() + ": need at least two samples");
  const double dt = (rows.back()[0] - rows.front()[0]) / static_cast<double>(rows.size() - 1);
  if (!(dt > 0.0)) throw ConfigError(path.string() + ": time column not increasing");
  FieldSeries f;
  f.sample_rate = 1.0 / dt;
  f.b0 = b0;
  f.samples.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double expect = rows.front()[0] + dt * static_cast<double>(i);
    if (std::abs(rows[i][0] - expect) > 1e-6 * dt) {
      throw ParseError(path.string(), lines[i], "time column not uniform");
    }
    f.samples.push_back(rows[i][1]);
  }
  return f;
}

void write_field_text(const fs::path& path, const FieldSeries& field) {
  std::ofstream out = open_out(path);
  out << "# time_s, b_tesla\n";
  for (std::size_t i = 0; i < field.samples.size(); ++i) {
    out << fmt(static_cast<double>(i) / field.sample_rate) << ", " << fmt(field.samples[i]) << "\n";
  }
}

void write_waveform(const fs::path& path, const Waveform& w) {
  write_f64(path, w.samples);
  write_json(sidecar(path), {{"sample_rate_hz", w.sample_rate},
                             {"carrier_hz", w.carrier_hz},
                             {"n_samples", w.samples.size()}});
}

Waveform read_waveform(const fs::path& path) {
  const json meta = read_json(sidecar(path));
  Waveform w;
  w.sample_rate = require<double>(meta, "sample_rate_hz", sidecar(path));
  w.carrier_hz = require<double>(meta, "carrier_hz", sidecar(path));
  w.samples = read_f64(path, require<std::size_t>(meta, "n_samples", sidecar(path)));
  return w;
}

void write_field_binary(const fs::path& path, const FieldSeries& field) {
  write_f64(path, field.samples);
  write_json(sidecar(path), {{"sample_rate_hz", field.sample_rate},
                             {"b0_tesla", field.b0},
                             {"n_samples", field.samples.size()},
                             {"units", "tesla"}});
}

FieldSeries read_field_binary(const fs::path& path) {
  const json meta = read_json(sidecar(path));
  FieldSeries f;
  f.sample_rate = require<double>(meta, "sample_rate_hz", sidecar(path));
  f.b0 = require<double>(meta, "b0_tesla", sidecar(path));
  f.samples = read_f64(path, require<std::size_t>(meta, "n_samples", sidecar(path)));
  return f;
}

FieldSeries read_field_any(const fs::path& path, double b0) {
  if (fs::exists(sidecar(path))) return read_field_binary(path);
  return read_field_text(path, b0);
}

void write_spectrum(const fs::path& path, const AsdSpectrum& s) {
  {
    std::ofstream out = open_out(path);
    out << (s.units == SpectralUnits::asd ? "# freq_hz, asd_t_per_rthz\n"
                                          : "# freq_hz, psd_t2_per_hz\n");
    for (std::size_t i = 0; i < s.freqs.size(); ++i) {
      out << fmt(s.freqs[i]) << ", " << fmt(s.asd[i]) << "\n";
    }
  }
  write_json(sidecar(path), {{"window", "tukey"},
                             {"alpha", s.tukey_alpha},
                             {"segments", s.segments},
                             {"bin_hz", s.bin_hz},
                             {"units", s.units == SpectralUnits::asd ? "T/sqrt(Hz)" : "T^2/Hz"},
                             {"convention", s.convention}});
}

std::string leeson_fit_json(const LeesonFit& fit, int indent) {
  const json j = {{"f_leeson_hz", fit.model.f_leeson},
                  {"f_corner_hz", fit.model.f_corner},
                  {"noise_factor", fit.model.noise_factor},
                  {"p_sustain_w", fit.model.p_sustain},
                  {"temperature_k", fit.model.temperature},
                  {"residual_rms_db", fit.residual_rms_db}};
  return j.dump(indent);
}

std::string sweep_fit_json(const SweepFit& fit, int indent) {
  using constants::two_pi;
  const json j = {{"kappa0_hz", fit.rates.kappa0 / two_pi},
                  {"kappa1_hz", fit.rates.kappa1 / two_pi},
                  {"kappa2_hz", fit.rates.kappa2 / two_pi},
                  {"q_loaded", fit.omega_y / fit.kappa_l},
                  {"f_leeson_hz", fit.kappa_l / (2.0 * two_pi)}};
  return j.dump(indent);
}

}  // namespace yigmag::io
