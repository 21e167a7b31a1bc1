#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "support.hpp"
#include "yigmag/io.hpp"

using namespace yigmag;
namespace fs = std::filesystem;

namespace {

void write_file(const fs::path& p, const std::string& body) {
  std::ofstream f(p);
  f << body;
}

}  // namespace

TEST_CASE("read_table accepts commas, whitespace and comments") {
  std::istringstream in("# header\n1, 2\n\n3\t4  # trailing\n  5 6\n");
  const auto rows = io::read_table(in, 2, "mem");
  REQUIRE(rows.size() == 3);
  CHECK(rows[1] == std::vector<double>{3, 4});
  CHECK(rows[2] == std::vector<double>{5, 6});
}

TEST_CASE("read_table reports the failing line") {
  std::istringstream bad_number("1, 2\n3, x\n");
  try {
    io::read_table(bad_number, 2, "mem");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("mem:2:") == 0);
  }
  std::istringstream short_row("# c\n1, 2\n3\n");
  try {
    io::read_table(short_row, 2, "mem");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  std::istringstream nan_row("nan, 1\n");
  CHECK_THROWS_AS(io::read_table(nan_row, 2, "mem"), ParseError);
}

TEST_CASE("sweep round trip") {
  const auto dir = test_support::scratch("io_sweep");
  std::vector<SweepSample> s{{1e9, {0.1, -0.2}, {0.3, 1e-17}}, {1.1e9, {0.5, 0.25}, {-0.125, 0.0}}};
  io::write_sweep(dir / "s.txt", s);
  const auto back = io::read_sweep(dir / "s.txt");
  REQUIRE(back.size() == 2);
  CHECK(back[0].freq_hz == s[0].freq_hz);
  CHECK(back[0].s21 == s[0].s21);
  CHECK(back[1].s11 == s[1].s11);
}

TEST_CASE("phase noise round trip and validation") {
  const auto dir = test_support::scratch("io_pn");
  PhaseNoiseSpectrum p{{1e3, 1e4, 1e5}, {-100.25, -130.5, -150.125}};
  io::write_phase_noise(dir / "p.txt", p);
  const auto back = io::read_phase_noise(dir / "p.txt");
  CHECK(back.offsets == p.offsets);
  CHECK(back.l_dbchz == p.l_dbchz);
  write_file(dir / "bad.txt", "1e3, -100\n1e3, -110\n");
  CHECK_THROWS_AS(io::read_phase_noise(dir / "bad.txt"), ConfigError);
  write_file(dir / "junk.txt", "1e3, -100\n\n1e4 -110 7\n");
  try {
    io::read_phase_noise(dir / "junk.txt");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(io::read_phase_noise(dir / "missing.txt"), ConfigError);
}

TEST_CASE("field text round trip") {
  const auto dir = test_support::scratch("io_field");
  FieldSeries f{2e3, {1e-12, -2e-12, 3.5e-13, 0.0}, 0.178};
  io::write_field_text(dir / "f.txt", f);
  const FieldSeries back = io::read_field_text(dir / "f.txt", 0.2);
  CHECK(back.sample_rate == doctest::Approx(2e3).epsilon(1e-12));
  CHECK(back.samples == f.samples);
  CHECK(back.b0 == 0.2);
  write_file(dir / "jitter.txt", "0, 1\n0.001, 1\n0.0025, 1\n0.003, 1\n");
  try {
    io::read_field_text(dir / "jitter.txt", 0.178);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("binary series round trip") {
  const auto dir = test_support::scratch("io_bin");
  FieldSeries f{5e6, {1e-12, -2e-12, 3.5e-13}, 0.178};
  io::write_field_binary(dir / "f.f64", f);
  CHECK(fs::exists(dir / "f.f64.json"));
  CHECK(fs::file_size(dir / "f.f64") == 3 * sizeof(double));
  const FieldSeries back = io::read_field_binary(dir / "f.f64");
  CHECK(back.samples == f.samples);
  CHECK(back.sample_rate == f.sample_rate);
  CHECK(back.b0 == f.b0);
  CHECK(io::read_field_any(dir / "f.f64", 0.0).samples == f.samples);

  Waveform w{5e6, {0.5, -0.25, 1.0, 0.0}, 1e6};
  io::write_waveform(dir / "w.f64", w);
  const Waveform wb = io::read_waveform(dir / "w.f64");
  CHECK(wb.samples == w.samples);
  CHECK(wb.carrier_hz == w.carrier_hz);

  // Sidecar promising more samples than the file holds.
  write_file(dir / "w.f64.json", R"({"sample_rate_hz": 5e6, "carrier_hz": 1e6, "n_samples": 10})");
  CHECK_THROWS_AS(io::read_waveform(dir / "w.f64"), ConfigError);
  write_file(dir / "w.f64.json", R"({"sample_rate_hz": 5e6})");
  CHECK_THROWS_AS(io::read_waveform(dir / "w.f64"), ConfigError);
}

TEST_CASE("spectrum file carries window metadata") {
  const auto dir = test_support::scratch("io_spec");
  AsdSpectrum s;
  s.freqs = {1, 2};
  s.asd = {1e-13, 2e-13};
  s.bin_hz = 1.0;
  s.segments = 10;
  s.tukey_alpha = 0.01;
  io::write_spectrum(dir / "a.txt", s);
  std::ifstream in(dir / "a.txt.json");
  const auto j = nlohmann::json::parse(in);
  CHECK(j["window"] == "tukey");
  CHECK(j["segments"] == 10);
  CHECK(j["bin_hz"] == 1.0);
  CHECK(j["units"] == "T/sqrt(Hz)");
  CHECK(j["convention"] == single_sided_convention);
  std::ifstream txt(dir / "a.txt");
  const auto rows = io::read_table(txt, 2, "a.txt");
  CHECK(rows[1][1] == 2e-13);
}

TEST_CASE("fit records use non-angular units") {
  SweepFit f;
  f.rates = {constants::two_pi * 790e3, constants::two_pi * 315e3, constants::two_pi * 405e3};
  f.kappa_l = constants::two_pi * 1.51e6;
  f.omega_y = constants::two_pi * 4.984e9;
  const auto j = nlohmann::json::parse(io::sweep_fit_json(f));
  CHECK(j["kappa0_hz"].get<double>() == doctest::Approx(790e3));
  CHECK(j["f_leeson_hz"].get<double>() == doctest::Approx(755e3));
  CHECK(j["q_loaded"].get<double>() == doctest::Approx(3300.66).epsilon(1e-5));
  LeesonFit lf;
  lf.model = {600e3, 6.6e3, 8, 2e-3, 300};
  const auto k = nlohmann::json::parse(io::leeson_fit_json(lf));
  CHECK(k["f_corner_hz"] == 6.6e3);
  CHECK(k["p_sustain_w"] == 2e-3);
}
