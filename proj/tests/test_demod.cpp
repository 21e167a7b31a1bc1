#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "support.hpp"
#include "yigmag/constants.hpp"
#include "yigmag/demod.hpp"
#include "yigmag/encode.hpp"

using namespace yigmag;
using constants::gamma_hz;
using constants::two_pi;

namespace {

// Periodic test field: tones on DFT bins of an n-sample record so FFT-based
// steps see no record-edge discontinuity. gamma_hz * 0.125 T is exact in
// double, so the carrier offset lands the numeric carrier exactly on a bin.
FieldSeries periodic_field(double fs, std::size_t n, double b0 = 0.125) {
  FieldSeries s{fs, std::vector<double>(n), b0};
  const double df = fs / double(n);
  const struct { double bins, amp, phase; } tones[] = {
      {37, 3e-12, 0.3}, {229, 1e-12, 1.1}, {1201, 5e-13, 2.0}, {4096, 2e-13, 0.7}};
  for (std::size_t i = 0; i < n; ++i) {
    const double t = double(i) / fs;
    double v = 0.0;
    for (const auto& k : tones) v += k.amp * std::sin(two_pi * k.bins * df * t + k.phase);
    s.samples[i] = v;
  }
  return s;
}

Waveform encode_at(const FieldSeries& f, double carrier_hz, std::span<const double> alpha = {}) {
  SynthesisOptions opt;
  opt.carrier_offset_hz = carrier_hz - gamma_hz * f.b0;
  opt.alpha = alpha;
  return synthesize_waveform(f, opt);
}

// Frequency the numeric carrier stands in for: physical minus numeric.
double lo_for(const FieldSeries& f, double carrier_hz) { return gamma_hz * f.b0 - carrier_hz; }

}  // namespace

TEST_CASE("noiseless round trip") {
  const double fs = 4e6;
  const std::size_t n = 1 << 18;
  const FieldSeries f = periodic_field(fs, n);
  const Waveform w = encode_at(f, 1e6);
  const AnalyticSignal a = analytic_signal(w);
  const auto rec = recover_field(a, f.b0, lo_for(f, 1e6));
  CHECK(rec.edge_samples == 3);
  std::span<const double> got(rec.field.samples);
  std::span<const double> want(f.samples);
  const std::size_t e = rec.edge_samples;
  CHECK(test_support::rel_rms(got.subspan(e, n - 2 * e), want.subspan(e, n - 2 * e)) < 1e-4);
}

TEST_CASE("compensated derivative beats the plain central difference") {
  const double fs = 4e6;
  const std::size_t n = 1 << 18;
  const FieldSeries f = periodic_field(fs, n);
  const Waveform w = encode_at(f, 1e6);
  const AnalyticSignal a = analytic_signal(w);
  const auto comp = recover_field(a, f.b0, lo_for(f, 1e6), DerivativeScheme::compensated);
  const auto cent = recover_field(a, f.b0, lo_for(f, 1e6), DerivativeScheme::central);
  std::span<const double> want(f.samples);
  auto err = [&](const RecoveredField& r) {
    std::span<const double> got(r.field.samples);
    return test_support::rel_rms(got.subspan(3, n - 6), want.subspan(3, n - 6));
  };
  CHECK(err(comp) < 1e-6);
  CHECK(err(cent) > err(comp));
  CHECK(cent.edge_samples == 1);
}

TEST_CASE("bias offset of the lo is removed") {
  // A constant extra field shifts the numeric carrier; recover_field must
  // return it, and lo_offset_hz shifts the DC value by lo_offset / gamma.
  const double fs = 4e6;
  const std::size_t n = 1 << 15;
  FieldSeries f{fs, std::vector<double>(n, 2e-8), 0.178};
  const Waveform w = encode_at(f, 1e6);
  const AnalyticSignal a = analytic_signal(w);
  const auto rec = recover_field(a, f.b0, 0.0);
  const double lo_offset = lo_for(f, 1e6);
  const auto abs_rec = recover_field(a, f.b0, lo_offset);
  double mean = 0.0, mean_abs = 0.0;
  for (std::size_t i = 10; i < n - 10; ++i) {
    mean += rec.field.samples[i];
    mean_abs += abs_rec.field.samples[i];
  }
  mean /= double(n - 20);
  mean_abs /= double(n - 20);
  CHECK(mean_abs == doctest::Approx(2e-8).epsilon(1e-6));
  CHECK(mean == doctest::Approx(2e-8 - lo_offset / gamma_hz).epsilon(1e-9));
}

TEST_CASE("amplitude noise is rejected") {
  const double fs = 4e6;
  const std::size_t n = 1 << 17;
  const FieldSeries f = periodic_field(fs, n);
  std::vector<double> alpha(n);
  const double df = fs / double(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = double(i) / fs;
    alpha[i] = 0.06 * std::sin(two_pi * 311 * df * t) + 0.04 * std::cos(two_pi * 2111 * df * t + 0.4);
  }
  const Waveform w = encode_at(f, 1e6, alpha);
  const auto rec = recover_field(analytic_signal(w), f.b0, lo_for(f, 1e6));
  std::span<const double> got(rec.field.samples);
  std::span<const double> want(f.samples);
  CHECK(test_support::rel_rms(got.subspan(3, n - 6), want.subspan(3, n - 6)) < 0.01);
}

TEST_CASE("analytic signal of a pure carrier") {
  const double fs = 1e6;
  const std::size_t n = 4096;
  Waveform w{fs, std::vector<double>(n), 250e3};
  for (std::size_t i = 0; i < n; ++i) w.samples[i] = std::cos(two_pi * 0.25 * double(i) + 0.2);
  const AnalyticSignal a = analytic_signal(w);
  CHECK(a.if_hz == 250e3);
  for (std::size_t i = 0; i < n; i += 511) {
    CHECK(std::abs(a.samples[i]) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(a.samples[i].real() == doctest::Approx(w.samples[i]).epsilon(1e-12));
  }
}

TEST_CASE("Bedrosian warning for a carrier near DC") {
  const double fs = 1e6;
  const std::size_t n = 4096;
  Waveform w{fs, std::vector<double>(n), 1e3};
  for (std::size_t i = 0; i < n; ++i) w.samples[i] = std::cos(two_pi * 2e3 * double(i) / fs);
  Warnings warn;
  analytic_signal(w, &warn);
  CHECK(warn.size() == 1);
  Waveform ok{fs, std::vector<double>(n), 250e3};
  for (std::size_t i = 0; i < n; ++i) ok.samples[i] = std::cos(two_pi * 0.25 * double(i));
  warn.clear();
  analytic_signal(ok, &warn);
  CHECK(warn.empty());
}

TEST_CASE("blocked analytic signal matches the full record") {
  const double fs = 4e6;
  const std::size_t n = 100000;
  const FieldSeries f = periodic_field(fs, n);
  const Waveform w = encode_at(f, 1e6);
  const AnalyticSignal full = analytic_signal(w);
  const AnalyticSignal blk = analytic_signal_blocked(w, 16384);
  REQUIRE(blk.samples.size() == n);
  double worst = 0.0;
  for (std::size_t i = 8192; i + 8192 < n; ++i) worst = std::max(worst, std::abs(full.samples[i] - blk.samples[i]));
  CHECK(worst < 1e-3);
  CHECK_THROWS_AS(analytic_signal_blocked(w, 0), InvalidInput);
}

TEST_CASE("unwrapped phase rewraps to the wrapped argument") {
  const double fs = 4e6;
  const std::size_t n = 1 << 15;
  const FieldSeries f = periodic_field(fs, n);
  const AnalyticSignal a = analytic_signal(encode_at(f, 1e6));
  const auto phi = unwrap_phase(a);
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = std::remainder(phi[i] - std::arg(a.samples[i]), two_pi);
    worst = std::max(worst, std::abs(d));
    if (i > 0) CHECK(std::abs(phi[i] - phi[i - 1] - two_pi * 1e6 / fs) < 0.01);
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("unwrap rejects ambiguous sampling") {
  AnalyticSignal a{1e6, std::vector<std::complex<double>>(64, 1.0), 0.5e6};
  CHECK_THROWS_AS(unwrap_phase(a), NumericalError);
  // Steps alternating by nearly pi.
  AnalyticSignal b{1e6, {}, 1e3};
  for (int i = 0; i < 64; ++i) b.samples.push_back(std::polar(1.0, (i % 2) * 3.13));
  CHECK_THROWS_AS(unwrap_phase(b), NumericalError);
  AnalyticSignal c{0.0, std::vector<std::complex<double>>(64, 1.0), 1e3};
  CHECK_THROWS_AS(unwrap_phase(c), InvalidInput);
}

TEST_CASE("recover_field rejects short records") {
  AnalyticSignal a{1e6, std::vector<std::complex<double>>(4, 1.0), 1e5};
  CHECK_THROWS_AS(recover_field(a, 0.178, 0.0), InvalidInput);
  Waveform w{1e6, {1.0, 0.0}, 1e5};
  CHECK_THROWS_AS(analytic_signal(w), InvalidInput);
}
