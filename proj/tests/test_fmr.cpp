#include <cmath>
#include <random>

#include "doctest.h"
#include "oracle_values.hpp"
#include "support.hpp"
#include "yigmag/constants.hpp"
#include "yigmag/fmr.hpp"
#include "yigmag/io.hpp"
#include "yigmag/scenario.hpp"

using namespace yigmag;
using constants::two_pi;

namespace {

ResonatorModel reference() {
  ResonatorModel m;
  m.kappa0 = two_pi * 790e3;
  m.kappa1 = two_pi * 315e3;
  m.kappa2 = two_pi * 405e3;
  m.b0 = 0.178;
  return m;
}

}  // namespace

TEST_CASE("sphere resonance is gamma B") {
  CHECK(sphere_resonance(0.178) == doctest::Approx(two_pi * oracle::sphere_res_hz).epsilon(1e-14));
  CHECK(sphere_resonance(1e-12) == doctest::Approx(two_pi * 0.028).epsilon(1e-12));
}

TEST_CASE("kittel reduces to gamma B for a sphere") {
  for (double b : {1e-3, 0.05, 0.178, 0.5, 1.2}) {
    for (double m : {0.0, 1e4, 1.42e5, 5e5}) {
      CHECK(kittel_frequency(b, m, Demag{}) == doctest::Approx(constants::gamma * b).epsilon(1e-13));
    }
  }
}

TEST_CASE("kittel matches scalar evaluation for flattened shapes") {
  CHECK(kittel_frequency(0.1, 1.42e5, Demag{0.5, 0.5, 0.0}) ==
        doctest::Approx(oracle::kittel_thin).epsilon(1e-13));
  CHECK(kittel_frequency(0.2, 1.42e5, Demag{0.0, 0.5, 0.5}) ==
        doctest::Approx(oracle::kittel_needle).epsilon(1e-13));
}

TEST_CASE("kittel rejects negative brackets and non-finite input") {
  CHECK_THROWS_AS(kittel_frequency(0.01, 1.42e5, Demag{0.0, 0.0, 1.0}), DomainError);
  CHECK_THROWS_AS(kittel_frequency(NAN, 1.42e5, Demag{}), DomainError);
}

TEST_CASE("anisotropy shifts along crystal axes") {
  const double k = constants::yig_k1_over_mu0ms;
  const double b = 0.178;
  auto shift_hz = [&](double theta) { return (anisotropy_resonance(b, theta, k) - constants::gamma * b) / two_pi; };
  CHECK(shift_hz(0.0) == doctest::Approx(oracle::aniso_shift_100_hz).epsilon(1e-9));
  CHECK(shift_hz(std::acos(1.0 / std::sqrt(3.0))) ==
        doctest::Approx(oracle::aniso_shift_111_hz).epsilon(1e-9));
  CHECK(shift_hz(constants::pi / 2) == doctest::Approx(oracle::aniso_shift_110_hz).epsilon(1e-9));
}

TEST_CASE("ztc angle") {
  const double z = ztc_angle();
  CHECK(z == doctest::Approx(oracle::ztc_rad).epsilon(1e-12));
  CHECK(z * 180.0 / constants::pi == doctest::Approx(29.7).epsilon(0.1 / 29.7));
  CHECK(std::abs(anisotropy_polynomial(z)) < 1e-12);
  for (double b : {0.01, 0.178, 0.9}) {
    for (double k : {-4.2e-3, 1e-2, 0.0}) {
      CHECK(anisotropy_resonance(b, z, k) == doctest::Approx(sphere_resonance(b)).epsilon(1e-13));
    }
  }
}

TEST_CASE("s-parameters on resonance") {
  const ResonatorModel m = reference();
  const double wy = sphere_resonance(m.b0);
  const auto p = s_parameters(m, wy, wy);
  CHECK(std::norm(p.s21) == doctest::Approx(oracle::s21_sq_res).epsilon(1e-12));
  CHECK(std::norm(p.s11) == doctest::Approx(oracle::s11_sq_res).epsilon(1e-12));
  CHECK(std::norm(p.s21) == doctest::Approx(0.224).epsilon(1e-3));
  CHECK(std::norm(p.s11) == doctest::Approx(0.340).epsilon(2e-3));
}

TEST_CASE("s-parameter lineshape properties") {
  const ResonatorModel m = reference();
  const double wy = sphere_resonance(m.b0);
  const double kl = m.kappa_l();
  const double peak = std::norm(s_parameters(m, wy, wy).s21);
  CHECK(std::norm(s_parameters(m, wy + 0.5 * kl, wy).s21) == doctest::Approx(0.5 * peak).epsilon(1e-12));
  CHECK(std::norm(s_parameters(m, wy - 0.5 * kl, wy).s21) == doctest::Approx(0.5 * peak).epsilon(1e-12));
  for (double x = -20.0; x <= 20.0; x += 0.37) {
    const auto a = s_parameters(m, wy + x * kl, wy);
    const auto b = s_parameters(m, wy - x * kl, wy);
    CHECK(std::norm(a.s21) == doctest::Approx(std::norm(b.s21)).epsilon(1e-12));
    CHECK(std::norm(a.s21) <= peak);
    CHECK(std::abs(a.s21) == doctest::Approx(std::abs(a.s12)).epsilon(1e-15));
    double dphi = std::arg(a.s21) - std::arg(a.s12);
    if (dphi > 0) dphi -= two_pi;
    CHECK(dphi == doctest::Approx(-constants::pi).epsilon(1e-12));
    CHECK(std::norm(a.s21) + std::norm(a.s11) <= 1.0 + 1e-12);
  }
  const auto far = s_parameters(m, wy + 1e4 * kl, wy);
  CHECK(std::abs(far.s21) < 1e-4);
  CHECK(std::abs(far.s11) == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("s-parameters warn far from resonance") {
  const ResonatorModel m = reference();
  const double wy = sphere_resonance(m.b0);
  Warnings w;
  s_parameters(m, wy + 10.0 * m.kappa_l(), wy, &w);
  CHECK(w.empty());
  s_parameters(m, wy + 60.0 * m.kappa_l(), wy, &w);
  CHECK(w.size() == 1);
}

TEST_CASE("extraction round trip over random rates") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.05, 2.0);
  for (int i = 0; i < 200; ++i) {
    const double k0 = two_pi * 1e5 * u(rng);
    const double k1 = two_pi * 1e5 * u(rng);
    const double k2 = two_pi * 1e5 * u(rng);
    const double kl = k0 + k1 + k2;
    const double half = 0.5 * kl;
    const double s11 = (1.0 - k1 / half) * (1.0 - k1 / half);
    const double s21 = k1 * k2 / (half * half);
    const auto branch = k1 < half ? InputCoupling::under : InputCoupling::over;
    const auto r = extract_coupling_rates(s11, s21, kl, branch);
    CHECK(r.kappa0 == doctest::Approx(k0).epsilon(1e-10));
    CHECK(r.kappa1 == doctest::Approx(k1).epsilon(1e-10));
    CHECK(r.kappa2 == doctest::Approx(k2).epsilon(1e-10));
  }
}

TEST_CASE("critically coupled symmetric extrema leave no unloaded loss") {
  // S11 = 0 forces kappa1 = kappa_l / 2; kappa2 = kappa1 then forces kappa0 = 0,
  // which is outside the model.
  const double kl = two_pi * 1e6;
  CHECK_THROWS_AS(extract_coupling_rates(0.0, 1.0, kl), InvalidInput);
  // With kappa2 < kappa1 the critical case is consistent.
  const double k1 = 0.5 * kl, k2 = 0.3 * kl;
  const auto r = extract_coupling_rates(0.0, k1 * k2 / (0.25 * kl * kl), kl);
  CHECK(r.kappa1 == doctest::Approx(k1).epsilon(1e-12));
  CHECK(r.kappa2 == doctest::Approx(k2).epsilon(1e-12));
  CHECK(r.kappa0 == doctest::Approx(0.2 * kl).epsilon(1e-12));
}

TEST_CASE("extraction rejects out-of-range extrema") {
  CHECK_THROWS_AS(extract_coupling_rates(1.0, 0.2, 1.0), InvalidInput);
  CHECK_THROWS_AS(extract_coupling_rates(-0.1, 0.2, 1.0), InvalidInput);
  CHECK_THROWS_AS(extract_coupling_rates(0.3, 0.0, 1.0), InvalidInput);
  CHECK_THROWS_AS(extract_coupling_rates(0.3, 1.1, 1.0), InvalidInput);
  CHECK_THROWS_AS(extract_coupling_rates(0.3, 0.2, 0.0), InvalidInput);
}

TEST_CASE("loaded q and leeson frequency") {
  const ResonatorModel m = reference();
  CHECK(loaded_q(m) == doctest::Approx(oracle::q_loaded).epsilon(1e-12));
  CHECK(std::round(loaded_q(m) / 100.0) * 100.0 == 3300.0);
  CHECK(leeson_frequency(m) == doctest::Approx(755e3).epsilon(1e-12));
  CHECK(leeson_frequency(m) == doctest::Approx(oracle::f_leeson_res).epsilon(1e-12));
}

TEST_CASE("resonator validation") {
  ResonatorModel m = reference();
  CHECK_NOTHROW(m.validate());
  m.kappa0 = -1.0;
  CHECK_THROWS_AS(m.validate(), InvalidInput);
  m = reference();
  m.demag = Demag{0.5, 0.5, 0.5};
  CHECK_THROWS_AS(m.validate(), InvalidInput);
  m = reference();
  m.b0 = 0.0;
  CHECK_THROWS_AS(m.validate(), InvalidInput);
}

TEST_CASE("sweep fit recovers reference rates") {
  const auto sweep = io::read_sweep(test_support::data("sweep_reference.txt"));
  const SweepFit fit = fit_sweep(sweep);
  CHECK(fit.branch == InputCoupling::under);
  CHECK(fit.rates.kappa0 / two_pi == doctest::Approx(790e3).epsilon(1e-6));
  CHECK(fit.rates.kappa1 / two_pi == doctest::Approx(315e3).epsilon(1e-6));
  CHECK(fit.rates.kappa2 / two_pi == doctest::Approx(405e3).epsilon(1e-6));
  CHECK(fit.omega_y / two_pi == doctest::Approx(oracle::sphere_res_hz).epsilon(1e-12));
  CHECK(fit.s21_max_sq == doctest::Approx(oracle::s21_sq_res).epsilon(1e-6));
}

TEST_CASE("sweep fit picks the over-coupled branch") {
  const auto sweep = io::read_sweep(test_support::data("sweep_overcoupled.txt"));
  const SweepFit fit = fit_sweep(sweep);
  CHECK(fit.branch == InputCoupling::over);
  CHECK(fit.rates.kappa0 / two_pi == doctest::Approx(300e3).epsilon(1e-6));
  CHECK(fit.rates.kappa1 / two_pi == doctest::Approx(900e3).epsilon(1e-6));
  CHECK(fit.rates.kappa2 / two_pi == doctest::Approx(200e3).epsilon(1e-6));
}

TEST_CASE("sweep fit tolerates coarse grids and noise") {
  const ResonatorModel m = reference();
  const double wy = sphere_resonance(m.b0);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g(0.0, 1e-4);
  std::vector<SweepSample> sweep;
  for (int i = -40; i <= 40; ++i) {
    const double wd = wy + 0.071 * i * m.kappa_l();
    const auto p = s_parameters(m, wd, wy);
    sweep.push_back({wd / two_pi, p.s11 + cplx(g(rng), g(rng)), p.s21 + cplx(g(rng), g(rng))});
  }
  const SweepFit fit = fit_sweep(sweep);
  CHECK(fit.rates.kappa0 == doctest::Approx(m.kappa0).epsilon(0.01));
  CHECK(fit.rates.kappa1 == doctest::Approx(m.kappa1).epsilon(0.01));
  CHECK(fit.rates.kappa2 == doctest::Approx(m.kappa2).epsilon(0.01));
}

TEST_CASE("sweep fit errors") {
  std::vector<SweepSample> few(3);
  CHECK_THROWS_AS(fit_sweep(few), InvalidInput);
  std::vector<SweepSample> dead;
  for (int i = 0; i < 20; ++i) dead.push_back({1e9 + i, cplx(1.0, 0.0), cplx(0.0, 0.0)});
  CHECK_THROWS_AS(fit_sweep(dead), DegenerateData);
}

TEST_CASE("reference resonator") {
  const ResonatorModel m = reference_resonator();
  CHECK(m.kappa0 == doctest::Approx(two_pi * 790e3));
  CHECK(m.b0 == 0.178);
}
