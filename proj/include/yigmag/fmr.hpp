#pragma once

#include <complex>
#include <span>

#include "yigmag/constants.hpp"
#include "yigmag/error.hpp"

namespace yigmag {

using cplx = std::complex<double>;

struct Demag {
  double nx = 1.0 / 3.0;
  double ny = 1.0 / 3.0;
  double nz = 1.0 / 3.0;
};

// FMR two-port. Rates are angular FWHM values in rad/s.
struct ResonatorModel {
  double kappa0 = 0.0;
  double kappa1 = 0.0;
  double kappa2 = 0.0;
  double b0 = 0.0;  // T, along z
  double ms = constants::yig_ms;
  Demag demag{};
  double k1_over_mu0ms = constants::yig_k1_over_mu0ms;  // T
  double theta = 0.0;  // rad from <100> in the {110} plane

  double kappa_l() const { return kappa0 + kappa1 + kappa2; }

  // Throws InvalidInput when an invariant is broken.
  void validate() const;
};

struct SParameterPoint {
  double omega_d = 0.0;
  cplx s11, s12, s21, s22;
};

double kittel_frequency(double b_z, double m_z, const Demag& demag);

double sphere_resonance(double b);

// Angular part of the first-order cubic anisotropy shift:
// 2 + (15/2) sin^4 - 10 sin^2.
double anisotropy_polynomial(double theta);

double anisotropy_resonance(double b, double theta, double k1_over_mu0ms);

// Zero of anisotropy_polynomial on [0, pi/2].
double ztc_angle();

// The lumped model only holds near resonance; a warning is appended when
// |omega_d - omega_y| exceeds 50 loaded linewidths.
SParameterPoint s_parameters(const ResonatorModel& model, double omega_d, double omega_y,
                             Warnings* warnings = nullptr);

struct CouplingRates {
  double kappa0 = 0.0;
  double kappa1 = 0.0;
  double kappa2 = 0.0;
};

// Sign of S11 on resonance, 1 - kappa1/(kappa_l/2). Reflection magnitude alone
// cannot tell kappa1 < kappa_l/2 from kappa1 > kappa_l/2; the usual VNA
// procedure assumes the former.
enum class InputCoupling { under, over };

CouplingRates extract_coupling_rates(double s11_min_sq, double s21_max_sq, double kappa_l,
                                     InputCoupling branch = InputCoupling::under);

double loaded_q(const ResonatorModel& model, double omega_y);
// omega_y taken as sphere_resonance(model.b0)
double loaded_q(const ResonatorModel& model);

// Half the loaded FWHM in Hz.
double leeson_frequency(const ResonatorModel& model);

struct SweepSample {
  double freq_hz = 0.0;
  cplx s11;
  cplx s21;
};

struct SweepFit {
  CouplingRates rates;
  double omega_y = 0.0;
  double kappa_l = 0.0;
  double s11_min_sq = 0.0;
  double s21_max_sq = 0.0;
  InputCoupling branch = InputCoupling::under;
};

// Locates the transmission peak, reflection dip and 3-dB width in a sampled
// sweep, then applies extract_coupling_rates.
//
// 1/|S21|^2 is exactly quadratic in omega_d for the lumped model, so a least
// squares parabola through the samples above half power gives the centre,
// peak height and width without grid-limited error. The reflection dip depth
// follows from |S11|^2 (d^2 + q^2) - d^2 = (q - kappa1)^2, averaged over the
// same samples, and the branch from the sign of Re S11 nearest the centre.
SweepFit fit_sweep(std::span<const SweepSample> sweep);

}  // namespace yigmag
