#pragma once

#include "yigmag/constants.hpp"

// Fundamental-limit and error-budget calculators. Sensitivities from
// spin_projection_limit and thermal_limit are in T*sqrt(s), referenced to a
// 1 s measurement, and are never converted to T/sqrt(Hz) here.
namespace yigmag {

struct SphereSpec {
  double diameter = 1e-3;  // m
  double spin_density = constants::yig_spin_density_room;  // 1/m^3
  double t2_star = 0.0;  // s
  double q0 = 0.0;
  double ms = constants::yig_ms;  // A/m
  double temperature = 300.0;  // K

  void validate() const;
  double volume() const;  // pi d^3 / 6
  double spin_count() const { return spin_density * volume(); }
};

// (hbar / (g_e mu_B)) / sqrt(N T2*).
double spin_projection_limit(const SphereSpec& spec);
double spin_projection_limit(double spin_count, double t2_star);

// sqrt(k T / (gamma M_s V Q0)). Literature variants differ by prefactors of
// order unity; treat as an estimate.
double thermal_limit(const SphereSpec& spec);

// arccos[1 / (1 + gamma^2 B^2 T1 T2 / 4)].
double tip_angle(double b_rf, double t1, double t2);

// Leading-order expansion gamma B sqrt(T1 T2 / 2).
double tip_angle_small(double b_rf, double t1, double t2);

// T2 of a Lorentzian with angular FWHM kappa: 2 / kappa.
inline double t2_from_linewidth(double kappa) { return 2.0 / kappa; }

struct BiasError {
  double measured = 0.0;  // b_par + b_perp^2 / (2 b0)
  double error = 0.0;     // b_perp^2 / (2 b0)
  double exact = 0.0;     // |B0 z + B_sen| - B0
};

BiasError finite_bias_error(double b_perp, double b_par, double b0);

// Gradient G with gamma G L = kappa0, T/m.
double gradient_tolerance(double kappa0, double length_scale);

}  // namespace yigmag
