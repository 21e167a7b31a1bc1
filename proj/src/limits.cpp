#include "yigmag/limits.hpp"

#include <cmath>

#include "yigmag/error.hpp"

namespace yigmag {

using namespace constants;

void SphereSpec::validate() const {
  if (!(diameter > 0.0 && spin_density > 0.0 && t2_star > 0.0 && q0 > 0.0 && ms > 0.0 &&
        temperature > 0.0)) {
    throw InvalidInput("SphereSpec: all fields must be positive");
  }
}

double SphereSpec::volume() const { return pi * diameter * diameter * diameter / 6.0; }

double spin_projection_limit(double spin_count, double t2_star) {
  if (!(spin_count > 0.0 && t2_star > 0.0)) {
    throw InvalidInput("spin_projection_limit: spin count and T2* must be positive");
  }
  return hbar / (g_e * mu_b) / std::sqrt(spin_count * t2_star);
}

double spin_projection_limit(const SphereSpec& spec) {
  spec.validate();
  return spin_projection_limit(spec.spin_count(), spec.t2_star);
}

double thermal_limit(const SphereSpec& spec) {
  if (!(spec.diameter > 0.0 && spec.q0 > 0.0 && spec.ms > 0.0) || spec.temperature < 0.0) {
    throw InvalidInput("thermal_limit: invalid sphere spec");
  }
  return std::sqrt(k_b * spec.temperature / (gamma * spec.ms * spec.volume() * spec.q0));
}

double tip_angle(double b_rf, double t1, double t2) {
  if (b_rf < 0.0 || !(t1 > 0.0) || !(t2 > 0.0)) {
    throw InvalidInput("tip_angle: arguments must be non-negative, times positive");
  }
  const double x = 0.25 * gamma * gamma * b_rf * b_rf * t1 * t2;
  // arccos(1/(1+x)) = atan(sqrt(x(2+x))), better conditioned for small x.
  return std::atan(std::sqrt(x * (2.0 + x)));
}

double tip_angle_small(double b_rf, double t1, double t2) {
  return gamma * b_rf * std::sqrt(0.5 * t1 * t2);
}

BiasError finite_bias_error(double b_perp, double b_par, double b0) {
  if (!(b0 > 0.0)) throw InvalidInput("finite_bias_error: b0 must be positive");
  BiasError out;
  out.error = b_perp * b_perp / (2.0 * b0);
  out.measured = b_par + out.error;
  // hypot(b0 + b_par, b_perp) - b0 without cancellation.
  const double s = b0 + b_par;
  const double norm = std::hypot(s, b_perp);
  out.exact = b_par + b_perp * b_perp / (norm + s);
  return out;
}

double gradient_tolerance(double kappa0, double length_scale) {
  if (!(kappa0 > 0.0 && length_scale > 0.0)) {
    throw InvalidInput("gradient_tolerance: arguments must be positive");
  }
  return kappa0 / (gamma * length_scale);
}

}  // namespace yigmag
