#include "yigmag/fmr.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

namespace yigmag {

using constants::gamma;
using constants::mu_0;

void ResonatorModel::validate() const {
  if (!(kappa0 > 0.0 && kappa1 > 0.0 && kappa2 > 0.0)) {
    throw InvalidInput("ResonatorModel: coupling rates must be positive");
  }
  for (double n : {demag.nx, demag.ny, demag.nz}) {
    if (!(n >= 0.0 && n <= 1.0)) throw InvalidInput("ResonatorModel: demag factor outside [0, 1]");
  }
  if (std::abs(demag.nx + demag.ny + demag.nz - 1.0) > 1e-9) {
    throw InvalidInput("ResonatorModel: demag factors must sum to 1");
  }
  if (!(ms > 0.0)) throw InvalidInput("ResonatorModel: ms must be positive");
  if (!(b0 > 0.0)) throw InvalidInput("ResonatorModel: b0 must be positive");
}

double kittel_frequency(double b_z, double m_z, const Demag& demag) {
  if (!std::isfinite(b_z) || !std::isfinite(m_z)) {
    throw DomainError("kittel_frequency: non-finite argument");
  }
  const double gb = gamma * b_z;
  const double gm = gamma * mu_0 * m_z;
  const double first = gb + (demag.ny - demag.nz) * gm;
  const double second = gb + (demag.nx - demag.nz) * gm;
  if (first < 0.0 || second < 0.0) throw DomainError("kittel_frequency: negative bracket");
  return std::sqrt(first * second);
}

double sphere_resonance(double b) { return gamma * b; }

double anisotropy_polynomial(double theta) {
  const double s2 = std::sin(theta) * std::sin(theta);
  return 2.0 + 7.5 * s2 * s2 - 10.0 * s2;
}

double anisotropy_resonance(double b, double theta, double k1_over_mu0ms) {
  return gamma * (b + k1_over_mu0ms * anisotropy_polynomial(theta));
}

double ztc_angle() {
  // 7.5 x^2 - 10 x + 2 = 0 in x = sin^2; smaller root lies in [0, 1].
  return std::asin(std::sqrt((10.0 - 2.0 * std::sqrt(10.0)) / 15.0));
}

SParameterPoint s_parameters(const ResonatorModel& model, double omega_d, double omega_y,
                             Warnings* warnings) {
  const double kl = model.kappa_l();
  const double detuning = omega_d - omega_y;
  if (std::abs(detuning) > 50.0 * kl) {
    warn(warnings, "s_parameters: detuning beyond 50 loaded linewidths, lumped model invalid");
  }
  const cplx denom(0.5 * kl, detuning);
  const double g = std::sqrt(model.kappa1 * model.kappa2);
  SParameterPoint p;
  p.omega_d = omega_d;
  p.s11 = 1.0 - model.kappa1 / denom;
  p.s22 = 1.0 - model.kappa2 / denom;
  p.s21 = g / denom * cplx(0.0, -1.0);
  p.s12 = g / denom * cplx(0.0, 1.0);
  return p;
}

CouplingRates extract_coupling_rates(double s11_min_sq, double s21_max_sq, double kappa_l,
                                     InputCoupling branch) {
  if (!(s11_min_sq >= 0.0 && s11_min_sq < 1.0)) {
    throw InvalidInput("extract_coupling_rates: s11_min_sq outside [0, 1)");
  }
  if (!(s21_max_sq > 0.0 && s21_max_sq <= 1.0)) {
    throw InvalidInput("extract_coupling_rates: s21_max_sq outside (0, 1]");
  }
  if (!(kappa_l > 0.0)) throw InvalidInput("extract_coupling_rates: kappa_l must be positive");

  const double half = 0.5 * kappa_l;
  const double r = std::sqrt(s11_min_sq);
  // kappa1 = half (1 - sign * r), sign = +1 for under-coupled input.
  const double one_minus = branch == InputCoupling::under ? 1.0 - r : 1.0 + r;
  const double one_plus = branch == InputCoupling::under ? 1.0 + r : 1.0 - r;
  CouplingRates out;
  out.kappa1 = half * one_minus;
  out.kappa2 = half * s21_max_sq / one_minus;
  out.kappa0 = half * (one_plus - s21_max_sq / one_minus);
  if (!(out.kappa0 > 0.0)) {
    throw InvalidInput("extract_coupling_rates: inconsistent extrema give kappa0 <= 0");
  }
  return out;
}

double loaded_q(const ResonatorModel& model, double omega_y) {
  const double kl = model.kappa_l();
  if (!(kl > 0.0)) throw InvalidInput("loaded_q: loaded linewidth must be positive");
  return omega_y / kl;
}

double loaded_q(const ResonatorModel& model) {
  return loaded_q(model, sphere_resonance(model.b0));
}

double leeson_frequency(const ResonatorModel& model) {
  const double kl = model.kappa_l();
  if (!(kl > 0.0)) throw InvalidInput("leeson_frequency: loaded linewidth must be positive");
  return kl / (2.0 * constants::two_pi);
}

namespace {

// Least-squares y = c0 + c1 x + c2 x^2 via normal equations (x pre-scaled).
std::array<double, 3> fit_parabola(const std::vector<double>& x, const std::vector<double>& y) {
  std::array<double, 5> sx{};
  std::array<double, 3> sxy{};
  for (std::size_t i = 0; i < x.size(); ++i) {
    double p = 1.0;
    for (int k = 0; k < 5; ++k) {
      sx[k] += p;
      if (k < 3) sxy[k] += p * y[i];
      p *= x[i];
    }
  }
  double m[3][4] = {{sx[0], sx[1], sx[2], sxy[0]},
                    {sx[1], sx[2], sx[3], sxy[1]},
                    {sx[2], sx[3], sx[4], sxy[2]}};
  for (int c = 0; c < 3; ++c) {
    int piv = c;
    for (int r = c + 1; r < 3; ++r) {
      if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
    }
    if (m[piv][c] == 0.0) throw DegenerateData("fit_sweep: singular parabola fit");
    for (int k = 0; k < 4; ++k) std::swap(m[c][k], m[piv][k]);
    for (int r = 0; r < 3; ++r) {
      if (r == c) continue;
      const double f = m[r][c] / m[c][c];
      for (int k = c; k < 4; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return {m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]};
}

}  // namespace

SweepFit fit_sweep(std::span<const SweepSample> sweep) {
  if (sweep.size() < 5) throw InvalidInput("fit_sweep: need at least 5 sweep points");
  double peak = 0.0;
  for (const auto& s : sweep) peak = std::max(peak, std::norm(s.s21));
  if (!(peak > 0.0)) throw DegenerateData("fit_sweep: no transmission");

  std::vector<double> x, y;
  std::vector<const SweepSample*> used;
  double omega_mean = 0.0;
  for (const auto& s : sweep) {
    if (std::norm(s.s21) >= 0.5 * peak) {
      used.push_back(&s);
      omega_mean += constants::two_pi * s.freq_hz;
    }
  }
  if (used.size() < 3) throw DegenerateData("fit_sweep: fewer than 3 points above half power");
  omega_mean /= static_cast<double>(used.size());
  double scale = 0.0;
  for (const auto* s : used) {
    scale = std::max(scale, std::abs(constants::two_pi * s->freq_hz - omega_mean));
  }
  if (!(scale > 0.0)) throw DegenerateData("fit_sweep: peak region has zero width");
  for (const auto* s : used) {
    x.push_back((constants::two_pi * s->freq_hz - omega_mean) / scale);
    y.push_back(1.0 / std::norm(s->s21));
  }
  const auto c = fit_parabola(x, y);
  if (!(c[2] > 0.0)) throw DegenerateData("fit_sweep: transmission not peaked");
  const double x0 = -c[1] / (2.0 * c[2]);
  const double ymin = c[0] - c[1] * c[1] / (4.0 * c[2]);
  if (!(ymin > 0.0)) throw DegenerateData("fit_sweep: non-physical peak height");

  SweepFit fit;
  fit.omega_y = omega_mean + x0 * scale;
  fit.s21_max_sq = 1.0 / ymin;
  // 1/|S21|^2 = (d^2 + q^2)/(k1 k2): curvature 1/(k1 k2), minimum q^2/(k1 k2).
  const double q = std::sqrt(ymin / c[2]) * scale;
  fit.kappa_l = 2.0 * q;

  double p2 = 0.0;
  double nearest = INFINITY;
  double re_center = 1.0;
  for (const auto* s : used) {
    const double d = constants::two_pi * s->freq_hz - fit.omega_y;
    p2 += std::norm(s->s11) * (d * d + q * q) - d * d;
    if (std::abs(d) < nearest) {
      nearest = std::abs(d);
      re_center = s->s11.real();
    }
  }
  p2 /= static_cast<double>(used.size());
  fit.s11_min_sq = std::max(0.0, p2 / (q * q));
  fit.branch = re_center >= 0.0 ? InputCoupling::under : InputCoupling::over;
  fit.rates = extract_coupling_rates(fit.s11_min_sq, fit.s21_max_sq, fit.kappa_l, fit.branch);
  return fit;
}

}  // namespace yigmag
