#include "yigmag/leeson.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "yigmag/constants.hpp"
#include "yigmag/fft.hpp"
#include "yigmag/kernels.hpp"
#include "yigmag/rng.hpp"

namespace yigmag {

namespace {

constexpr double db_per_neper = 10.0 / std::numbers::ln10;

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

void LeesonModel::validate() const {
  if (!positive_finite(f_leeson) || !positive_finite(f_corner) || !positive_finite(noise_factor) ||
      !positive_finite(p_sustain) || !positive_finite(temperature)) {
    throw InvalidInput("LeesonModel: all parameters must be positive and finite");
  }
}

void PhaseNoiseSpectrum::validate() const {
  if (offsets.size() != l_dbchz.size()) {
    throw InvalidInput("PhaseNoiseSpectrum: offsets and values differ in length");
  }
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    if (!positive_finite(offsets[i]) || !std::isfinite(l_dbchz[i])) {
      throw InvalidInput("PhaseNoiseSpectrum: non-finite or non-positive entry");
    }
    if (i > 0 && !(offsets[i] > offsets[i - 1])) {
      throw InvalidInput("PhaseNoiseSpectrum: offsets not strictly increasing");
    }
  }
}

double leeson_floor(const LeesonModel& model) {
  return 0.5 * model.noise_factor * constants::k_b * model.temperature / model.p_sustain;
}

double leeson_l_half(const LeesonModel& model, double f_m) {
  if (!(f_m > 0.0)) throw DomainError("leeson_l_half: offset must be positive");
  const double r = model.f_leeson / f_m;
  return std::sqrt((r * r + 1.0) * (model.f_corner / f_m + 1.0) * leeson_floor(model));
}

double leeson_l_dbchz(const LeesonModel& model, double f_m) {
  return 20.0 * std::log10(leeson_l_half(model, f_m));
}

PhaseNoiseSpectrum evaluate(const LeesonModel& model, std::span<const double> offsets) {
  PhaseNoiseSpectrum out;
  out.offsets.assign(offsets.begin(), offsets.end());
  out.l_dbchz.reserve(offsets.size());
  for (double f : offsets) out.l_dbchz.push_back(leeson_l_dbchz(model, f));
  return out;
}

double leeson_effect(double s_psi, double f_m, double f_leeson) {
  if (!(f_m > 0.0)) throw DomainError("leeson_effect: offset must be positive");
  const double r = f_leeson / f_m;
  return (1.0 + r * r) * s_psi;
}

namespace {

struct FitData {
  std::vector<double> f;
  std::vector<double> y;
  double thermal_db;  // 10 log10(k T / (2 P_s))
};

// Shape in dB without the F term.
double shape_db(double f, double fl, double fc) {
  const double r = fl / f;
  return 10.0 * std::log10(r * r + 1.0) + 10.0 * std::log10(fc / f + 1.0);
}

// Closed-form optimum of ln F for fixed (f_L, f_c), and the resulting cost.
std::pair<double, double> solve_f(const FitData& d, double fl, double fc) {
  double mean = 0.0;
  for (std::size_t i = 0; i < d.f.size(); ++i) {
    mean += d.y[i] - d.thermal_db - shape_db(d.f[i], fl, fc);
  }
  mean /= static_cast<double>(d.f.size());
  double cost = 0.0;
  for (std::size_t i = 0; i < d.f.size(); ++i) {
    const double r = d.y[i] - d.thermal_db - shape_db(d.f[i], fl, fc) - mean;
    cost += r * r;
  }
  return {mean / db_per_neper, cost};
}

double cost_at(const FitData& d, const std::array<double, 3>& p, std::vector<double>* resid) {
  const double fl = std::exp(p[0]);
  const double fc = std::exp(p[1]);
  const double f_db = db_per_neper * p[2];
  double cost = 0.0;
  if (resid) resid->resize(d.f.size());
  for (std::size_t i = 0; i < d.f.size(); ++i) {
    const double r = d.y[i] - (d.thermal_db + f_db + shape_db(d.f[i], fl, fc));
    if (resid) (*resid)[i] = r;
    cost += r * r;
  }
  return cost;
}

bool solve3(std::array<std::array<double, 3>, 3> a, std::array<double, 3> b,
            std::array<double, 3>& x) {
  for (int c = 0; c < 3; ++c) {
    int piv = c;
    for (int r = c + 1; r < 3; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    }
    if (!(std::abs(a[piv][c]) > 0.0)) return false;
    std::swap(a[c], a[piv]);
    std::swap(b[c], b[piv]);
    for (int r = c + 1; r < 3; ++r) {
      const double f = a[r][c] / a[c][c];
      for (int k = c; k < 3; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  for (int r = 2; r >= 0; --r) {
    double s = b[r];
    for (int k = r + 1; k < 3; ++k) s -= a[r][k] * x[k];
    x[r] = s / a[r][r];
  }
  return true;
}

}  // namespace

LeesonFit fit_leeson(const PhaseNoiseSpectrum& spectrum, double p_sustain, double temperature,
                     double f_min) {
  spectrum.validate();
  if (!positive_finite(p_sustain) || !positive_finite(temperature)) {
    throw InvalidInput("fit_leeson: p_sustain and temperature must be positive");
  }
  FitData d;
  d.thermal_db = 10.0 * std::log10(0.5 * constants::k_b * temperature / p_sustain);
  for (std::size_t i = 0; i < spectrum.offsets.size(); ++i) {
    if (spectrum.offsets[i] >= f_min) {
      d.f.push_back(spectrum.offsets[i]);
      d.y.push_back(spectrum.l_dbchz[i]);
    }
  }
  if (d.f.size() < 10) throw InvalidInput("fit_leeson: fewer than 10 points above f_min");

  const auto [ymin, ymax] = std::minmax_element(d.y.begin(), d.y.end());
  if (*ymax - *ymin < 1.0) throw DegenerateData("fit_leeson: spectrum is flat, f_L unidentifiable");

  // Coarse grid, 1/8 decade, f_L over [f_lo/100, 100 f_hi], f_c over [f_lo/1000, 10 f_hi].
  const double lo = std::log(d.f.front());
  const double hi = std::log(d.f.back());
  const double step = std::log(10.0) / 8.0;
  std::array<double, 3> p{};
  double best = std::numeric_limits<double>::infinity();
  for (double lfl = lo - std::log(100.0); lfl <= hi + std::log(100.0); lfl += step) {
    for (double lfc = lo - std::log(1000.0); lfc <= hi + std::log(10.0); lfc += step) {
      const auto [lnf, cost] = solve_f(d, std::exp(lfl), std::exp(lfc));
      if (cost < best) {
        best = cost;
        p = {lfl, lfc, lnf};
      }
    }
  }

  std::vector<double> resid;
  double cost = cost_at(d, p, &resid);
  double lambda = 1e-3;
  int iter = 0;
  bool converged = false;
  constexpr int max_iter = 500;
  for (; iter < max_iter; ++iter) {
    const double fl = std::exp(p[0]);
    const double fc = std::exp(p[1]);
    std::array<std::array<double, 3>, 3> jtj{};
    std::array<double, 3> jtr{};
    for (std::size_t i = 0; i < d.f.size(); ++i) {
      const double r2 = (fl / d.f[i]) * (fl / d.f[i]);
      const double c = fc / d.f[i];
      const std::array<double, 3> j = {db_per_neper * 2.0 * r2 / (r2 + 1.0),
                                       db_per_neper * c / (c + 1.0), db_per_neper};
      for (int a = 0; a < 3; ++a) {
        jtr[a] += j[a] * resid[i];
        for (int b = 0; b < 3; ++b) jtj[a][b] += j[a] * j[b];
      }
    }
    bool improved = false;
    while (lambda < 1e12) {
      auto a = jtj;
      for (int k = 0; k < 3; ++k) a[k][k] += lambda * (jtj[k][k] + 1e-12);
      std::array<double, 3> delta{};
      if (!solve3(a, jtr, delta)) {
        lambda *= 10.0;
        continue;
      }
      const std::array<double, 3> trial = {p[0] + delta[0], p[1] + delta[1], p[2] + delta[2]};
      std::vector<double> trial_resid;
      const double trial_cost = cost_at(d, trial, &trial_resid);
      if (trial_cost <= cost) {
        const double step_norm =
            std::max({std::abs(delta[0]), std::abs(delta[1]), std::abs(delta[2])});
        const double rel_drop = (cost - trial_cost) / std::max(cost, 1e-300);
        p = trial;
        resid = std::move(trial_resid);
        cost = trial_cost;
        lambda = std::max(lambda / 10.0, 1e-12);
        improved = true;
        if (step_norm < 1e-10 || rel_drop < 1e-15 || cost < 1e-24) converged = true;
        break;
      }
      lambda *= 10.0;
    }
    if (!improved) {
      // No downhill step at any damping: already at a stationary point.
      converged = true;
    }
    if (converged) break;
  }
  if (!converged) throw NumericalError("fit_leeson: no convergence after 500 iterations");

  // f_L is identifiable only if it moves the model somewhere in the data.
  const double fl = std::exp(p[0]);
  double max_sens = 0.0;
  for (double f : d.f) {
    const double r2 = (fl / f) * (fl / f);
    max_sens = std::max(max_sens, db_per_neper * 2.0 * r2 / (r2 + 1.0));
  }
  if (max_sens < 0.05) throw DegenerateData("fit_leeson: f_L below data span, unidentifiable");

  LeesonFit out;
  out.model = {fl, std::exp(p[1]), std::exp(p[2]), p_sustain, temperature};
  out.residual_rms_db = std::sqrt(cost / static_cast<double>(d.f.size()));
  out.iterations = iter + 1;
  return out;
}

std::vector<double> synthesize_phase_noise(const LeesonModel& model, double sample_rate,
                                           std::size_t n_samples, std::uint64_t seed,
                                           Warnings* warnings) {
  model.validate();
  if (!positive_finite(sample_rate)) {
    throw InvalidInput("synthesize_phase_noise: sample rate must be positive");
  }
  if (n_samples < min_synthesis_length) {
    throw InvalidInput("synthesize_phase_noise: need at least 2^14 samples");
  }
  if (sample_rate < 4.0 * model.f_leeson) {
    warn(warnings, "synthesize_phase_noise: sample rate below 4 f_L, Leeson shoulder truncated");
  }
  const double sigma = std::sqrt(leeson_floor(model) * sample_rate);
  std::vector<double> white(n_samples);
  GaussianSource rng(seed);
  for (double& v : white) v = sigma * rng();

  std::vector<fft::cplx> spec(n_samples / 2 + 1);
  fft::rfft_into(white, spec);
  white.clear();
  white.shrink_to_fit();

  spec[0] = 0.0;
  const double df = sample_rate / static_cast<double>(n_samples);
  constexpr std::size_t chunk = 4096;
  std::vector<double> gain(chunk);
  for (std::size_t start = 1; start < spec.size(); start += chunk) {
    const std::size_t len = std::min(chunk, spec.size() - start);
    for (std::size_t j = 0; j < len; ++j) {
      const double f = df * static_cast<double>(start + j);
      const double r = model.f_leeson / f;
      gain[j] = std::sqrt((r * r + 1.0) * (model.f_corner / f + 1.0));
    }
    kernels::active().scale_complex(spec.data() + start, gain.data(), len);
  }
  return fft::irfft(std::move(spec), n_samples);
}

}  // namespace yigmag
