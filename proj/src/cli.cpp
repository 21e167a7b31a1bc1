#include "yigmag/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "yigmag/constants.hpp"
#include "yigmag/demod.hpp"
#include "yigmag/encode.hpp"
#include "yigmag/error.hpp"
#include "yigmag/fmr.hpp"
#include "yigmag/io.hpp"
#include "yigmag/leeson.hpp"
#include "yigmag/limits.hpp"
#include "yigmag/scenario.hpp"
#include "yigmag/spectral.hpp"

namespace yigmag {

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;
using constants::two_pi;

struct Common {
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  std::string format = "text";
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--seed", c.seed, "RNG seed (overrides config)");
  app->add_option("--out-dir", c.out_dir, "Directory for output files");
  app->add_option("--format", c.format, "Report format")
      ->check(CLI::IsMember({"text", "json"}));
}

void print_text(std::ostream& out, const json& j, const std::string& prefix = "") {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) print_text(out, v, prefix.empty() ? k : prefix + "." + k);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) print_text(out, j[i], prefix + "[" + std::to_string(i) + "]");
  } else {
    out << prefix << " = " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

void emit(std::ostream& out, const Common& c, const json& j) {
  if (c.format == "json") {
    out << j.dump(2) << "\n";
  } else {
    print_text(out, j);
  }
}

void write_text_file(const fs::path& path, const std::string& body) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path);
  f << body;
  if (!f) throw ConfigError("cannot write " + path.string());
}

std::vector<double> log_grid(double lo, double hi, int per_decade) {
  std::vector<double> g;
  const int n = static_cast<int>(std::round(std::log10(hi / lo) * per_decade));
  for (int i = 0; i <= n; ++i) g.push_back(lo * std::pow(10.0, static_cast<double>(i) / per_decade));
  return g;
}

// ---- run -------------------------------------------------------------------

struct RunArgs {
  Common c;
  std::string config;
};

int do_run(const RunArgs& a, std::ostream& out, std::ostream&) {
  Scenario s = a.config.empty() ? reference_scenario() : load_scenario(a.config);
  if (a.c.seed) s.seed = *a.c.seed;
  Warnings w;
  RunResult r = run_scenario(s, &w);
  if (!a.c.out_dir.empty()) write_run(a.c.out_dir, r);
  emit(out, a.c, r.report);
  return exit_ok;
}

// ---- fit-leeson ------------------------------------------------------------

struct FitArgs {
  Common c;
  std::string input;
  std::optional<double> p_w;
  std::optional<double> p_dbm;
  double temperature = 300.0;
  double f_min = 3e3;
};

int do_fit(const FitArgs& a, std::ostream& out, std::ostream&) {
  const PhaseNoiseSpectrum spec = io::read_phase_noise(a.input);
  double p = 2e-3;
  if (a.p_w) p = *a.p_w;
  if (a.p_dbm) p = 1e-3 * std::pow(10.0, *a.p_dbm / 10.0);
  const LeesonFit fit = fit_leeson(spec, p, a.temperature, a.f_min);
  const json j = json::parse(io::leeson_fit_json(fit));
  if (!a.c.out_dir.empty()) write_text_file(fs::path(a.c.out_dir) / "leeson_fit.json", j.dump(2) + "\n");
  emit(out, a.c, j);
  return exit_ok;
}

// ---- extract-kappas ----------------------------------------------------------

struct ExtractArgs {
  Common c;
  std::string input;
};

int do_extract(const ExtractArgs& a, std::ostream& out, std::ostream&) {
  const auto sweep = io::read_sweep(a.input);
  const SweepFit fit = fit_sweep(sweep);
  const json j = json::parse(io::sweep_fit_json(fit));
  if (!a.c.out_dir.empty()) write_text_file(fs::path(a.c.out_dir) / "kappas.json", j.dump(2) + "\n");
  emit(out, a.c, j);
  return exit_ok;
}

// ---- limits ----------------------------------------------------------------

struct LimitArgs {
  Common c;
  SphereSpec sphere{1e-3, constants::yig_spin_density_room, 570e-9, 8900.0, constants::yig_ms, 300.0};
  std::optional<double> spin_count;
  double b_rf = 2e-6;
  double kappa0_tip_hz = 790e3;
  std::optional<double> t1;
  std::optional<double> t2;
  double b_perp = 0.05e-3;
  double b_par = 0.0;
  double b0 = 0.178;
  double kappa0_grad_hz = 1e6;
};

int do_limits(const LimitArgs& a, std::ostream& out, std::ostream&) {
  const double n = a.spin_count.value_or(a.sphere.spin_count());
  const double spl = spin_projection_limit(n, a.sphere.t2_star);
  const double the = thermal_limit(a.sphere);
  const double t2 = a.t2.value_or(t2_from_linewidth(two_pi * a.kappa0_tip_hz));
  const double t1 = a.t1.value_or(0.5 * t2);
  const BiasError bias = finite_bias_error(a.b_perp, a.b_par, a.b0);
  const double ztc = ztc_angle();
  json j;
  j["inputs"] = {{"diameter_m", a.sphere.diameter},
                 {"spin_density_per_m3", a.sphere.spin_density},
                 {"spin_count", n},
                 {"t2_star_s", a.sphere.t2_star},
                 {"q0", a.sphere.q0},
                 {"ms_a_per_m", a.sphere.ms},
                 {"temperature_k", a.sphere.temperature},
                 {"b_rf_tesla", a.b_rf},
                 {"t1_s", t1},
                 {"t2_s", t2},
                 {"b_perp_tesla", a.b_perp},
                 {"b_par_tesla", a.b_par},
                 {"b0_tesla", a.b0},
                 {"kappa0_gradient_hz", a.kappa0_grad_hz},
                 {"length_scale_m", a.sphere.diameter}};
  j["spin_projection_limit_t_rts"] = spl;
  j["thermal_limit_t_rts"] = the;
  j["thermal_over_spin_projection"] = the / spl;
  j["tip_angle_rad"] = tip_angle(a.b_rf, t1, t2);
  j["finite_bias"] = {{"measured_tesla", bias.measured},
                      {"error_tesla", bias.error},
                      {"exact_tesla", bias.exact}};
  j["gradient_tolerance_t_per_m"] = gradient_tolerance(two_pi * a.kappa0_grad_hz, a.sphere.diameter);
  j["ztc_angle_rad"] = ztc;
  j["ztc_angle_deg"] = ztc * 180.0 / constants::pi;
  j["notes"] = {"limits in T*sqrt(s), referenced to a 1 s measurement",
                "thermal limit carries an order-unity prefactor uncertainty"};
  if (!a.c.out_dir.empty()) write_text_file(fs::path(a.c.out_dir) / "limits.json", j.dump(2) + "\n");
  emit(out, a.c, j);
  return exit_ok;
}

// ---- demod -----------------------------------------------------------------

struct DemodArgs {
  Common c;
  std::string input;
  std::string output;
  double b0 = 0.178;
  double lo_offset = 0.0;
  bool text = false;
};

int do_demod(const DemodArgs& a, std::ostream& out, std::ostream&) {
  const Waveform w = io::read_waveform(a.input);
  Warnings warn;
  const AnalyticSignal an = analytic_signal(w, &warn);
  const RecoveredField rec = recover_field(an, a.b0, a.lo_offset);
  fs::path dst = a.output;
  if (!a.c.out_dir.empty() && dst.is_relative()) dst = fs::path(a.c.out_dir) / dst;
  if (a.text) {
    io::write_field_text(dst, rec.field);
  } else {
    io::write_field_binary(dst, rec.field);
  }
  emit(out, a.c,
       {{"output", dst.string()},
        {"samples", rec.field.samples.size()},
        {"sample_rate_hz", rec.field.sample_rate},
        {"edge_samples", rec.edge_samples},
        {"warnings", warn}});
  return exit_ok;
}

// ---- asd -------------------------------------------------------------------

struct AsdArgs {
  Common c;
  std::string input;
  std::string output;
  double b0 = 0.178;
  double segment_s = 1.0;
  double alpha = 0.01;
  bool psd = false;
  std::size_t trim = 3;
};

int do_asd(const AsdArgs& a, std::ostream& out, std::ostream&) {
  FieldSeries f = io::read_field_any(a.input, a.b0);
  // Endpoint samples come from shortened derivative stencils.
  if (f.samples.size() > 2 * a.trim) {
    f.samples.erase(f.samples.end() - static_cast<std::ptrdiff_t>(a.trim), f.samples.end());
    f.samples.erase(f.samples.begin(), f.samples.begin() + static_cast<std::ptrdiff_t>(a.trim));
  }
  const AsdSpectrum s =
      field_asd(f, a.segment_s, a.alpha, a.psd ? SpectralUnits::psd : SpectralUnits::asd);
  fs::path dst = a.output;
  if (!a.c.out_dir.empty() && dst.is_relative()) dst = fs::path(a.c.out_dir) / dst;
  io::write_spectrum(dst, s);
  emit(out, a.c,
       {{"output", dst.string()},
        {"bins", s.freqs.size()},
        {"bin_hz", s.bin_hz},
        {"segments", s.segments},
        {"convention", s.convention}});
  return exit_ok;
}

// ---- synth -----------------------------------------------------------------

struct SynthArgs {
  Common c;
  std::string input;
  std::string output;
  std::string config;
  double b0 = 0.178;
  double carrier_hz = 10e6;
  bool noise = false;
};

int do_synth(const SynthArgs& a, std::ostream& out, std::ostream&) {
  const FieldSeries f = io::read_field_any(a.input, a.b0);
  SynthesisOptions opt;
  opt.carrier_offset_hz = static_cast<double>(static_cast<long double>(a.carrier_hz) -
                                              static_cast<long double>(constants::gamma_hz) * f.b0);
  Scenario s = a.config.empty() ? reference_scenario() : load_scenario(a.config);
  if (a.c.seed) s.seed = *a.c.seed;
  opt.seed = s.seed;
  if (a.noise) opt.leeson = s.leeson;
  Warnings warn;
  const Waveform w = synthesize_waveform(f, opt, &warn);
  fs::path dst = a.output;
  if (!a.c.out_dir.empty() && dst.is_relative()) dst = fs::path(a.c.out_dir) / dst;
  io::write_waveform(dst, w);
  emit(out, a.c,
       {{"output", dst.string()},
        {"samples", w.samples.size()},
        {"sample_rate_hz", w.sample_rate},
        {"carrier_hz", w.carrier_hz},
        {"lo_offset_hz", -opt.carrier_offset_hz},
        {"warnings", warn}});
  return exit_ok;
}

// ---- figures ---------------------------------------------------------------

struct FigArgs {
  Common c;
  std::string which = "all";
};

std::string phase_noise_table(const Common& c) {
  const LeesonModel m = reference_leeson();
  const double fs = 20e6;
  const std::size_t n = std::size_t{1} << 22;
  const auto phi = synthesize_phase_noise(m, fs, n, c.seed.value_or(1));
  FieldSeries series{fs, phi, 0.0};
  // Steep 1/f^3 slope: a full Hann taper keeps leakage below the model.
  const AsdSpectrum p = field_asd(series, 0.01, 1.0, SpectralUnits::psd);
  std::ostringstream o;
  o << "# offset_hz, l_model_dbchz, l_synth_dbchz\n" << std::setprecision(10);
  for (double f : log_grid(1e3, 5e6, 20)) {
    const double hi = f * std::pow(10.0, 0.025);
    const double lo = f / std::pow(10.0, 0.025);
    double acc = 0.0;
    std::size_t k = 0;
    for (std::size_t i = 0; i < p.freqs.size(); ++i) {
      if (p.freqs[i] >= lo && p.freqs[i] < hi) {
        acc += 0.5 * p.asd[i];
        ++k;
      }
    }
    o << f << ", " << leeson_l_dbchz(m, f) << ", "
      << (k ? 10.0 * std::log10(acc / static_cast<double>(k)) : NAN) << "\n";
  }
  return o.str();
}

std::string sideband_table() {
  std::vector<double> fm;
  for (double f : log_grid(1e4, 2e6, 10)) fm.push_back(std::round(f / 1e3) * 1e3);
  const auto pts = sideband_sweep(2.12e-6, fm, 50e6, 10e6, 1e-3);
  std::ostringstream o;
  o << "# f_m_hz, beta, predicted, measured_upper, measured_lower\n" << std::setprecision(10);
  for (const auto& p : pts) {
    o << p.f_m_hz << ", " << p.beta << ", " << p.predicted << ", " << p.measured << ", " << p.lower
      << "\n";
  }
  return o.str();
}

std::string sensitivity_table(const Common& c) {
  Scenario s = reference_scenario();
  s.tones.clear();
  s.chop.reset();
  s.sampling.duration_s = 2.0;
  s.spectral.segment_s = 0.1;
  s.seed = c.seed.value_or(1);
  const RunResult r = run_scenario(s);
  const auto eta = sensitivity_leeson_closed_form(*s.leeson);
  std::ostringstream o;
  o << "# f_hz, eta_model_t_per_rthz, eta_sim_t_per_rthz\n" << std::setprecision(10);
  for (double f : log_grid(1e3, 8e5, 20)) {
    const double lo = f / std::pow(10.0, 0.025);
    const double hi = f * std::pow(10.0, 0.025);
    double sim = NAN;
    try {
      sim = band_rms(r.asd, lo, hi);
    } catch (const InvalidInput&) {
    }
    o << f << ", " << eta(f) << ", " << sim << "\n";
  }
  return o.str();
}

int do_figures(const FigArgs& a, std::ostream& out, std::ostream&) {
  const fs::path dir = a.c.out_dir.empty() ? fs::path(".") : fs::path(a.c.out_dir);
  json j = json::object();
  auto want = [&](const char* w) { return a.which == "all" || a.which == w; };
  if (want("phase-noise")) {
    write_text_file(dir / "phase_noise.txt", phase_noise_table(a.c));
    j["phase_noise"] = (dir / "phase_noise.txt").string();
  }
  if (want("sideband")) {
    write_text_file(dir / "sideband.txt", sideband_table());
    j["sideband"] = (dir / "sideband.txt").string();
  }
  if (want("sensitivity")) {
    write_text_file(dir / "sensitivity.txt", sensitivity_table(a.c));
    j["sensitivity"] = (dir / "sensitivity.txt").string();
  }
  emit(out, a.c, j);
  return exit_ok;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"YIG oscillator magnetometer simulator", "yigmag"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run an end-to-end scenario");
  add_common(run_cmd, run.c);
  run_cmd->add_option("config", run.config, "Scenario INI file (reference scenario if omitted)");

  FitArgs fit;
  auto* fit_cmd = app.add_subcommand("fit-leeson", "Fit the Leeson model to a phase-noise table");
  add_common(fit_cmd, fit.c);
  fit_cmd->add_option("input", fit.input, "offset_hz, l_dbchz table")->required();
  auto* pw = fit_cmd->add_option("--p-sustain-w", fit.p_w, "Sustaining power, W");
  fit_cmd->add_option("--p-sustain-dbm", fit.p_dbm, "Sustaining power, dBm")->excludes(pw);
  fit_cmd->add_option("--temperature-k", fit.temperature, "Temperature, K");
  fit_cmd->add_option("--f-min-hz", fit.f_min, "Lowest offset used in the fit");

  ExtractArgs ext;
  auto* ext_cmd = app.add_subcommand("extract-kappas", "Coupling rates from an S-parameter sweep");
  add_common(ext_cmd, ext.c);
  ext_cmd->add_option("input", ext.input, "freq_hz, re/im S11, re/im S21 table")->required();

  LimitArgs lim;
  auto* lim_cmd = app.add_subcommand("limits", "Fundamental limits and error budget");
  add_common(lim_cmd, lim.c);
  lim_cmd->add_option("--diameter-m", lim.sphere.diameter);
  lim_cmd->add_option("--spin-density-per-m3", lim.sphere.spin_density);
  lim_cmd->add_option("--spin-count", lim.spin_count);
  lim_cmd->add_option("--t2-star-s", lim.sphere.t2_star);
  lim_cmd->add_option("--q0", lim.sphere.q0);
  lim_cmd->add_option("--ms-a-per-m", lim.sphere.ms);
  lim_cmd->add_option("--temperature-k", lim.sphere.temperature);
  lim_cmd->add_option("--b-rf-tesla", lim.b_rf);
  lim_cmd->add_option("--kappa0-tip-hz", lim.kappa0_tip_hz, "Linewidth giving T2 = 2/kappa0");
  lim_cmd->add_option("--t1-s", lim.t1);
  lim_cmd->add_option("--t2-s", lim.t2);
  lim_cmd->add_option("--b-perp-tesla", lim.b_perp);
  lim_cmd->add_option("--b-par-tesla", lim.b_par);
  lim_cmd->add_option("--b0-tesla", lim.b0);
  lim_cmd->add_option("--kappa0-gradient-hz", lim.kappa0_grad_hz);

  DemodArgs dem;
  auto* dem_cmd = app.add_subcommand("demod", "Waveform file to field series");
  add_common(dem_cmd, dem.c);
  dem_cmd->add_option("input", dem.input, "Waveform (.f64 with .json sidecar)")->required();
  dem_cmd->add_option("output", dem.output, "Field series output")->required();
  dem_cmd->add_option("--b0-tesla", dem.b0);
  dem_cmd->add_option("--lo-offset-hz", dem.lo_offset, "Physical carrier minus waveform carrier");
  dem_cmd->add_flag("--text", dem.text, "Write time_s, b_tesla text instead of binary");

  AsdArgs asd;
  auto* asd_cmd = app.add_subcommand("asd", "Field series to amplitude spectral density");
  add_common(asd_cmd, asd.c);
  asd_cmd->add_option("input", asd.input, "Field series (text or binary)")->required();
  asd_cmd->add_option("output", asd.output, "Spectrum output")->required();
  asd_cmd->add_option("--b0-tesla", asd.b0);
  asd_cmd->add_option("--segment-s", asd.segment_s);
  asd_cmd->add_option("--tukey-alpha", asd.alpha)->check(CLI::Range(0.0, 1.0));
  asd_cmd->add_option("--trim", asd.trim, "Samples dropped at each end");
  asd_cmd->add_flag("--psd", asd.psd, "T^2/Hz instead of T/sqrt(Hz)");

  SynthArgs syn;
  auto* syn_cmd = app.add_subcommand("synth", "Field series to oscillator waveform");
  add_common(syn_cmd, syn.c);
  syn_cmd->add_option("input", syn.input, "Field series (text or binary)")->required();
  syn_cmd->add_option("output", syn.output, "Waveform output")->required();
  syn_cmd->add_option("--config", syn.config, "Scenario INI supplying the Leeson model");
  syn_cmd->add_option("--b0-tesla", syn.b0);
  syn_cmd->add_option("--carrier-hz", syn.carrier_hz, "Numeric carrier frequency");
  syn_cmd->add_flag("--noise", syn.noise, "Add Leeson phase noise");

  FigArgs fig;
  auto* fig_cmd = app.add_subcommand("figures", "Plot-ready phase noise, sideband, sensitivity tables");
  add_common(fig_cmd, fig.c);
  fig_cmd->add_option("--which", fig.which)->check(CLI::IsMember({"all", "phase-noise", "sideband", "sensitivity"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "yigmag: " << e.what() << "\n";
    return exit_config_error;
  }

  try {
    if (*run_cmd) return do_run(run, out, err);
    if (*fit_cmd) return do_fit(fit, out, err);
    if (*ext_cmd) return do_extract(ext, out, err);
    if (*lim_cmd) return do_limits(lim, out, err);
    if (*dem_cmd) return do_demod(dem, out, err);
    if (*asd_cmd) return do_asd(asd, out, err);
    if (*syn_cmd) return do_synth(syn, out, err);
    if (*fig_cmd) return do_figures(fig, out, err);
  } catch (const ConfigError& e) {
    err << "yigmag: " << e.what() << "\n";
    return exit_config_error;
  } catch (const std::exception& e) {
    err << "yigmag: " << e.what() << "\n";
    return exit_numerical_error;
  }
  return exit_config_error;
}

}  // namespace yigmag
