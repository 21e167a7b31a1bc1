#include "yigmag/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "yigmag/constants.hpp"
#include "yigmag/fft.hpp"
#include "yigmag/io.hpp"

namespace yigmag {

using json = nlohmann::json;
using constants::two_pi;

bool ChopSchedule::on_at(double t) const {
  const double phase = t / period_s - std::floor(t / period_s);
  return phase < duty;
}

ResonatorModel reference_resonator() {
  ResonatorModel r;
  r.kappa0 = two_pi * 790e3;
  r.kappa1 = two_pi * 315e3;
  r.kappa2 = two_pi * 405e3;
  r.b0 = 0.178;
  return r;
}

LeesonModel reference_leeson() { return {600e3, 6.6e3, 8.0, 2e-3, 300.0}; }

Scenario reference_scenario() {
  Scenario s;
  s.resonator = reference_resonator();
  s.leeson = reference_leeson();
  s.tones = {{35e3, 0.9e-12, 0.0}};
  s.chop = ChopSchedule{2.0, 0.5};
  return s;
}

void Scenario::validate() const {
  resonator.validate();
  if (leeson) leeson->validate();
  const auto& p = sampling;
  if (!(p.sample_rate_hz > 0.0 && p.if_hz > 0.0 && p.duration_s > 0.0 && p.guard_s >= 0.0 &&
        p.lo_hz >= 0.0 && p.decimation >= 1)) {
    throw InvalidInput("Scenario: sampling parameters out of range");
  }
  if (p.lo_hz == 0.0 && p.decimation != 1) {
    throw InvalidInput("Scenario: decimation needs a mixdown (lo_hz > 0)");
  }
  if (!(p.duration_s >= 2.0 * spectral.segment_s)) {
    throw InvalidInput("Scenario: duration shorter than two spectral segments");
  }
  const double nyq = 0.5 * p.analysis_rate_hz();
  for (const auto& t : tones) {
    if (!(t.f_hz > 0.0 && t.f_hz < nyq) || !std::isfinite(t.b_rms_tesla)) {
      throw InvalidInput("Scenario: tone frequency outside (0, fs/2)");
    }
  }
  if (chop && !(chop->period_s > 0.0 && chop->duty > 0.0 && chop->duty < 1.0)) {
    throw InvalidInput("Scenario: chop needs period_s > 0 and duty in (0, 1)");
  }
  if (!(spectral.noise_band_lo_hz < spectral.noise_band_hi_hz)) {
    throw InvalidInput("Scenario: empty noise band");
  }
}

EnvLookup process_env() {
  return [](const std::string& name) -> std::optional<std::string> {
    if (const char* v = std::getenv(name.c_str())) return std::string(v);
    return std::nullopt;
  };
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

struct ParseState {
  Scenario s = reference_scenario();
  LeesonModel leeson = reference_leeson();
  bool leeson_on = true;
  bool saw_w = false;
  bool saw_dbm = false;
  std::optional<ChopSchedule> chop;
  bool chop_on = true;
  bool reference_tones = true;
};

struct Where {
  std::string source;
  std::string section;
  std::string key;

  std::string str() const { return source + ": [" + section + "] " + key; }
};

double to_double(const std::string& raw, const Where& w) {
  const std::string v = trim(raw);
  double out = 0.0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size() || !std::isfinite(out)) {
    throw ConfigError(w.str() + ": not a number: '" + v + "'");
  }
  return out;
}

std::uint64_t to_uint(const std::string& raw, const Where& w) {
  const std::string v = trim(raw);
  std::uint64_t out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) {
    throw ConfigError(w.str() + ": not a non-negative integer: '" + v + "'");
  }
  return out;
}

bool to_bool(const std::string& raw, const Where& w) {
  const std::string v = trim(raw);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError(w.str() + ": not a boolean: '" + v + "'");
}

using Setter = void (*)(ParseState&, const std::string&, const Where&);

#define YIG_NUM(expr) [](ParseState& st, const std::string& v, const Where& w) { expr = to_double(v, w); }

const std::map<std::string, std::map<std::string, Setter>>& schema() {
  static const std::map<std::string, std::map<std::string, Setter>> table = {
      {"run",
       {{"seed", [](ParseState& st, const std::string& v, const Where& w) { st.s.seed = to_uint(v, w); }},
        {"reference_tones", [](ParseState& st, const std::string& v, const Where& w) {
          st.reference_tones = to_bool(v, w); }}}},
      {"resonator",
       {{"kappa0_hz", [](ParseState& st, const std::string& v, const Where& w) {
          st.s.resonator.kappa0 = two_pi * to_double(v, w); }},
        {"kappa1_hz", [](ParseState& st, const std::string& v, const Where& w) {
          st.s.resonator.kappa1 = two_pi * to_double(v, w); }},
        {"kappa2_hz", [](ParseState& st, const std::string& v, const Where& w) {
          st.s.resonator.kappa2 = two_pi * to_double(v, w); }},
        {"b0_tesla", YIG_NUM(st.s.resonator.b0)},
        {"ms_a_per_m", YIG_NUM(st.s.resonator.ms)},
        {"k1_over_mu0ms_tesla", YIG_NUM(st.s.resonator.k1_over_mu0ms)},
        {"theta_rad", YIG_NUM(st.s.resonator.theta)},
        {"demag_x", YIG_NUM(st.s.resonator.demag.nx)},
        {"demag_y", YIG_NUM(st.s.resonator.demag.ny)},
        {"demag_z", YIG_NUM(st.s.resonator.demag.nz)}}},
      {"leeson",
       {{"enabled", [](ParseState& st, const std::string& v, const Where& w) { st.leeson_on = to_bool(v, w); }},
        {"f_leeson_hz", YIG_NUM(st.leeson.f_leeson)},
        {"f_corner_hz", YIG_NUM(st.leeson.f_corner)},
        {"noise_factor", YIG_NUM(st.leeson.noise_factor)},
        {"p_sustain_w", [](ParseState& st, const std::string& v, const Where& w) {
          st.leeson.p_sustain = to_double(v, w);
          st.saw_w = true; }},
        {"p_sustain_dbm", [](ParseState& st, const std::string& v, const Where& w) {
          st.leeson.p_sustain = 1e-3 * std::pow(10.0, to_double(v, w) / 10.0);
          st.saw_dbm = true; }},
        {"temperature_k", YIG_NUM(st.leeson.temperature)}}},
      {"sampling",
       {{"sample_rate_hz", YIG_NUM(st.s.sampling.sample_rate_hz)},
        {"if_hz", YIG_NUM(st.s.sampling.if_hz)},
        {"lo_hz", YIG_NUM(st.s.sampling.lo_hz)},
        {"decimation", [](ParseState& st, const std::string& v, const Where& w) {
          st.s.sampling.decimation = static_cast<std::size_t>(to_uint(v, w)); }},
        {"duration_s", YIG_NUM(st.s.sampling.duration_s)},
        {"guard_s", YIG_NUM(st.s.sampling.guard_s)}}},
      {"spectral",
       {{"segment_s", YIG_NUM(st.s.spectral.segment_s)},
        {"tukey_alpha", YIG_NUM(st.s.spectral.tukey_alpha)},
        {"noise_band_lo_hz", YIG_NUM(st.s.spectral.noise_band_lo_hz)},
        {"noise_band_hi_hz", YIG_NUM(st.s.spectral.noise_band_hi_hz)},
        {"fit_f_min_hz", YIG_NUM(st.s.spectral.fit_f_min_hz)}}},
      {"chop",
       {{"enabled", [](ParseState& st, const std::string& v, const Where& w) { st.chop_on = to_bool(v, w); }},
        {"period_s", [](ParseState& st, const std::string& v, const Where& w) {
          if (!st.chop) st.chop = st.s.chop.value_or(ChopSchedule{});
          st.chop->period_s = to_double(v, w); }},
        {"duty", [](ParseState& st, const std::string& v, const Where& w) {
          if (!st.chop) st.chop = st.s.chop.value_or(ChopSchedule{});
          st.chop->duty = to_double(v, w); }}}},
  };
  return table;
}

#undef YIG_NUM

void set_tone_key(Tone& t, const std::string& key, const std::string& v, const Where& w) {
  if (key == "f_hz") {
    t.f_hz = to_double(v, w);
  } else if (key == "b_rms_tesla") {
    t.b_rms_tesla = to_double(v, w);
  } else if (key == "phase_rad") {
    t.phase_rad = to_double(v, w);
  } else {
    throw ConfigError(w.str() + ": unknown key");
  }
}

std::string env_name(const std::string& section, const std::string& key) {
  std::string name = "YIGMAG_" + section + "_" + key;
  for (char& c : name) {
    if (c == '.') c = '_';
    c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }
  return name;
}

}  // namespace

Scenario parse_scenario(std::istream& in, const std::string& source, const EnvLookup& env) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ParseError(source, e.line(), e.message());
  }

  ParseState st;
  bool chop_section = false;
  std::vector<std::pair<std::string, Tone>> tones;
  bool tones_in_file = false;

  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) {
      throw ConfigError(source + ": key '" + section + "' outside any section");
    }
    if (section.rfind("tone.", 0) == 0) {
      tones_in_file = true;
      Tone t;
      for (const auto& [key, val] : body) {
        set_tone_key(t, key, val.data(), {source, section, key});
      }
      tones.emplace_back(section, t);
      continue;
    }
    const auto sec = schema().find(section);
    if (sec == schema().end()) throw ConfigError(source + ": unknown section [" + section + "]");
    if (section == "chop") chop_section = true;
    for (const auto& [key, val] : body) {
      const auto k = sec->second.find(key);
      if (k == sec->second.end()) throw ConfigError(Where{source, section, key}.str() + ": unknown key");
      k->second(st, val.data(), {source, section, key});
    }
  }

  if (env) {
    for (const auto& [section, keys] : schema()) {
      for (const auto& [key, setter] : keys) {
        if (auto v = env(env_name(section, key))) {
          if (section == "chop") chop_section = true;
          setter(st, *v, {"env " + env_name(section, key), section, key});
        }
      }
    }
    for (auto& [section, tone] : tones) {
      for (const char* key : {"f_hz", "b_rms_tesla", "phase_rad"}) {
        if (auto v = env(env_name(section, key))) {
          set_tone_key(tone, key, *v, {"env " + env_name(section, key), section, key});
        }
      }
    }
  }

  if (st.saw_w && st.saw_dbm) {
    throw ConfigError(source + ": [leeson] give p_sustain_w or p_sustain_dbm, not both");
  }
  Scenario s = st.s;
  s.leeson = st.leeson_on ? std::optional<LeesonModel>(st.leeson) : std::nullopt;
  if (chop_section && st.chop) s.chop = st.chop;
  if (!st.chop_on) s.chop.reset();
  if (tones_in_file || !st.reference_tones) {
    s.tones.clear();
    for (const auto& [name, t] : tones) s.tones.push_back(t);
  }
  try {
    s.validate();
  } catch (const InvalidInput& e) {
    throw ConfigError(source + ": " + e.what());
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path, const EnvLookup& env) {
  std::ifstream in(path);
  if (!in) throw ConfigError("load_scenario: cannot open " + path.string());
  return parse_scenario(in, path.string(), env);
}

json scenario_json(const Scenario& s) {
  json j;
  // Tones are listed explicitly, so the echo never relies on the reference set.
  j["run"] = {{"seed", s.seed}, {"reference_tones", false}};
  const auto& r = s.resonator;
  j["resonator"] = {{"kappa0_hz", r.kappa0 / two_pi},
                    {"kappa1_hz", r.kappa1 / two_pi},
                    {"kappa2_hz", r.kappa2 / two_pi},
                    {"b0_tesla", r.b0},
                    {"ms_a_per_m", r.ms},
                    {"k1_over_mu0ms_tesla", r.k1_over_mu0ms},
                    {"theta_rad", r.theta},
                    {"demag_x", r.demag.nx},
                    {"demag_y", r.demag.ny},
                    {"demag_z", r.demag.nz}};
  if (s.leeson) {
    const auto& l = *s.leeson;
    j["leeson"] = {{"enabled", true},
                   {"f_leeson_hz", l.f_leeson},
                   {"f_corner_hz", l.f_corner},
                   {"noise_factor", l.noise_factor},
                   {"p_sustain_w", l.p_sustain},
                   {"temperature_k", l.temperature}};
  } else {
    j["leeson"] = {{"enabled", false}};
  }
  const auto& p = s.sampling;
  j["sampling"] = {{"sample_rate_hz", p.sample_rate_hz}, {"if_hz", p.if_hz},
                   {"lo_hz", p.lo_hz},                   {"decimation", p.decimation},
                   {"duration_s", p.duration_s},         {"guard_s", p.guard_s}};
  const auto& sp = s.spectral;
  j["spectral"] = {{"segment_s", sp.segment_s},
                   {"tukey_alpha", sp.tukey_alpha},
                   {"noise_band_lo_hz", sp.noise_band_lo_hz},
                   {"noise_band_hi_hz", sp.noise_band_hi_hz},
                   {"fit_f_min_hz", sp.fit_f_min_hz}};
  for (std::size_t i = 0; i < s.tones.size(); ++i) {
    j["tone." + std::to_string(i + 1)] = {{"f_hz", s.tones[i].f_hz},
                                          {"b_rms_tesla", s.tones[i].b_rms_tesla},
                                          {"phase_rad", s.tones[i].phase_rad}};
  }
  if (s.chop) {
    j["chop"] = {{"enabled", true}, {"period_s", s.chop->period_s}, {"duty", s.chop->duty}};
  } else {
    j["chop"] = {{"enabled", false}};
  }
  return j;
}

FieldSeries build_field(const Scenario& s, double rate, double t0, std::size_t n) {
  FieldSeries f;
  f.sample_rate = rate;
  f.b0 = s.resonator.b0;
  f.samples.assign(n, 0.0);
  for (const auto& tone : s.tones) {
    const double amp = std::sqrt(2.0) * tone.b_rms_tesla;
    // Reduce the tone phase in cycles so long records keep precision.
    const long double cycles_per_sample = static_cast<long double>(tone.f_hz) / rate;
    const long double start = static_cast<long double>(tone.f_hz) * t0;
    for (std::size_t i = 0; i < n; ++i) {
      long double c = start + static_cast<long double>(i) * cycles_per_sample;
      c -= std::floor(c);
      f.samples[i] += amp * std::cos(static_cast<double>(c) * two_pi + tone.phase_rad);
    }
  }
  if (s.chop) {
    for (std::size_t i = 0; i < n; ++i) {
      const double t = t0 + static_cast<double>(i) / rate;
      if (!s.chop->on_at(t)) f.samples[i] = 0.0;
    }
  }
  return f;
}

namespace {

template <class F>
auto stage(const char* name, F&& body) -> decltype(body()) {
  const std::string p = std::string("run_scenario[") + name + "]: ";
  try {
    return body();
  } catch (const ParseError&) {
    throw;
  } catch (const DegenerateData& e) {
    throw DegenerateData(p + e.what());
  } catch (const NumericalError& e) {
    throw NumericalError(p + e.what());
  } catch (const SamplingError& e) {
    throw SamplingError(p + e.what());
  } catch (const InvalidInput& e) {
    throw InvalidInput(p + e.what());
  } catch (const DomainError& e) {
    throw DomainError(p + e.what());
  } catch (const ConfigError& e) {
    throw ConfigError(p + e.what());
  }
}

ChopSummary summarize_chop(const std::vector<AsdSpectrum>& segs, const Scenario& s) {
  ChopSummary c;
  c.trace = chop_detect(segs, s.tones.front().f_hz);
  double on_sum = 0.0, off_sum = 0.0;
  std::size_t on_n = 0, off_n = 0;
  c.on_min = INFINITY;
  c.off_max = 0.0;
  for (std::size_t i = 0; i < c.trace.size(); ++i) {
    const double mid = (static_cast<double>(i) + 0.5) * s.spectral.segment_s;
    const bool on = s.chop->on_at(mid);
    c.on.push_back(on);
    if (on) {
      on_sum += c.trace[i];
      ++on_n;
      c.on_min = std::min(c.on_min, c.trace[i]);
    } else {
      off_sum += c.trace[i];
      ++off_n;
      c.off_max = std::max(c.off_max, c.trace[i]);
    }
  }
  if (on_n == 0) c.on_min = 0.0;
  c.on_mean = on_n ? on_sum / static_cast<double>(on_n) : 0.0;
  c.off_mean = off_n ? off_sum / static_cast<double>(off_n) : 0.0;
  c.separation = c.off_mean > 0.0 ? c.on_mean / c.off_mean : INFINITY;
  return c;
}

}  // namespace

PhaseNoiseSpectrum phase_noise_from_asd(const AsdSpectrum& asd, double f_lo, double f_hi,
                                        int bands_per_decade, std::span<const double> exclude) {
  if (!(f_lo > 0.0 && f_hi > f_lo) || bands_per_decade < 1) {
    throw InvalidInput("phase_noise_from_asd: bad band limits");
  }
  PhaseNoiseSpectrum out;
  const double ratio = std::pow(10.0, 1.0 / bands_per_decade);
  const double reach = 2.5 * asd.bin_hz;
  std::size_t k = 0;
  for (double lo = f_lo; lo * ratio <= f_hi * (1.0 + 1e-12); lo *= ratio) {
    const double hi = lo * ratio;
    double acc = 0.0;
    std::size_t count = 0;
    while (k < asd.freqs.size() && asd.freqs[k] < lo) ++k;
    for (std::size_t j = k; j < asd.freqs.size() && asd.freqs[j] < hi; ++j) {
      bool skip = false;
      for (double e : exclude) skip = skip || std::abs(asd.freqs[j] - e) < reach;
      if (skip) continue;
      const double l_half = asd.asd[j] * constants::gamma_hz / (std::sqrt(2.0) * asd.freqs[j]);
      acc += l_half * l_half;
      ++count;
    }
    if (count == 0 || !(acc > 0.0)) continue;
    out.offsets.push_back(std::sqrt(lo * hi));
    out.l_dbchz.push_back(10.0 * std::log10(acc / static_cast<double>(count)));
  }
  return out;
}

RunResult run_scenario(const Scenario& s, Warnings* warnings) {
  s.validate();
  const auto& p = s.sampling;
  const double fs = p.sample_rate_hz;
  const double fa = p.analysis_rate_hz();
  const auto n_guard = static_cast<std::size_t>(std::llround(p.guard_s * fa));
  const auto n_analysis = static_cast<std::size_t>(std::llround(p.duration_s * fa));
  const std::size_t n_total = (n_analysis + 2 * n_guard) * p.decimation;
  const double t0 = -static_cast<double>(n_guard) / fa;

  double bandwidth = 0.0;
  for (const auto& t : s.tones) bandwidth = std::max(bandwidth, t.f_hz);
  const double numeric_carrier = p.lo_hz > 0.0 ? p.lo_hz + p.if_hz : p.if_hz;
  const double carrier_offset = static_cast<double>(
      static_cast<long double>(numeric_carrier) -
      static_cast<long double>(constants::gamma_hz) * s.resonator.b0);

  Waveform w = stage("encode", [&] {
    const FieldSeries field = build_field(s, fs, t0, n_total);
    SynthesisOptions opt;
    opt.leeson = s.leeson;
    opt.carrier_offset_hz = carrier_offset;
    opt.seed = s.seed;
    opt.modulation_bandwidth_hz = bandwidth;
    return synthesize_waveform(field, opt, warnings);
  });
  if (p.lo_hz > 0.0) {
    w = stage("mix_down", [&] {
      MixOptions m;
      m.decimation = p.decimation;
      m.modulation_bandwidth_hz = bandwidth;
      return mix_down(w, p.lo_hz, p.if_hz, m);
    });
  }

  RunResult result;
  result.recovered = stage("demod", [&] {
    AnalyticSignal a = analytic_signal(w, warnings);
    w.samples = {};
    const double lo_offset = p.lo_hz - carrier_offset;
    RecoveredField rec = recover_field(a, s.resonator.b0, lo_offset);
    a.samples = {};
    FieldSeries trimmed;
    trimmed.sample_rate = fa;
    trimmed.b0 = s.resonator.b0;
    const auto first = rec.field.samples.begin() + static_cast<std::ptrdiff_t>(n_guard);
    trimmed.samples.assign(first, first + static_cast<std::ptrdiff_t>(n_analysis));
    return trimmed;
  });

  std::vector<AsdSpectrum> segs;
  stage("spectral", [&] {
    result.asd = field_asd(result.recovered, s.spectral.segment_s, s.spectral.tukey_alpha);
    if (s.chop && !s.tones.empty()) {
      segs = segment_asds(result.recovered, s.spectral.segment_s, s.spectral.tukey_alpha);
      result.chop = summarize_chop(segs, s);
    }
    return 0;
  });

  json report;
  report["config"] = scenario_json(s);
  report["analysis"] = {{"sample_rate_hz", fa},
                        {"samples", n_analysis},
                        {"guard_samples", n_guard},
                        {"segments", result.asd.segments},
                        {"bin_hz", result.asd.bin_hz},
                        {"window", "tukey"},
                        {"tukey_alpha", result.asd.tukey_alpha},
                        {"convention", result.asd.convention}};

  std::vector<double> tone_freqs;
  json tones = json::array();
  for (const auto& t : s.tones) {
    tone_freqs.push_back(t.f_hz);
    const double v = result.asd.asd[bin_index(result.asd, t.f_hz)];
    tones.push_back({{"f_hz", t.f_hz},
                     {"b_rms_tesla", t.b_rms_tesla},
                     {"asd_t_per_rthz", v},
                     {"rms_estimate_tesla", v * std::sqrt(result.asd.bin_hz)}});
  }
  report["tones"] = tones;

  const double floor = band_rms(result.asd, s.spectral.noise_band_lo_hz, s.spectral.noise_band_hi_hz,
                                tone_freqs);
  json noise = {{"band_lo_hz", s.spectral.noise_band_lo_hz},
                {"band_hi_hz", s.spectral.noise_band_hi_hz},
                {"asd_t_per_rthz", floor}};
  if (s.leeson) {
    const auto eta = sensitivity_leeson_closed_form(*s.leeson);
    double acc = 0.0;
    std::size_t count = 0;
    for (double f : result.asd.freqs) {
      if (f < s.spectral.noise_band_lo_hz || f > s.spectral.noise_band_hi_hz) continue;
      acc += eta(f) * eta(f);
      ++count;
    }
    noise["predicted_t_per_rthz"] = std::sqrt(acc / static_cast<double>(std::max<std::size_t>(count, 1)));
  }
  report["noise_floor"] = noise;

  // Peak above the flicker region, where tones are expected to sit.
  double peak = 0.0, peak_hz = 0.0;
  for (std::size_t i = 0; i < result.asd.asd.size(); ++i) {
    if (result.asd.freqs[i] < s.spectral.fit_f_min_hz) continue;
    if (result.asd.asd[i] > peak) {
      peak = result.asd.asd[i];
      peak_hz = result.asd.freqs[i];
    }
  }
  report["peak"] = {{"f_min_hz", s.spectral.fit_f_min_hz}, {"f_hz", peak_hz}, {"asd_t_per_rthz", peak}};

  if (result.chop) {
    const auto& c = *result.chop;
    json states = json::array();
    for (bool b : c.on) states.push_back(b);
    const double seg_bin = 1.0 / s.spectral.segment_s;
    report["chop"] = {{"tone_hz", s.tones.front().f_hz}, {"segment_bin_hz", seg_bin},
                      {"trace_t_per_rthz", c.trace},
                      {"on_rms_estimate_tesla", c.on_mean * std::sqrt(seg_bin)},
                      {"off_rms_estimate_tesla", c.off_mean * std::sqrt(seg_bin)},
                      {"on", states},                   {"on_mean", c.on_mean},
                      {"off_mean", c.off_mean},         {"on_min", c.on_min},
                      {"off_max", c.off_max},           {"separation", c.separation}};
  }

  if (s.leeson) {
    const double f_hi = std::min(0.8 * p.if_hz, 0.25 * fa);
    try {
      const PhaseNoiseSpectrum pn =
          phase_noise_from_asd(result.asd, s.spectral.fit_f_min_hz, f_hi, 20, tone_freqs);
      const LeesonFit fit =
          fit_leeson(pn, s.leeson->p_sustain, s.leeson->temperature, s.spectral.fit_f_min_hz);
      report["leeson_fit"] = json::parse(io::leeson_fit_json(fit));
      report["leeson_fit"]["f_max_hz"] = f_hi;
    } catch (const Error& e) {
      report["leeson_fit"] = {{"error", e.what()}};
    }
  } else {
    report["leeson_fit"] = nullptr;
  }
  if (warnings) report["warnings"] = *warnings;
  result.report = std::move(report);
  return result;
}

void write_run(const std::filesystem::path& dir, const RunResult& result) {
  std::filesystem::create_directories(dir);
  io::write_field_binary(dir / "field.f64", result.recovered);
  io::write_spectrum(dir / "asd.txt", result.asd);
  if (result.chop) {
    std::ofstream out(dir / "chop.txt");
    out << "# segment, asd_t_per_rthz, on\n";
    for (std::size_t i = 0; i < result.chop->trace.size(); ++i) {
      out << i << ", " << json(result.chop->trace[i]).dump() << ", " << (result.chop->on[i] ? 1 : 0)
          << "\n";
    }
  }
  std::ofstream rep(dir / "report.json");
  rep << result.report.dump(2) << "\n";
  if (!rep) throw ConfigError("write_run: cannot write " + (dir / "report.json").string());
}

std::vector<SidebandPoint> sideband_sweep(double b_rms, std::span<const double> f_m_hz,
                                          double sample_rate, double carrier_hz, double record_s,
                                          double b0) {
  const auto n = static_cast<std::size_t>(std::llround(record_s * sample_rate));
  const double df = sample_rate / static_cast<double>(n);
  const double kc_real = carrier_hz / df;
  const auto kc = static_cast<std::size_t>(std::llround(kc_real));
  if (std::abs(kc_real - static_cast<double>(kc)) > 1e-9) {
    throw InvalidInput("sideband_sweep: carrier not on a DFT bin");
  }
  std::vector<SidebandPoint> out;
  std::vector<fft::cplx> spec(n / 2 + 1);
  for (double fm : f_m_hz) {
    const double km_real = fm / df;
    const auto km = static_cast<std::size_t>(std::llround(km_real));
    if (std::abs(km_real - static_cast<double>(km)) > 1e-9 || km == 0 || km >= kc) {
      throw InvalidInput("sideband_sweep: modulation frequency not on a DFT bin below the carrier");
    }
    Scenario sc;
    sc.resonator.b0 = b0;
    sc.tones = {{fm, b_rms, 0.0}};
    const FieldSeries field = build_field(sc, sample_rate, 0.0, n);
    SynthesisOptions opt;
    opt.carrier_offset_hz = carrier_hz - constants::gamma_hz * b0;
    opt.modulation_bandwidth_hz = fm;
    const Waveform w = synthesize_waveform(field, opt);
    fft::rfft_into(w.samples, spec);
    const double c = std::abs(spec[kc]);
    SidebandPoint pt;
    pt.f_m_hz = fm;
    pt.beta = modulation_index(b_rms, two_pi * fm);
    pt.predicted = predict_sideband(b_rms, two_pi * fm);
    pt.measured = std::abs(spec[kc + km]) / c;
    pt.lower = std::abs(spec[kc - km]) / c;
    out.push_back(pt);
  }
  return out;
}

}  // namespace yigmag
