// Copyright 2026 The dising Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dising/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

namespace dising {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view want) {
  throw ConfigError("invalid value '" + std::string(value) + "' for " + std::string(key) +
                    " (expected " + std::string(want) + ")");
}

double to_double(std::string_view key, std::string_view text) {
  std::string_view s = trim(text);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) bad_value(key, text, "a number");
  return x;
}

long long to_integer(std::string_view key, std::string_view text) {
  const std::string_view s = trim(text);
  long long x = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) bad_value(key, text, "an integer");
  return x;
}

int to_int(std::string_view key, std::string_view text) {
  const long long x = to_integer(key, text);
  if (x < -1000000000LL || x > 1000000000LL) bad_value(key, text, "a small integer");
  return static_cast<int>(x);
}

std::uint64_t to_u64(std::string_view key, std::string_view text) {
  const std::string_view s = trim(text);
  std::uint64_t x = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    bad_value(key, text, "a non-negative integer");
  }
  return x;
}

bool to_bool(std::string_view key, std::string_view text) {
  const std::string_view s = trim(text);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  bad_value(key, text, "true or false");
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

Axis to_axis(std::string_view key, std::string_view text) {
  try {
    return parse_axis(std::string(trim(text)));
  } catch (const ConfigError&) {
    bad_value(key, text, "lambda, delta or v");
  }
}

struct Entry {
  const char* name;
  const char* help;
  std::function<void(RunConfig&, std::string_view)> set;
  std::function<std::string(const RunConfig&)> get;
};

#define DISING_REAL(key, help, field)                                                \
  Entry {                                                                            \
    key, help, [](RunConfig& c, std::string_view v) { c.field = to_double(key, v); }, \
        [](const RunConfig& c) { return format_double(c.field); }                   \
  }
#define DISING_INT(key, help, field)                                              \
  Entry {                                                                         \
    key, help, [](RunConfig& c, std::string_view v) { c.field = to_int(key, v); }, \
        [](const RunConfig& c) { return std::to_string(c.field); }               \
  }
#define DISING_BOOL(key, help, field)                                              \
  Entry {                                                                          \
    key, help, [](RunConfig& c, std::string_view v) { c.field = to_bool(key, v); }, \
        [](const RunConfig& c) { return bool_text(c.field); }                     \
  }

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table = {
      DISING_INT("n", "number of sites", params.n_sites),
      DISING_REAL("delta", "detuning", params.delta),
      DISING_REAL("omega", "Rabi frequency", params.omega),
      DISING_REAL("v", "nearest-neighbour interaction", params.v),
      DISING_REAL("gamma", "decay rate", params.gamma),
      DISING_REAL("lambda", "quantum fraction of the interaction", params.lambda),

      Entry{"theta0", "initial polar angle (accepts pi expressions)",
            [](RunConfig& c, std::string_view v) { c.initial.theta0 = parse_angle(v); },
            [](const RunConfig& c) { return format_double(c.initial.theta0); }},
      DISING_REAL("stagger", "alternating angle offset", initial.stagger),
      DISING_REAL("random_amplitude", "uniform random angle offset amplitude",
                  initial.random_amplitude),
      Entry{"seed", "RNG seed",
            [](RunConfig& c, std::string_view v) { c.initial.seed = to_u64("seed", v); },
            [](const RunConfig& c) { return std::to_string(c.initial.seed); }},

      Entry{"method", "rk4 or rk45",
            [](RunConfig& c, std::string_view v) {
              const std::string_view s = trim(v);
              if (s == "rk4") {
                c.evolve.method = Method::kRk4;
              } else if (s == "rk45") {
                c.evolve.method = Method::kRk45;
              } else {
                bad_value("method", v, "rk4 or rk45");
              }
            },
            [](const RunConfig& c) {
              return std::string(c.evolve.method == Method::kRk4 ? "rk4" : "rk45");
            }},
      DISING_REAL("dt", "time step (initial step for rk45)", evolve.dt),
      DISING_REAL("t_max", "integration time", evolve.t_max),
      DISING_REAL("sample_interval", "trajectory sampling interval", evolve.sample_interval),
      DISING_INT("hermitize_interval", "steps between hermitize/renormalize",
                 evolve.hermitize_interval),
      DISING_REAL("abs_tol", "rk45 absolute tolerance", evolve.abs_tol),
      DISING_REAL("rel_tol", "rk45 relative tolerance", evolve.rel_tol),
      DISING_REAL("trace_tolerance", "abort when |Tr rho - 1| exceeds this",
                  evolve.trace_tolerance),
      DISING_REAL("hermiticity_tolerance", "abort when ||rho - rho^dagger|| exceeds this",
                  evolve.hermiticity_tolerance),
      DISING_REAL("steady_tolerance", "||rhs|| below which a final state is stationary",
                  evolve.steady_tolerance),
      DISING_INT("positivity_every", "eigenvalue check every k-th sample (0 = end only)",
                 evolve.positivity_every),

      DISING_REAL("stop_residual", "stop integrating once ||rhs|| is below this (0 = never)",
                  evolve.stop_residual),

      DISING_REAL("variance_start", "D window start", variance.start),
      DISING_REAL("variance_length", "D window length", variance.length),
      DISING_REAL("variance_interval", "D window sample spacing", variance.sample_interval),

      DISING_REAL("spectrum_start", "FFT window start", spectral.start),
      DISING_REAL("spectrum_length", "FFT window length", spectral.length),
      DISING_REAL("spectrum_interval", "FFT sample spacing", spectral.sample_interval),
      DISING_BOOL("taper", "Hann taper before the FFT", taper),
      Entry{"signal", "even, odd, or site:K (one-based)",
            [](RunConfig& c, std::string_view v) {
              const std::string_view s = trim(v);
              if (s == "even") {
                c.signal = {SignalSelector::Kind::kEven, 0};
              } else if (s == "odd") {
                c.signal = {SignalSelector::Kind::kOdd, 0};
              } else if (s.starts_with("site:")) {
                const int k = to_int("signal", s.substr(5));
                if (k < 1) bad_value("signal", v, "site:K with K >= 1");
                c.signal = {SignalSelector::Kind::kSite, k - 1};
              } else {
                bad_value("signal", v, "even, odd, or site:K");
              }
            },
            [](const RunConfig& c) -> std::string {
              switch (c.signal.kind) {
                case SignalSelector::Kind::kEven:
                  return "even";
                case SignalSelector::Kind::kOdd:
                  return "odd";
                case SignalSelector::Kind::kSite:
                  return "site:" + std::to_string(c.signal.site + 1);
              }
              return "even";
            }},

      DISING_REAL("osc_threshold", "peak-to-peak n_even above which a window oscillates",
                  classifier.oscillation_threshold),
      DISING_REAL("afm_threshold", "sublattice gap above which a steady window is AFM",
                  classifier.sublattice_threshold),
      DISING_REAL("peak_prominence", "peak prominence relative to the largest amplitude",
                  classifier.peak_prominence),
      DISING_REAL("half_tolerance", "relative tolerance for the half-frequency peak",
                  classifier.half_frequency_tolerance),
      DISING_REAL("flatness_threshold", "broadband score above which LC is near-chaotic",
                  classifier.flatness_threshold),
      DISING_REAL("flatness_band", "flatness band in units of the dominant frequency",
                  classifier.flatness_band),

      DISING_REAL("steady_t_max", "time limit of the steady-state search", steady_t_max),
      DISING_REAL("steady_rhs_tol", "||rhs|| that ends the steady-state search",
                  steady_rhs_tolerance),

      Entry{"x_axis", "sweep x axis",
            [](RunConfig& c, std::string_view v) { c.grid.x.axis = to_axis("x_axis", v); },
            [](const RunConfig& c) { return to_string(c.grid.x.axis); }},
      DISING_REAL("x_min", "sweep x start", grid.x.min),
      DISING_REAL("x_max", "sweep x end (inclusive)", grid.x.max),
      DISING_REAL("x_step", "sweep x step", grid.x.step),
      Entry{"y_axis", "sweep y axis",
            [](RunConfig& c, std::string_view v) { c.grid.y.axis = to_axis("y_axis", v); },
            [](const RunConfig& c) { return to_string(c.grid.y.axis); }},
      DISING_REAL("y_min", "sweep y start", grid.y.min),
      DISING_REAL("y_max", "sweep y end (inclusive)", grid.y.max),
      DISING_REAL("y_step", "sweep y step", grid.y.step),
      DISING_BOOL("shared_seed", "same initial-state seed in every cell", grid.shared_seed),
      DISING_INT("jobs", "sweep worker threads", jobs),
      Entry{"direction", "derivative direction dx,dy (normalized)",
            [](RunConfig& c, std::string_view v) {
              const std::string_view s = trim(v);
              const auto comma = s.find(',');
              if (comma == std::string_view::npos) bad_value("direction", v, "dx,dy");
              const double dx = to_double("direction", s.substr(0, comma));
              const double dy = to_double("direction", s.substr(comma + 1));
              const double norm = std::hypot(dx, dy);
              if (!(norm > 0.0) || !std::isfinite(norm)) bad_value("direction", v, "a nonzero vector");
              // Unit input is kept as written so formatted values round-trip.
              const double scale = std::abs(norm - 1.0) < 1e-12 ? 1.0 : norm;
              c.direction_x = dx / scale;
              c.direction_y = dy / scale;
            },
            [](const RunConfig& c) {
              return format_double(c.direction_x) + "," + format_double(c.direction_y);
            }},
      DISING_BOOL("steady_observables", "record C_r and negativity per sweep cell",
                  steady_observables),
      DISING_BOOL("export_matrices", "write D, derivative and label CSV matrices",
                  export_matrices),

      Entry{"output", "output directory",
            [](RunConfig& c, std::string_view v) { c.output = std::string(trim(v)); },
            [](const RunConfig& c) { return c.output; }},
      Entry{"kernel", "auto, scalar or avx2",
            [](RunConfig& c, std::string_view v) {
              const std::string s(trim(v));
              (void)kernels::parse_isa(s);
              c.kernel = s;
            },
            [](const RunConfig& c) { return c.kernel; }},
  };
  return table;
}

#undef DISING_REAL
#undef DISING_INT
#undef DISING_BOOL

const Entry& find_entry(std::string_view key) {
  for (const Entry& e : entries()) {
    if (key == e.name) return e;
  }
  throw ConfigError("unknown config key '" + std::string(key) + "'");
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw ConfigError("cannot format number");
  return std::string(buf, ptr);
}

double parse_angle(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (ch != ' ' && ch != '\t') s.push_back(ch);
  }
  const auto pi_pos = s.find("pi");
  if (pi_pos == std::string::npos) return to_double("theta0", s);
  // [coef[*]]pi[/den]
  std::string coef = s.substr(0, pi_pos);
  const std::string rest = s.substr(pi_pos + 2);
  if (!coef.empty() && coef.back() == '*') coef.pop_back();
  double c = 1.0;
  if (coef == "-") {
    c = -1.0;
  } else if (!coef.empty() && coef != "+") {
    c = to_double("theta0", coef);
  }
  double den = 1.0;
  if (!rest.empty()) {
    if (rest.front() != '/') bad_value("theta0", text, "a number or a multiple of pi");
    den = to_double("theta0", rest.substr(1));
    if (den == 0.0) bad_value("theta0", text, "a nonzero denominator");
  }
  return c * std::numbers::pi / den;
}

const std::vector<ConfigKey>& config_keys() {
  static const std::vector<ConfigKey> keys = [] {
    std::vector<ConfigKey> out;
    for (const Entry& e : entries()) out.push_back({e.name, e.help});
    return out;
  }();
  return keys;
}

void set_config_value(RunConfig& config, std::string_view key, std::string_view value) {
  find_entry(trim(key)).set(config, value);
}

std::string get_config_value(const RunConfig& config, std::string_view key) {
  return find_entry(key).get(config);
}

void apply_config_text(RunConfig& config, std::string_view text, const std::string& origin) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = (origin.empty() ? "line " : origin + ":") + std::to_string(line_no);
    if (eq == std::string_view::npos) throw ConfigError(where + ": expected key = value");
    try {
      set_config_value(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ConfigError(where + ": " + e.what());
    }
  }
}

void apply_config_file(RunConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  apply_config_text(config, ss.str(), path);
}

std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& config) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const Entry& e : entries()) out.emplace_back(e.name, e.get(config));
  return out;
}

std::string format_config(const RunConfig& config) {
  std::string out;
  for (const auto& [k, v] : config_entries(config)) out += k + " = " + v + "\n";
  return out;
}

void RunConfig::validate() const {
  params.validate_allow_odd();
  initial.validate();
  evolve.validate();
  variance.validate();
  spectral.validate();
  classifier.validate();
  if (!(steady_t_max > 0.0) || !(steady_rhs_tolerance > 0.0)) {
    throw ConfigError("steady_t_max and steady_rhs_tol must be positive");
  }
  if (jobs < 1) throw ConfigError("jobs must be >= 1");
  if (signal.kind == SignalSelector::Kind::kSite && signal.site >= params.n_sites) {
    throw ConfigError("signal site exceeds n");
  }
  (void)kernels::parse_isa(kernel);
}

SweepConfig RunConfig::sweep_config() const {
  SweepConfig s;
  s.evolve = evolve;
  s.initial = initial;
  s.variance = variance;
  s.spectral = spectral;
  s.classifier = classifier;
  s.steady_observables = steady_observables;
  s.jobs = jobs;
  return s;
}

Grid2D RunConfig::sweep_grid() const {
  Grid2D g = grid;
  g.base = params;
  g.seed = initial.seed;
  return g;
}

kernels::Isa RunConfig::isa() const { return kernels::parse_isa(kernel); }

}  // namespace dising
