#include "dbmd/params.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "dbmd/errors.hpp"

namespace dbmd {

namespace {

using nlohmann::json;

void require(bool ok, const std::string& constraint) {
  if (!ok) throw config_error("constraint violated: " + constraint);
}

}  // namespace

void DeviceParams::validate() const {
  require(T > 0, "T > 0");
  require(d > 0, "d > 0");
  require(A_d > 0, "A_d > 0");
  require(eps_r >= 1, "eps_r >= 1");
  require(l_SE > 0, "l_SE > 0");
  require(d_0 > 0, "d_0 > 0");
  require(nu_0 > 0, "nu_0 > 0");
  require(sigma > 0, "sigma > 0");
  require(n_0 >= 1, "n_0 >= 1");
  require(z != 0, "z != 0");
  require(n_defect > 0, "n_defect > 0");
  require(E_A > 0, "E_A > 0");
  require(phi_t > 0, "phi_t > 0");
  require(phi_b0 > 0, "phi_b0 > 0");
  require(beta > 0, "beta > 0");
  require(alpha_r >= 0, "alpha_r >= 0");
  require(lambda_d >= 0 && lambda_d <= 1, "0 <= lambda_d <= 1");
  require(lambda_t >= 0 && lambda_t <= 1, "0 <= lambda_t <= 1");
  require(lambda_b >= 0 && lambda_b <= 1, "0 <= lambda_b <= 1");
  // lambda_n may be driven negative (the sign of the ideality-factor response
  // is device dependent).
  require(lambda_n >= -1 && lambda_n <= 1, "-1 <= lambda_n <= 1");
}

double thermal_energy(const DeviceParams& p) { return phys.k_B * p.T; }

void StochasticConfig::validate() const {
  require(delta >= 0, "delta >= 0");
  if (delta > 0.05) {
    std::cerr << "warning: delta = " << delta
              << " exceeds the stable range (<= 0.05 of the ion position)\n";
  }
}

std::string to_string(WaveformKind kind) {
  switch (kind) {
    case WaveformKind::sawtooth_set_reset: return "sawtooth-set-reset";
    case WaveformKind::sinusoid: return "sinusoid";
  }
  return "?";
}

WaveformKind waveform_kind_from_string(const std::string& name) {
  if (name == "sawtooth-set-reset") return WaveformKind::sawtooth_set_reset;
  if (name == "sinusoid") return WaveformKind::sinusoid;
  throw config_error("unknown waveform kind: \"" + name +
                     "\" (expected sawtooth-set-reset or sinusoid)");
}

void WaveformSpec::validate() const {
  require(period > 0, "period > 0");
  require(cycles >= 1, "cycles >= 1");
  if (kind == WaveformKind::sawtooth_set_reset) {
    require(V_set_peak > 0, "V_set_peak > 0");
    require(V_reset_peak < 0, "V_reset_peak < 0");
  }
}

void SimConfig::validate() const {
  require(n_ions >= 1, "n_ions >= 1");
  require(n_grid >= 3, "n_grid >= 3");
  require(dt > 0, "dt > 0");
  require(t_max >= dt, "t_max >= dt");
  require(xi_tol > 0 && xi_tol < 1, "0 < xi_tol < 1");
  require(max_inner_iters >= 1, "max_inner_iters >= 1");
  waveform.validate();
}

void Config::validate() const {
  device.validate();
  stochastic.validate();
  sim.validate();
}

namespace {

// One handler per config key; keeps parsing, serialization and the doc table
// in a single place.
struct KeyDesc {
  const char* key;
  const char* doc;
  void (*set)(Config&, const json&);
  json (*get)(const Config&);
};

template <typename T>
T as(const json& v, const char* key) {
  try {
    if constexpr (std::is_same_v<T, double>) {
      if (!v.is_number()) throw config_error("");
      return v.get<double>();
    } else if constexpr (std::is_same_v<T, int>) {
      if (!v.is_number_integer()) throw config_error("");
      return v.get<int>();
    } else if constexpr (std::is_same_v<T, std::uint64_t>) {
      if (!v.is_number_unsigned() && !v.is_number_integer()) throw config_error("");
      return v.get<std::uint64_t>();
    } else if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) throw config_error("");
      return v.get<bool>();
    } else {
      if (!v.is_string()) throw config_error("");
      return v.get<std::string>();
    }
  } catch (...) {
    throw config_error(std::string("config key \"") + key +
                       "\": wrong value type");
  }
}

#define NUM_KEY(field, member, doc_str)                                    \
  KeyDesc{#field, doc_str,                                                 \
          [](Config& c, const json& v) { c.member = as<double>(v, #field); }, \
          [](const Config& c) { return json(c.member); }}

const KeyDesc kKeys[] = {
    NUM_KEY(T, device.T, "temperature [K]"),
    NUM_KEY(d, device.d, "lattice constant / ion jump distance [m]"),
    NUM_KEY(A_d, device.A_d, "device area [m^2]"),
    NUM_KEY(eps_r, device.eps_r, "relative permittivity of the electrolyte"),
    NUM_KEY(E_A, device.E_A, "ion hopping activation energy [eV]"),
    NUM_KEY(sigma, device.sigma, "electrolyte conductivity [S/m]"),
    NUM_KEY(l_SE, device.l_SE, "electrolyte length [m]"),
    NUM_KEY(n_defect, device.n_defect, "defect density [m^-3]"),
    NUM_KEY(d_0, device.d_0, "tunnel barrier width [m]"),
    NUM_KEY(phi_t, device.phi_t, "tunnel barrier height [eV]"),
    NUM_KEY(phi_b0, device.phi_b0, "initial Schottky barrier height [eV]"),
    NUM_KEY(n_0, device.n_0, "initial Schottky ideality factor"),
    KeyDesc{"z", "ion charge number (signed)",
            [](Config& c, const json& v) { c.device.z = as<int>(v, "z"); },
            [](const Config& c) { return json(c.device.z); }},
    NUM_KEY(nu_0, device.nu_0, "phonon attempt frequency [Hz] (calibration)"),
    NUM_KEY(alpha_r, device.alpha_r,
            "reverse-bias voltage dependence [eV V^-1/2] (calibration)"),
    NUM_KEY(beta, device.beta, "Simmons correction factor (calibration)"),
    NUM_KEY(lambda_d, device.lambda_d, "tunnel width modulation (calibration)"),
    NUM_KEY(lambda_t, device.lambda_t, "tunnel height modulation (calibration)"),
    NUM_KEY(lambda_b, device.lambda_b, "Schottky height modulation (calibration)"),
    NUM_KEY(lambda_n, device.lambda_n,
            "ideality factor modulation (calibration; sign configurable)"),
    NUM_KEY(delta, stochastic.delta, "max random displacement fraction"),
    KeyDesc{"seed", "PRNG seed",
            [](Config& c, const json& v) {
              c.stochastic.seed = as<std::uint64_t>(v, "seed");
            },
            [](const Config& c) { return json(c.stochastic.seed); }},
    KeyDesc{"perturbation_enabled", "apply the random perturbation each step",
            [](Config& c, const json& v) {
              c.stochastic.perturbation_enabled =
                  as<bool>(v, "perturbation_enabled");
            },
            [](const Config& c) { return json(c.stochastic.perturbation_enabled); }},
    KeyDesc{"n_ions", "mobile ion count",
            [](Config& c, const json& v) { c.sim.n_ions = as<int>(v, "n_ions"); },
            [](const Config& c) { return json(c.sim.n_ions); }},
    KeyDesc{"n_grid", "Eulerian node count",
            [](Config& c, const json& v) { c.sim.n_grid = as<int>(v, "n_grid"); },
            [](const Config& c) { return json(c.sim.n_grid); }},
    NUM_KEY(dt, sim.dt, "outer-loop time step [s]"),
    NUM_KEY(t_max, sim.t_max, "total simulated time [s] (default cycles*period)"),
    NUM_KEY(xi_tol, sim.xi_tol, "relative KCL residual tolerance"),
    KeyDesc{"max_inner_iters", "operating-point iteration cap",
            [](Config& c, const json& v) {
              c.sim.max_inner_iters = as<int>(v, "max_inner_iters");
            },
            [](const Config& c) { return json(c.sim.max_inner_iters); }},
    KeyDesc{"kind", "waveform kind (sawtooth-set-reset | sinusoid)",
            [](Config& c, const json& v) {
              c.sim.waveform.kind =
                  waveform_kind_from_string(as<std::string>(v, "kind"));
            },
            [](const Config& c) { return json(to_string(c.sim.waveform.kind)); }},
    NUM_KEY(V_set_peak, sim.waveform.V_set_peak, "sawtooth set peak [V]"),
    NUM_KEY(V_reset_peak, sim.waveform.V_reset_peak, "sawtooth reset peak [V]"),
    NUM_KEY(amplitude, sim.waveform.amplitude, "sinusoid amplitude [V]"),
    NUM_KEY(period, sim.waveform.period, "waveform period [s]"),
    KeyDesc{"cycles", "number of waveform cycles",
            [](Config& c, const json& v) {
              c.sim.waveform.cycles = as<int>(v, "cycles");
            },
            [](const Config& c) { return json(c.sim.waveform.cycles); }},
};

#undef NUM_KEY

}  // namespace

Config load_config(const std::string& document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::exception& e) {
    throw config_error(std::string("config parse failure: ") + e.what());
  }
  if (!doc.is_object())
    throw config_error("config document must be a JSON object");

  Config cfg;
  bool explicit_t_max = false;
  for (const auto& [key, value] : doc.items()) {
    bool known = false;
    for (const auto& kd : kKeys) {
      if (key == kd.key) {
        kd.set(cfg, value);
        known = true;
        break;
      }
    }
    if (!known) throw config_error("unknown config key: \"" + key + "\"");
    if (key == "t_max") explicit_t_max = true;
  }
  if (!explicit_t_max)
    cfg.sim.t_max = cfg.sim.waveform.cycles * cfg.sim.waveform.period;
  cfg.validate();
  return cfg;
}

Config load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_config(ss.str());
}

std::string save_config(const Config& cfg) {
  json doc = json::object();
  for (const auto& kd : kKeys) doc[kd.key] = kd.get(cfg);
  return doc.dump(2) + "\n";
}

std::string params_hash(const Config& cfg) {
  const std::string s = save_config(cfg);
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string default_config_table() {
  const Config defaults;
  std::ostringstream out;
  out << "| key | default | description |\n|---|---|---|\n";
  for (const auto& kd : kKeys)
    out << "| `" << kd.key << "` | `" << kd.get(defaults).dump() << "` | "
        << kd.doc << " |\n";
  return out.str();
}

}  // namespace dbmd
