#pragma once

#include <cstdint>
#include <string>

#include "dbmd/constants.hpp"

namespace dbmd {

/// Device geometry, material and fitting parameters. Defaults are the
/// Au/NbxOy/Al2O3/Nb stack values; energies are stored in eV and converted to
/// joules at the point of use.
struct DeviceParams {
  double T = 300.0;        // temperature [K]
  double d = 2.5e-10;      // lattice constant / ion jump distance [m]
  double A_d = 6.25e-10;   // device area [m^2] (625 um^2)
  double eps_r = 42.0;     // relative permittivity of the electrolyte
  double E_A = 0.76;       // ion hopping activation energy [eV]
  double sigma = 1.0e-4;   // electrolyte conductivity [S/m]
  double l_SE = 2.5e-9;    // electrolyte length [m]
  double n_defect = 5.0e26;  // defect density [m^-3]
  double d_0 = 1.1e-9;     // tunnel barrier width [m]
  double phi_t = 3.2;      // tunnel barrier height [eV]
  double phi_b0 = 0.98;    // initial Schottky barrier height [eV]
  double n_0 = 4.2;        // initial Schottky ideality factor

  // Knobs the device stack does not pin down; calibrated so the default run
  // shows the full set/reset cycle (see README for the calibration notes).
  int z = -2;              // ion charge number (O^2-)
  double nu_0 = 1.2e13;    // phonon attempt frequency [Hz]
  double alpha_r = 0.2;    // reverse-bias voltage dependence [eV V^-1/2]
  double beta = 1.08;      // Simmons correction factor
  double lambda_d = 0.0;   // tunnel width modulation
  double lambda_t = 0.0;   // tunnel height modulation
  double lambda_b = 0.8;   // Schottky height modulation
  double lambda_n = 0.85;  // ideality factor modulation (sign configurable)

  /// Throws config_error naming the violated constraint.
  void validate() const;
};

/// k_B * T [J].
double thermal_energy(const DeviceParams& p);

/// Random-perturbation settings for the mobile ions.
struct StochasticConfig {
  double delta = 0.05;     // maximum random displacement fraction of x
  std::uint64_t seed = 1;  // PRNG seed
  bool perturbation_enabled = true;

  void validate() const;   // warns on stderr for delta > 0.05
};

enum class WaveformKind { sawtooth_set_reset, sinusoid };

std::string to_string(WaveformKind kind);
WaveformKind waveform_kind_from_string(const std::string& name);

/// Applied-voltage programme. The sawtooth cycle runs
/// 0 -> V_set_peak -> 0 -> V_reset_peak -> 0 with leg durations proportional
/// to the voltage spans; the sinusoid is amplitude*sin(2*pi*t/period).
struct WaveformSpec {
  WaveformKind kind = WaveformKind::sawtooth_set_reset;
  double V_set_peak = 3.0;     // [V]
  double V_reset_peak = -1.5;  // [V]
  double amplitude = 3.0;      // [V], sinusoid only
  double period = 9.0;         // [s]
  int cycles = 1;

  void validate() const;
};

/// Discretization and run-control settings.
struct SimConfig {
  int n_ions = 20;
  int n_grid = 101;
  double dt = 0.01;        // outer-loop time step [s]
  double t_max = 9.0;      // total simulated time [s]; defaults to cycles*period
  double xi_tol = 1e-6;    // relative KCL residual tolerance
  int max_inner_iters = 200;
  WaveformSpec waveform;

  void validate() const;
};

struct Config {
  DeviceParams device;
  StochasticConfig stochastic;
  SimConfig sim;

  void validate() const;
};

/// Parses a flat JSON-object config document. Missing keys take the defaults
/// above; unknown keys and constraint violations raise config_error with the
/// offending key named. An explicit t_max overrides the cycles*period default.
Config load_config(const std::string& document);

/// Loads a config document from a file (io_error on read failure).
Config load_config_file(const std::string& path);

/// Serializes a config back to a flat JSON document; numeric values round-trip
/// bit-exactly through load_config.
std::string save_config(const Config& cfg);

/// FNV-1a hash of the serialized config, as a fixed-width hex string.
std::string params_hash(const Config& cfg);

/// Markdown table of every config key, default and description.
std::string default_config_table();

}  // namespace dbmd
