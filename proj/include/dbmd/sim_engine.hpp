#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dbmd/field_grid.hpp"
#include "dbmd/ion_kinetics.hpp"
#include "dbmd/operating_point.hpp"
#include "dbmd/params.hpp"

namespace dbmd {

/// Applied voltage at time t for the given waveform (periodic in `period`).
double waveform_value(const WaveformSpec& spec, double t);

struct TraceRow {
  double t;         // [s]
  double V_device;  // [V]
  double I;         // [A]
  double V_SC;      // [V]
  double V_SE;      // [V]
  double V_TB;      // [V]
  double q;         // internal state at the operating point
  double d_bar;     // [m]
};

/// Full time series of one run. Rows are strictly increasing in t with
/// floor(t_max/dt)+1 entries; each row holds the operating point evaluated at
/// the internal state *before* that step's ion update.
struct SweepTrace {
  std::vector<TraceRow> rows;
  /// Mobile-ion positions per row; filled only when ion recording is on.
  std::vector<std::vector<double>> ion_positions;

  // Run metadata.
  std::uint64_t seed = 0;
  double delta = 0.0;
  std::string params_hash;
  WaveformSpec waveform;
  double dt = 0.0;
};

/// Per-step inspection hook (used by the CLI grid dump); called after the
/// Poisson solve of every step.
using GridDumpHook = std::function<void(double t, const FieldGrid&)>;

/// One device/run: owns the ensemble, grid, PRNG stream and trace.
class Simulation {
 public:
  explicit Simulation(const Config& cfg);

  /// Per-step order: operating point at the current state, boundary
  /// potentials from its drops, CIC deposit of mobile+fixed ions, Poisson
  /// solve, drift push, random perturbation, state update. The trace row is
  /// recorded with the pre-push state. Solver failures abort the run with the
  /// step index attached.
  void step(double t, double dt);

  /// Runs t = 0 .. t_max in outer steps of dt and returns the full trace
  /// (one extra operating-point sample at t_max closes the last row).
  SweepTrace run();

  void set_record_ions(bool on) { record_ions_ = on; }
  void set_grid_dump(GridDumpHook hook) { grid_dump_ = std::move(hook); }

  const IonEnsemble& ions() const { return ions_; }
  const FieldGrid& grid() const { return grid_; }
  const SweepTrace& trace() const { return trace_; }

 private:
  void append_row(double t, const OperatingPoint& op);

  Config cfg_;
  Rng rng_;
  IonEnsemble ions_;
  FieldGrid grid_;
  SweepTrace trace_;
  std::vector<double> scratch_positions_;
  std::vector<double> scratch_charges_;
  bool record_ions_ = false;
  GridDumpHook grid_dump_;
  long step_index_ = 0;
};

/// Single run with the config's waveform and seed.
SweepTrace run_single(const Config& cfg);

/// Continuous multi-cycle run on one device (cycle-to-cycle study).
SweepTrace run_c2c(Config cfg, int cycles);

/// Independent devices: one cycle each, one seed per device, run concurrently
/// on up to `threads` threads. Results are ordered by input seed order and
/// independent of the thread count.
std::vector<SweepTrace> run_d2d(const Config& cfg,
                                const std::vector<std::uint64_t>& seeds,
                                int threads = 0);

/// Sinusoid runs at each amplitude with a shared seed.
std::vector<SweepTrace> run_amplitude_study(const Config& cfg,
                                            const std::vector<double>& amplitudes,
                                            int threads = 0);

}  // namespace dbmd
