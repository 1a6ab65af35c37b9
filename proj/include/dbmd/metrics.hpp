#pragma once

#include <span>
#include <vector>

#include "dbmd/sim_engine.hpp"

namespace dbmd {

/// Hysteresis figures of one I-V cycle. Branch conventions: R_off is sampled
/// on the ascending (pre-set) positive branch, R_on on the descending
/// (post-set) positive branch, both at the sample nearest the read voltage;
/// the reset-branch current is sampled on the leg descending from 0 toward
/// the negative peak.
struct RunMetrics {
  double loop_area = 0.0;   // shoelace area of the (V, I) cycle [V*A]
  double R_on = 0.0;        // [Ohm]
  double R_off = 0.0;       // [Ohm]
  double onoff_ratio = 0.0; // R_off / R_on
  double set_branch_I_at_peak = 0.0;  // I at the maximum-V sample [A]
  double reset_branch_I = 0.0;        // I nearest the reset read voltage [A]
  double read_voltage = 0.5;          // [V]
  double reset_read_voltage = -1.0;   // [V]
  bool degenerate = false;  // no usable current scale (I identically ~0)
};

/// Metrics of the last full cycle of the trace. If the trace metadata carries
/// no period (e.g. a reread CSV), the whole trace is treated as one cycle.
/// Throws insufficient_data_error when the trace has fewer than 4 rows.
RunMetrics compute_metrics(const SweepTrace& trace, double read_voltage = 0.5,
                           double reset_read_voltage = -1.0);

/// Splits a multi-cycle trace into per-cycle traces (boundary rows shared).
std::vector<SweepTrace> split_cycles(const SweepTrace& trace);

/// Cross-trace variability: relative standard deviations of the set-branch
/// current at the positive peak and of the reset-branch current at the reset
/// read voltage, plus the per-trace metrics table.
struct VariabilityReport {
  std::vector<RunMetrics> per_trace;
  double rsd_set = 0.0;
  double rsd_reset = 0.0;
};

/// Requires >= 2 traces; throws alignment_error when the sampled voltages
/// disagree beyond one step's voltage increment.
VariabilityReport variability_report(std::span<const SweepTrace> traces,
                                     double read_voltage = 0.5,
                                     double reset_read_voltage = -1.0);

}  // namespace dbmd
