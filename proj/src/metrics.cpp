#include "dbmd/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "dbmd/errors.hpp"

namespace dbmd {

namespace {

// Currents below this are treated as "no usable scale" when forming
// resistances; the degenerate flag is raised instead of dividing by ~0.
constexpr double kDegenerateCurrent = 1e-30;

std::vector<TraceRow> sorted_rows(const SweepTrace& trace) {
  std::vector<TraceRow> rows = trace.rows;
  std::sort(rows.begin(), rows.end(),
            [](const TraceRow& a, const TraceRow& b) { return a.t < b.t; });
  return rows;
}

std::size_t index_of_peak(const std::vector<TraceRow>& rows, bool maximum) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    if (maximum ? rows[k].V_device > rows[best].V_device
                : rows[k].V_device < rows[best].V_device)
      best = k;
  }
  return best;
}

/// Sample within [first, last] nearest the read voltage; SIZE_MAX if the
/// window is empty.
std::size_t nearest_sample(const std::vector<TraceRow>& rows, std::size_t first,
                           std::size_t last, double v_read) {
  std::size_t best = std::numeric_limits<std::size_t>::max();
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t k = first; k <= last && k < rows.size(); ++k) {
    const double dist = std::abs(rows[k].V_device - v_read);
    if (dist < best_dist) {
      best_dist = dist;
      best = k;
    }
  }
  return best;
}

double shoelace_area(const std::vector<TraceRow>& rows) {
  double twice = 0.0;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const TraceRow& a = rows[k];
    const TraceRow& b = rows[(k + 1) % rows.size()];
    twice += a.V_device * b.I - b.V_device * a.I;
  }
  return 0.5 * std::abs(twice);
}

double max_voltage_step(const std::vector<TraceRow>& rows) {
  double m = 0.0;
  for (std::size_t k = 1; k < rows.size(); ++k)
    m = std::max(m, std::abs(rows[k].V_device - rows[k - 1].V_device));
  return m;
}

}  // namespace

std::vector<SweepTrace> split_cycles(const SweepTrace& trace) {
  const double period = trace.waveform.period;
  const int cycles = trace.waveform.cycles;
  if (period <= 0 || cycles <= 1) return {trace};

  std::vector<SweepTrace> out;
  const double t0 = trace.rows.empty() ? 0.0 : trace.rows.front().t;
  const double slack = trace.dt > 0 ? 0.5 * trace.dt : 1e-12 * period;
  for (int c = 0; c < cycles; ++c) {
    SweepTrace cycle;
    cycle.seed = trace.seed;
    cycle.delta = trace.delta;
    cycle.params_hash = trace.params_hash;
    cycle.waveform = trace.waveform;
    cycle.waveform.cycles = 1;
    cycle.dt = trace.dt;
    const double lo = t0 + c * period - slack;
    const double hi = t0 + (c + 1) * period + slack;
    for (const TraceRow& r : trace.rows)
      if (r.t >= lo && r.t <= hi) cycle.rows.push_back(r);
    if (cycle.rows.size() >= 2) out.push_back(std::move(cycle));
  }
  return out.empty() ? std::vector<SweepTrace>{trace} : out;
}

RunMetrics compute_metrics(const SweepTrace& trace, double read_voltage,
                           double reset_read_voltage) {
  if (trace.rows.size() < 4)
    throw insufficient_data_error("compute_metrics: trace has " +
                                  std::to_string(trace.rows.size()) +
                                  " rows, need at least 4");

  // Metrics are taken over the last full cycle when the metadata knows the
  // period; a bare trace counts as a single cycle.
  SweepTrace last = trace;
  if (trace.waveform.period > 0 && trace.waveform.cycles > 1) {
    auto cycles = split_cycles(trace);
    last = cycles.back();
  }
  const std::vector<TraceRow> rows = sorted_rows(last);

  RunMetrics m;
  m.read_voltage = read_voltage;
  m.reset_read_voltage = reset_read_voltage;
  m.loop_area = shoelace_area(rows);

  const std::size_t peak = index_of_peak(rows, /*maximum=*/true);
  const std::size_t trough = index_of_peak(rows, /*maximum=*/false);
  m.set_branch_I_at_peak = rows[peak].I;

  double i_scale = 0.0;
  for (const TraceRow& r : rows) i_scale = std::max(i_scale, std::abs(r.I));
  if (i_scale < kDegenerateCurrent) {
    m.degenerate = true;
    return m;
  }

  // Ascending (pre-set) branch: start .. peak. Descending (post-set) branch:
  // peak .. end of the positive excursion.
  const std::size_t off_idx = nearest_sample(rows, 0, peak, read_voltage);
  std::size_t pos_end = peak;
  while (pos_end + 1 < rows.size() && rows[pos_end + 1].V_device > 0) ++pos_end;
  const std::size_t on_idx = nearest_sample(rows, peak, pos_end, read_voltage);

  if (off_idx < rows.size() && on_idx < rows.size() &&
      std::abs(rows[off_idx].I) > kDegenerateCurrent &&
      std::abs(rows[on_idx].I) > kDegenerateCurrent) {
    m.R_off = rows[off_idx].V_device / rows[off_idx].I;
    m.R_on = rows[on_idx].V_device / rows[on_idx].I;
    m.onoff_ratio = m.R_off / m.R_on;
  } else {
    m.degenerate = true;
  }

  // Reset branch: the leg descending from the positive excursion's end toward
  // the negative peak.
  if (trough > peak) {
    const std::size_t reset_idx =
        nearest_sample(rows, pos_end, trough, reset_read_voltage);
    if (reset_idx < rows.size()) m.reset_branch_I = rows[reset_idx].I;
  }
  return m;
}

VariabilityReport variability_report(std::span<const SweepTrace> traces,
                                     double read_voltage,
                                     double reset_read_voltage) {
  if (traces.size() < 2)
    throw insufficient_data_error("variability_report: need >= 2 traces");

  VariabilityReport report;
  std::vector<double> set_I, reset_I;
  std::vector<double> set_V, reset_V;
  double v_tol = 0.0;
  for (const SweepTrace& t : traces) {
    RunMetrics m = compute_metrics(t, read_voltage, reset_read_voltage);
    const std::vector<TraceRow> rows = sorted_rows(t);
    const std::size_t peak = index_of_peak(rows, true);
    set_I.push_back(m.set_branch_I_at_peak);
    set_V.push_back(rows[peak].V_device);
    reset_I.push_back(m.reset_branch_I);
    v_tol = std::max(v_tol, max_voltage_step(rows));
    report.per_trace.push_back(m);
  }

  // All traces must sample the compared points at the same voltage to within
  // one step's voltage increment.
  for (double v : set_V)
    if (std::abs(v - set_V.front()) > v_tol)
      throw alignment_error(
          "variability_report: set-branch voltages differ by more than one "
          "sample step");

  auto rsd = [](const std::vector<double>& xs) {
    const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
    if (mean == 0.0) return 0.0;
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / (xs.size() - 1)) / std::abs(mean);
  };
  report.rsd_set = rsd(set_I);
  report.rsd_reset = rsd(reset_I);
  return report;
}

}  // namespace dbmd
