#include "dbmd/sim_engine.hpp"

#include <cmath>
#include <future>
#include <stdexcept>
#include <string>
#include <thread>

#include "dbmd/errors.hpp"

namespace dbmd {

double waveform_value(const WaveformSpec& spec, double t) {
  if (t < 0) throw config_error("waveform_value: t < 0");
  const double tc = std::fmod(t, spec.period);

  switch (spec.kind) {
    case WaveformKind::sinusoid:
      return spec.amplitude * std::sin(2.0 * pi * tc / spec.period);
    case WaveformKind::sawtooth_set_reset: {
      // Four linear legs 0 -> Vset -> 0 -> Vreset -> 0, each lasting a share
      // of the period proportional to its voltage span.
      const double up = std::abs(spec.V_set_peak);
      const double down = std::abs(spec.V_reset_peak);
      const double span = 2.0 * (up + down);
      const double t1 = spec.period * up / span;         // end of 0 -> Vset
      const double t2 = spec.period * 2.0 * up / span;   // end of Vset -> 0
      const double t3 = t2 + spec.period * down / span;  // end of 0 -> Vreset
      if (tc <= t1) return spec.V_set_peak * tc / t1;
      if (tc <= t2) return spec.V_set_peak * (t2 - tc) / (t2 - t1);
      if (tc <= t3) return spec.V_reset_peak * (tc - t2) / (t3 - t2);
      return spec.V_reset_peak * (spec.period - tc) / (spec.period - t3);
    }
  }
  throw config_error("waveform_value: unknown waveform kind");
}

namespace {

const Config& validated(const Config& cfg) {
  cfg.validate();
  return cfg;
}

}  // namespace

Simulation::Simulation(const Config& cfg)
    : cfg_(validated(cfg)),
      rng_(cfg.stochastic.seed),
      ions_(init_random(cfg.device, cfg.sim.n_ions, rng_)),
      grid_(cfg.sim.n_grid, cfg.device.l_SE, cfg.device.eps_r) {
  trace_.seed = cfg_.stochastic.seed;
  trace_.delta = cfg_.stochastic.perturbation_enabled ? cfg_.stochastic.delta : 0.0;
  trace_.params_hash = params_hash(cfg_);
  trace_.waveform = cfg_.sim.waveform;
  trace_.dt = cfg_.sim.dt;

  const int n = cfg_.sim.n_ions;
  scratch_positions_.resize(2 * n);
  scratch_charges_.resize(2 * n);
  // Mobile/fixed pairs interleaved: a pair at the same position cancels
  // exactly during the deposit, so the initial state deposits rho == 0.
  for (int i = 0; i < n; ++i) {
    scratch_charges_[2 * i] = ions_.sheet_charge_mobile;
    scratch_charges_[2 * i + 1] = ions_.sheet_charge_fixed;
  }
}

void Simulation::append_row(double t, const OperatingPoint& op) {
  TraceRow row;
  row.t = t;
  row.V_device = op.V_device;
  row.I = op.I;
  row.V_SC = op.V_SC;
  row.V_SE = op.V_SE;
  row.V_TB = op.V_TB;
  row.d_bar = ions_.d_bar();
  row.q = internal_state(ions_);
  trace_.rows.push_back(row);
  if (record_ions_) trace_.ion_positions.push_back(ions_.x_mobile);
}

void Simulation::step(double t, double dt) {
  try {
    const double V_device = waveform_value(cfg_.sim.waveform, t);
    const double q = internal_state(ions_);
    const OperatingPoint op = solve_operating_point(
        V_device, q, cfg_.device, cfg_.sim.xi_tol, cfg_.sim.max_inner_iters);
    append_row(t, op);

    // Boundary potentials from the solved drops.
    const double phi_left = V_device - op.V_SC;
    const double phi_right = op.V_TB;

    const int n = cfg_.sim.n_ions;
    for (int i = 0; i < n; ++i) {
      scratch_positions_[2 * i] = ions_.x_mobile[i];
      scratch_positions_[2 * i + 1] = ions_.x_fixed[i];
    }
    grid_.deposit(scratch_positions_, scratch_charges_);
    grid_.solve_poisson(phi_left, phi_right);
    if (grid_dump_) grid_dump_(t, grid_);

    push(ions_, grid_, dt, cfg_.device);
    perturb(ions_, cfg_.stochastic, rng_);
  } catch (const convergence_error& e) {
    throw convergence_error(
        "step " + std::to_string(step_index_) + " (t = " + std::to_string(t) +
        " s): " + e.what(), e.best_residual);
  }
  ++step_index_;
}

SweepTrace Simulation::run() {
  const double dt = cfg_.sim.dt;
  // Slack absorbs the roundoff in t_max/dt for exact-ratio configs.
  const long n_steps = static_cast<long>(std::floor(cfg_.sim.t_max / dt + 1e-9));
  trace_.rows.reserve(n_steps + 1);
  for (long k = 0; k < n_steps; ++k) step(k * dt, dt);

  // Closing sample at t_max: operating point only, no further ion update.
  const double t_end = n_steps * dt;
  const OperatingPoint op = solve_operating_point(
      waveform_value(cfg_.sim.waveform, t_end), internal_state(ions_),
      cfg_.device, cfg_.sim.xi_tol, cfg_.sim.max_inner_iters);
  append_row(t_end, op);
  return trace_;
}

SweepTrace run_single(const Config& cfg) {
  Simulation sim(cfg);
  return sim.run();
}

SweepTrace run_c2c(Config cfg, int cycles) {
  cfg.sim.waveform.cycles = cycles;
  cfg.sim.t_max = cycles * cfg.sim.waveform.period;
  Simulation sim(cfg);
  return sim.run();
}

namespace {

/// Runs `jobs` config variants on up to `threads` threads; output order
/// follows input order regardless of scheduling.
std::vector<SweepTrace> run_batch(const std::vector<Config>& jobs, int threads) {
  if (threads <= 0)
    threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads <= 1 || jobs.size() <= 1) {
    std::vector<SweepTrace> out;
    out.reserve(jobs.size());
    for (const auto& job : jobs) out.push_back(run_single(job));
    return out;
  }
  std::vector<std::future<SweepTrace>> futures;
  futures.reserve(jobs.size());
  for (const auto& job : jobs)
    futures.push_back(std::async(std::launch::async, run_single, job));
  std::vector<SweepTrace> out;
  out.reserve(jobs.size());
  for (auto& f : futures) out.push_back(f.get());
  return out;
}

}  // namespace

std::vector<SweepTrace> run_d2d(const Config& cfg,
                                const std::vector<std::uint64_t>& seeds,
                                int threads) {
  std::vector<Config> jobs;
  jobs.reserve(seeds.size());
  for (std::uint64_t seed : seeds) {
    Config job = cfg;
    job.stochastic.seed = seed;
    job.sim.waveform.cycles = 1;
    job.sim.t_max = job.sim.waveform.period;
    jobs.push_back(job);
  }
  return run_batch(jobs, threads);
}

std::vector<SweepTrace> run_amplitude_study(const Config& cfg,
                                            const std::vector<double>& amplitudes,
                                            int threads) {
  std::vector<Config> jobs;
  jobs.reserve(amplitudes.size());
  for (double amplitude : amplitudes) {
    Config job = cfg;
    job.sim.waveform.kind = WaveformKind::sinusoid;
    job.sim.waveform.amplitude = amplitude;
    job.sim.t_max = job.sim.waveform.cycles * job.sim.waveform.period;
    jobs.push_back(job);
  }
  return run_batch(jobs, threads);
}

}  // namespace dbmd
