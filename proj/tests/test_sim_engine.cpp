#include <doctest.h>

#include <cmath>
#include <vector>

#include "dbmd/errors.hpp"
#include "dbmd/ion_kinetics.hpp"
#include "dbmd/metrics.hpp"
#include "dbmd/params.hpp"
#include "dbmd/rng.hpp"
#include "dbmd/sim_engine.hpp"

using namespace dbmd;

namespace {

bool rows_identical(const SweepTrace& a, const SweepTrace& b) {
  if (a.rows.size() != b.rows.size()) return false;
  for (std::size_t k = 0; k < a.rows.size(); ++k) {
    const TraceRow &x = a.rows[k], &y = b.rows[k];
    if (x.t != y.t || x.V_device != y.V_device || x.I != y.I ||
        x.V_SC != y.V_SC || x.V_SE != y.V_SE || x.V_TB != y.V_TB ||
        x.q != y.q || x.d_bar != y.d_bar)
      return false;
  }
  return a.ion_positions == b.ion_positions;
}

}  // namespace

TEST_CASE("waveform values") {
  WaveformSpec saw;  // defaults: 3 V / -1.5 V over 9 s

  CHECK(waveform_value(saw, 0.0) == 0.0);
  CHECK(waveform_value(saw, 3.0) == 3.0);   // end of the set ramp (period/3)
  CHECK(waveform_value(saw, 1.5) == 1.5);
  CHECK(waveform_value(saw, 6.0) == 0.0);
  CHECK(waveform_value(saw, 4.5) == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(waveform_value(saw, 7.5) == -1.5);  // reset peak
  CHECK(waveform_value(saw, 6.75) == doctest::Approx(-0.75).epsilon(1e-13));
  CHECK(waveform_value(saw, 9.0) == 0.0);   // periodic wrap
  CHECK(waveform_value(saw, 12.0) == 3.0);  // second cycle

  WaveformSpec sine;
  sine.kind = WaveformKind::sinusoid;
  sine.amplitude = 5.0;
  sine.period = 9.0;
  CHECK(waveform_value(sine, 0.0) == 0.0);
  CHECK(waveform_value(sine, 9.0 / 4.0) == 5.0);
  CHECK(waveform_value(sine, 3.0 * 9.0 / 4.0) == -5.0);

  CHECK_THROWS_AS(waveform_value(sine, -1.0), config_error);
  CHECK_THROWS_AS(waveform_kind_from_string("triangle"), config_error);
}

TEST_CASE("idle run holds every state variable constant") {
  Config cfg = load_config("{}");
  cfg.sim.waveform.kind = WaveformKind::sinusoid;
  cfg.sim.waveform.amplitude = 0.0;  // V == 0 throughout
  cfg.sim.t_max = 0.5;
  cfg.stochastic.delta = 0.0;
  cfg.stochastic.seed = 9;

  Simulation sim(cfg);
  sim.set_record_ions(true);
  const SweepTrace trace = sim.run();
  REQUIRE(trace.rows.size() == 51);
  for (const TraceRow& r : trace.rows) {
    CHECK(r.V_device == 0.0);
    CHECK(r.I == 0.0);
    CHECK(r.q == trace.rows.front().q);
    CHECK(r.d_bar == trace.rows.front().d_bar);
  }
  for (const auto& xs : trace.ion_positions)
    CHECK(xs == trace.ion_positions.front());
}

TEST_CASE("step reports the operating point of the pre-push state") {
  Config cfg = load_config("{}");
  cfg.sim.waveform.kind = WaveformKind::sinusoid;
  cfg.sim.waveform.amplitude = 2.5;
  cfg.stochastic.delta = 0.0;
  cfg.stochastic.seed = 33;

  Simulation sim(cfg);
  // Twin initialization consumes the same draws, giving the identical q0.
  Rng twin(33);
  const IonEnsemble ions0 = init_random(cfg.device, cfg.sim.n_ions, twin);
  const double q0 = internal_state(ions0);

  const double t = 9.0 / 4.0;  // V = amplitude at the sine crest
  sim.step(t, cfg.sim.dt);
  REQUIRE(sim.trace().rows.size() == 1);
  const TraceRow& row = sim.trace().rows.front();
  const OperatingPoint expect =
      solve_operating_point(2.5, q0, cfg.device, cfg.sim.xi_tol,
                            cfg.sim.max_inner_iters);
  CHECK(row.I == expect.I);
  CHECK(row.V_TB == expect.V_TB);
  CHECK(row.q == q0);
  // The push afterwards moved the ions, so the post-step state differs.
  CHECK(internal_state(sim.ions()) != q0);
}

TEST_CASE("identical seeds and configs give bit-identical traces") {
  Config cfg = load_config("{}");
  cfg.stochastic.delta = 0.05;
  cfg.stochastic.seed = 2718;
  cfg.sim.t_max = 2.0;

  Simulation a(cfg), b(cfg);
  a.set_record_ions(true);
  b.set_record_ions(true);
  const SweepTrace ta = a.run();
  const SweepTrace tb = b.run();
  CHECK(rows_identical(ta, tb));
}

TEST_CASE("row count is floor(t_max/dt)+1 with strictly increasing t") {
  Config cfg = load_config("{}");
  const SweepTrace trace = run_single(cfg);
  CHECK(trace.rows.size() == 901);
  for (std::size_t k = 1; k < trace.rows.size(); ++k)
    CHECK(trace.rows[k].t > trace.rows[k - 1].t);

  const SweepTrace c2 = run_c2c(cfg, 2);
  CHECK(c2.rows.size() == 1801);
}

TEST_CASE("default cycle is a pinched hysteresis loop with set and reset") {
  Config cfg = load_config("{}");
  cfg.stochastic.delta = 0.0;
  cfg.stochastic.seed = 42;
  const SweepTrace trace = run_single(cfg);

  CHECK(trace.rows.front().I == 0.0);  // V(0) = 0 -> exact zero point

  // d_bar decreases on the ascending set leg (t in [0, 3] s), one-sample
  // tolerance.
  int violations = 0;
  std::size_t leg1_end = 0;
  for (std::size_t k = 1; k < trace.rows.size(); ++k) {
    if (trace.rows[k].t > 3.0 + 1e-9) break;
    leg1_end = k;
    if (trace.rows[k].d_bar > trace.rows[k - 1].d_bar + 1e-13) ++violations;
  }
  CHECK(violations <= 1);
  CHECK(trace.rows[leg1_end].d_bar < trace.rows.front().d_bar);

  // d_bar recovers (non-decreasing) while V < 0, one-sample tolerance.
  violations = 0;
  double first_neg = 0.0, last_neg = 0.0;
  bool have_first = false;
  for (std::size_t k = 1; k < trace.rows.size(); ++k) {
    if (trace.rows[k].V_device >= 0.0) continue;
    if (!have_first) {
      first_neg = trace.rows[k].d_bar;
      have_first = true;
    }
    if (trace.rows[k].d_bar < trace.rows[k - 1].d_bar - 1e-13) ++violations;
    last_neg = trace.rows[k].d_bar;
  }
  REQUIRE(have_first);
  CHECK(violations <= 1);
  CHECK(last_neg > first_neg);

  const RunMetrics m = compute_metrics(trace);
  CHECK(m.loop_area > 0.0);
  CHECK(!m.degenerate);
  CHECK(m.onoff_ratio > 1.0);
}

TEST_CASE("multi-cycle stochastic run stays near the deterministic twin") {
  Config cfg = load_config("{}");
  cfg.stochastic.seed = 7;
  cfg.stochastic.delta = 0.05;
  Config det = cfg;
  det.stochastic.delta = 0.0;

  const SweepTrace s = run_c2c(cfg, 2);
  const SweepTrace d = run_c2c(det, 2);
  REQUIRE(s.rows.size() == d.rows.size());
  const double slack = 2.0 * 0.5 * cfg.stochastic.delta * cfg.device.l_SE;
  for (std::size_t k = 0; k < s.rows.size(); ++k)
    CHECK(std::abs(s.rows[k].d_bar - d.rows[k].d_bar) <=
          0.05 * d.rows[k].d_bar + slack);
}

TEST_CASE("batch runners are deterministic and thread-count independent") {
  Config cfg = load_config("{}");
  cfg.sim.t_max = 1.0;
  cfg.sim.waveform.period = 1.0;

  const std::vector<std::uint64_t> seeds = {5, 6, 7};
  const auto seq = run_d2d(cfg, seeds, 1);
  const auto par = run_d2d(cfg, seeds, 3);
  REQUIRE(seq.size() == 3);
  REQUIRE(par.size() == 3);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    CHECK(seq[i].seed == seeds[i]);
    CHECK(rows_identical(seq[i], par[i]));
  }

  const std::vector<double> amps = {1.0, 2.0};
  const auto amp_seq = run_amplitude_study(cfg, amps, 1);
  const auto amp_par = run_amplitude_study(cfg, amps, 2);
  REQUIRE(amp_seq.size() == 2);
  for (std::size_t i = 0; i < amp_seq.size(); ++i) {
    CHECK(amp_seq[i].waveform.amplitude == amps[i]);
    CHECK(rows_identical(amp_seq[i], amp_par[i]));
  }
}

TEST_CASE("loop area grows with the sinusoid amplitude") {
  Config cfg = load_config("{}");
  cfg.stochastic.delta = 0.0;
  cfg.stochastic.seed = 1234;
  const auto traces = run_amplitude_study(cfg, {2.0, 2.5, 3.0}, 1);
  const double a2 = compute_metrics(traces[0]).loop_area;
  const double a25 = compute_metrics(traces[1]).loop_area;
  const double a3 = compute_metrics(traces[2]).loop_area;
  CHECK(a2 <= a25);
  CHECK(a25 <= a3);
}
