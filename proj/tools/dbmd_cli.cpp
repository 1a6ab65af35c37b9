// Command-line front end: runs sweeps, writes trace files, reports metrics.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dbmd/errors.hpp"
#include "dbmd/metrics.hpp"
#include "dbmd/params.hpp"
#include "dbmd/sim_engine.hpp"
#include "dbmd/trace_io.hpp"

namespace fs = std::filesystem;

namespace {

struct CliOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<double> delta;
  std::optional<int> cycles;
  std::string out_dir = ".";
  bool ion_trace = false;
  bool grid_dump = false;
  bool json = false;
  int threads = 0;
  int devices = 4;
  std::vector<double> amplitudes = {2.0, 2.5, 3.0, 5.0};
  double read_voltage = 0.5;
  double reset_read_voltage = -1.0;
  std::optional<double> analyze_period;
};

dbmd::Config make_config(const CliOptions& opt) {
  dbmd::Config cfg = opt.config_path.empty()
                         ? dbmd::load_config("{}")
                         : dbmd::load_config_file(opt.config_path);
  if (opt.seed) cfg.stochastic.seed = *opt.seed;
  if (opt.delta) cfg.stochastic.delta = *opt.delta;
  if (opt.cycles) {
    cfg.sim.waveform.cycles = *opt.cycles;
    cfg.sim.t_max = cfg.sim.waveform.cycles * cfg.sim.waveform.period;
  }
  cfg.validate();
  return cfg;
}

std::string out_path(const CliOptions& opt, const std::string& stem,
                     const char* ext) {
  fs::create_directories(opt.out_dir);
  return (fs::path(opt.out_dir) / (stem + ext)).string();
}

void write_outputs(const dbmd::SweepTrace& trace, const CliOptions& opt,
                   const std::string& stem) {
  if (opt.json) {
    const std::string path = out_path(opt, stem, ".json");
    dbmd::write_trace_json(trace, path);
    std::cout << "wrote " << path << "\n";
  } else {
    const std::string path = out_path(opt, stem, ".csv");
    dbmd::write_trace_csv(trace, path);
    std::cout << "wrote " << path << "\n";
  }
  if (opt.ion_trace) {
    const std::string path = out_path(opt, stem + "_ions", ".csv");
    dbmd::write_ion_csv(trace, path);
    std::cout << "wrote " << path << "\n";
  }
}

void print_metrics(const dbmd::RunMetrics& m, const std::string& label) {
  std::cout << label << ": loop_area = " << m.loop_area << " V*A";
  if (m.degenerate) {
    std::cout << " (degenerate: no usable current scale)\n";
    return;
  }
  std::cout << ", R_on = " << m.R_on << " Ohm, R_off = " << m.R_off
            << " Ohm, R_off/R_on = " << m.onoff_ratio
            << ", I(set peak) = " << m.set_branch_I_at_peak
            << " A, I(reset branch, " << m.reset_read_voltage
            << " V) = " << m.reset_branch_I << " A\n";
}

/// Opens the per-run grid dump CSV and returns the hook writing one row per
/// node per step.
dbmd::GridDumpHook make_grid_dump(const CliOptions& opt, const std::string& stem,
                                  std::shared_ptr<std::ofstream>& keepalive) {
  const std::string path = out_path(opt, stem + "_grid", ".csv");
  keepalive = std::make_shared<std::ofstream>(path, std::ios::binary);
  if (!*keepalive) throw dbmd::io_error("cannot open for writing: " + path);
  *keepalive << "t,x,rho,phi,E\n";
  std::shared_ptr<std::ofstream> out = keepalive;
  return [out](double t, const dbmd::FieldGrid& grid) {
    for (int j = 0; j < grid.n_nodes(); ++j) {
      *out << dbmd::format_double(t) << ',' << dbmd::format_double(grid.node_x(j))
           << ',' << dbmd::format_double(grid.rho()[j]) << ','
           << dbmd::format_double(grid.phi()[j]) << ','
           << dbmd::format_double(grid.e_node()[j]) << '\n';
    }
  };
}

dbmd::SweepTrace run_one(const dbmd::Config& cfg, const CliOptions& opt,
                         const std::string& stem) {
  dbmd::Simulation sim(cfg);
  sim.set_record_ions(opt.ion_trace);
  std::shared_ptr<std::ofstream> dump_file;
  if (opt.grid_dump) sim.set_grid_dump(make_grid_dump(opt, stem, dump_file));
  return sim.run();
}

int cmd_simulate(const CliOptions& opt) {
  const dbmd::Config cfg = make_config(opt);
  const dbmd::SweepTrace trace = run_one(cfg, opt, "trace");
  write_outputs(trace, opt, "trace");
  print_metrics(dbmd::compute_metrics(trace, opt.read_voltage,
                                      opt.reset_read_voltage),
                "cycle metrics");
  return 0;
}

int cmd_c2c(const CliOptions& opt) {
  dbmd::Config cfg = make_config(opt);
  if (!opt.cycles) {
    cfg.sim.waveform.cycles = 4;
    cfg.sim.t_max = cfg.sim.waveform.cycles * cfg.sim.waveform.period;
  }
  const dbmd::SweepTrace trace = run_one(cfg, opt, "c2c");
  write_outputs(trace, opt, "c2c");

  const auto cycles = dbmd::split_cycles(trace);
  for (std::size_t i = 0; i < cycles.size(); ++i)
    print_metrics(dbmd::compute_metrics(cycles[i], opt.read_voltage,
                                        opt.reset_read_voltage),
                  "cycle " + std::to_string(i));
  if (cycles.size() >= 2) {
    const auto report = dbmd::variability_report(cycles, opt.read_voltage,
                                                 opt.reset_read_voltage);
    std::cout << "RSD(I at set peak) = " << report.rsd_set
              << ", RSD(I at reset read) = " << report.rsd_reset << "\n";
  }
  return 0;
}

int cmd_d2d(const CliOptions& opt) {
  const dbmd::Config cfg = make_config(opt);
  std::vector<std::uint64_t> seeds;
  for (int i = 0; i < opt.devices; ++i)
    seeds.push_back(cfg.stochastic.seed + static_cast<std::uint64_t>(i));
  const auto traces = dbmd::run_d2d(cfg, seeds, opt.threads);
  for (std::size_t i = 0; i < traces.size(); ++i) {
    write_outputs(traces[i], opt, "d2d_" + std::to_string(i));
    print_metrics(dbmd::compute_metrics(traces[i], opt.read_voltage,
                                        opt.reset_read_voltage),
                  "device " + std::to_string(i) + " (seed " +
                      std::to_string(seeds[i]) + ")");
  }
  const auto report =
      dbmd::variability_report(traces, opt.read_voltage, opt.reset_read_voltage);
  std::cout << "RSD(I at set peak) = " << report.rsd_set
            << ", RSD(I at reset read) = " << report.rsd_reset << "\n";
  return 0;
}

int cmd_amplitude_study(const CliOptions& opt) {
  const dbmd::Config cfg = make_config(opt);
  const auto traces = dbmd::run_amplitude_study(cfg, opt.amplitudes, opt.threads);
  for (std::size_t i = 0; i < traces.size(); ++i) {
    std::string stem = "amp_" + std::to_string(i);
    write_outputs(traces[i], opt, stem);
    print_metrics(dbmd::compute_metrics(traces[i], opt.read_voltage,
                                        opt.reset_read_voltage),
                  "amplitude " + std::to_string(opt.amplitudes[i]) + " V");
  }
  return 0;
}

int cmd_analyze(const CliOptions& opt, const std::vector<std::string>& files) {
  std::vector<dbmd::SweepTrace> traces;
  for (const std::string& f : files) {
    dbmd::SweepTrace t = dbmd::read_trace_csv(f);
    if (opt.analyze_period) {
      t.waveform.period = *opt.analyze_period;
      t.waveform.cycles = std::max(
          1, static_cast<int>(std::floor((t.rows.empty() ? 0.0 : t.rows.back().t) /
                                         *opt.analyze_period + 1e-9)));
    }
    traces.push_back(std::move(t));
  }
  for (std::size_t i = 0; i < traces.size(); ++i)
    print_metrics(dbmd::compute_metrics(traces[i], opt.read_voltage,
                                        opt.reset_read_voltage),
                  files[i]);
  if (traces.size() >= 2) {
    const auto report =
        dbmd::variability_report(traces, opt.read_voltage, opt.reset_read_voltage);
    std::cout << "RSD(I at set peak) = " << report.rsd_set
              << ", RSD(I at reset read) = " << report.rsd_reset << "\n";
  }
  return 0;
}

int cmd_defaults(bool markdown) {
  if (markdown)
    std::cout << dbmd::default_config_table();
  else
    std::cout << dbmd::save_config(dbmd::Config{});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"1D stochastic simulator for double-barrier memristive devices"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand name

  CliOptions opt;
  app.add_option("--config", opt.config_path, "config JSON file");
  app.add_option("--seed", opt.seed, "PRNG seed override");
  app.add_option("--delta", opt.delta, "perturbation fraction override");
  app.add_option("--cycles", opt.cycles, "waveform cycle count override");
  app.add_option("--out", opt.out_dir, "output directory (default .)");
  app.add_flag("--ion-trace", opt.ion_trace, "also write <stem>_ions.csv");
  app.add_flag("--grid-dump", opt.grid_dump, "also write <stem>_grid.csv");
  app.add_flag("--json", opt.json, "write traces as JSON instead of CSV");
  app.add_option("--threads", opt.threads,
                 "worker threads for batch runs (0 = hardware)");
  app.add_option("--read-voltage", opt.read_voltage,
                 "R_on/R_off read voltage [V]");
  app.add_option("--reset-read-voltage", opt.reset_read_voltage,
                 "reset-branch read voltage [V]");

  auto* simulate = app.add_subcommand("simulate", "run one sweep");
  auto* c2c = app.add_subcommand("c2c", "multi-cycle run on one device");
  auto* d2d = app.add_subcommand("d2d", "independent devices, one cycle each");
  d2d->add_option("--devices", opt.devices, "device count (default 4)");
  auto* amp = app.add_subcommand("amplitude-study", "sinusoid amplitude sweep");
  amp->add_option("--amplitudes", opt.amplitudes,
                  "amplitude list [V] (default 2 2.5 3 5)");
  auto* analyze = app.add_subcommand("analyze", "metrics from trace CSVs");
  std::vector<std::string> analyze_files;
  analyze->add_option("files", analyze_files, "trace CSV files")->required();
  analyze->add_option("--period", opt.analyze_period,
                      "cycle period of the input traces [s]");
  auto* defaults = app.add_subcommand("defaults", "print the default config");
  bool markdown = false;
  defaults->add_flag("--markdown", markdown, "emit a Markdown key table");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) return cmd_simulate(opt);
    if (c2c->parsed()) return cmd_c2c(opt);
    if (d2d->parsed()) return cmd_d2d(opt);
    if (amp->parsed()) return cmd_amplitude_study(opt);
    if (analyze->parsed()) return cmd_analyze(opt, analyze_files);
    if (defaults->parsed()) return cmd_defaults(markdown);
  } catch (const dbmd::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const dbmd::convergence_error& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 3;
  } catch (const dbmd::io_error& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 4;
  } catch (const dbmd::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
