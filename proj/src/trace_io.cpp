#include "dbmd/trace_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "dbmd/errors.hpp"

namespace dbmd {

namespace {

constexpr const char* kHeader = "t,V_device,I,V_SC,V_SE,V_TB,q,d_bar";

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open for writing: " + path);
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_trace_csv(const SweepTrace& trace, const std::string& path) {
  std::ofstream out = open_out(path);
  out << kHeader << "\n";
  for (const TraceRow& r : trace.rows) {
    out << format_double(r.t) << ',' << format_double(r.V_device) << ','
        << format_double(r.I) << ',' << format_double(r.V_SC) << ','
        << format_double(r.V_SE) << ',' << format_double(r.V_TB) << ','
        << format_double(r.q) << ',' << format_double(r.d_bar) << '\n';
  }
  if (!out) throw io_error("write failure: " + path);
}

void write_ion_csv(const SweepTrace& trace, const std::string& path) {
  if (trace.ion_positions.size() != trace.rows.size())
    throw io_error("ion trajectory not recorded for this trace: " + path);
  std::ofstream out = open_out(path);
  const std::size_t n = trace.ion_positions.empty() ? 0 : trace.ion_positions[0].size();
  out << "t";
  for (std::size_t i = 0; i < n; ++i) out << ",x_" << i;
  out << ",d_bar,q\n";
  for (std::size_t k = 0; k < trace.rows.size(); ++k) {
    out << format_double(trace.rows[k].t);
    for (double x : trace.ion_positions[k]) out << ',' << format_double(x);
    out << ',' << format_double(trace.rows[k].d_bar) << ','
        << format_double(trace.rows[k].q) << '\n';
  }
  if (!out) throw io_error("write failure: " + path);
}

std::string trace_to_json(const SweepTrace& trace) {
  nlohmann::json doc;
  doc["seed"] = trace.seed;
  doc["delta"] = trace.delta;
  doc["params_hash"] = trace.params_hash;
  doc["waveform"] = {
      {"kind", to_string(trace.waveform.kind)},
      {"V_set_peak", trace.waveform.V_set_peak},
      {"V_reset_peak", trace.waveform.V_reset_peak},
      {"amplitude", trace.waveform.amplitude},
      {"period", trace.waveform.period},
      {"cycles", trace.waveform.cycles},
  };
  doc["dt"] = trace.dt;
  nlohmann::json rows = nlohmann::json::array();
  for (const TraceRow& r : trace.rows) {
    rows.push_back({{"t", r.t},
                    {"V_device", r.V_device},
                    {"I", r.I},
                    {"V_SC", r.V_SC},
                    {"V_SE", r.V_SE},
                    {"V_TB", r.V_TB},
                    {"q", r.q},
                    {"d_bar", r.d_bar}});
  }
  doc["rows"] = std::move(rows);
  if (!trace.ion_positions.empty()) doc["ion_positions"] = trace.ion_positions;
  return doc.dump(2) + "\n";
}

void write_trace_json(const SweepTrace& trace, const std::string& path) {
  std::ofstream out = open_out(path);
  out << trace_to_json(trace);
  if (!out) throw io_error("write failure: " + path);
}

SweepTrace read_trace_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open for reading: " + path);

  std::string line;
  if (!std::getline(in, line)) throw io_error("empty trace file: " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHeader)
    throw io_error("unexpected trace header in " + path + ": \"" + line + "\"");

  SweepTrace trace;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    double v[8];
    const char* p = line.c_str();
    for (int i = 0; i < 8; ++i) {
      char* end = nullptr;
      v[i] = std::strtod(p, &end);
      if (end == p)
        throw io_error("malformed trace row at " + path + ":" +
                       std::to_string(line_no));
      p = end;
      if (i < 7) {
        if (*p != ',')
          throw io_error("expected ',' in trace row at " + path + ":" +
                         std::to_string(line_no));
        ++p;
      }
    }
    trace.rows.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]});
  }
  return trace;
}

}  // namespace dbmd
