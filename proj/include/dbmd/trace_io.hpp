#pragma once

#include <string>

#include "dbmd/sim_engine.hpp"

namespace dbmd {

/// Writes the trace as UTF-8 CSV with header exactly
/// `t,V_device,I,V_SC,V_SE,V_TB,q,d_bar`; floats carry 17 significant digits
/// so a reread is bit-exact. Throws io_error with the path on failure.
void write_trace_csv(const SweepTrace& trace, const std::string& path);

/// Companion ion-trajectory file, header `t,x_0,...,x_{N-1},d_bar,q`, one row
/// per trace row. Requires ion recording to have been enabled.
void write_ion_csv(const SweepTrace& trace, const std::string& path);

/// Serializes trace rows and run metadata as a single JSON document with the
/// CSV field names.
std::string trace_to_json(const SweepTrace& trace);
void write_trace_json(const SweepTrace& trace, const std::string& path);

/// Reads a trace CSV written by write_trace_csv (metadata fields are not in
/// the file and stay default). Throws io_error on malformed input.
SweepTrace read_trace_csv(const std::string& path);

std::string format_double(double v);  // 17 significant digits, C locale

}  // namespace dbmd
