#pragma once

// Artifact files. Every double is written with 17 significant digits so a
// stored trace reads back bit for bit.

#include "blowup/grid.hpp"
#include "blowup/integrate.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>

namespace blowup::lab {

inline constexpr const char* kTraceHeader = "t,M,ut_R,min_ur,min_J2,min_J3,dt";
inline constexpr const char* kLemma1Header = "t,min_u,min_ut";
inline constexpr const char* kSnapshotsHeader = "index,t,r,u";

std::string format_double(double v);

/// JSON text with stable key order, two-space indent and %.17g numbers.
std::string dump_json(const nlohmann::ordered_json& j);
void write_text(const std::filesystem::path& path, const std::string& text);

void write_trace_csv(std::ostream& out, const Trace& trace);
void write_lemma1_csv(std::ostream& out, const Trace& trace);
void write_snapshots_csv(std::ostream& out, const Trace& trace);

/// Writes trace.csv, lemma1.csv and snapshots.csv into `dir`.
void write_trace_files(const std::filesystem::path& dir, const Trace& trace);

/// Inverse of write_trace_files. Stop reason and monotone flag are recovered
/// from the samples; `u_stop` and `t_max` decide the former.
Trace read_trace_files(const std::filesystem::path& dir, const RadialGrid& grid, double u_stop,
                       double t_max, double epsilon);

} // namespace blowup::lab
