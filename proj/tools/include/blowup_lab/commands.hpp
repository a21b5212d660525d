#pragma once

#include "blowup/integrate.hpp"
#include "blowup_lab/config.hpp"
#include "blowup_lab/report.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace blowup::lab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitGateFailed = 1;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitConfig = 2;

Trace simulate(const Experiment& exp);

/// trace.csv, lemma1.csv, snapshots.csv, report.json and plot.gp.
void write_artifacts(const std::filesystem::path& dir, const Experiment& exp, const Trace& trace,
                     const ExperimentReport& report);
std::string plot_script(const Experiment& exp, const ExperimentReport& report);

struct Streams {
    std::ostream& out;
    std::ostream& err;
};

int cmd_run(const std::filesystem::path& config_path, const std::optional<std::filesystem::path>& out_dir,
            Streams io);

/// Re-derives report.json from the stored trace files in `dir`.
int cmd_analyze(const std::filesystem::path& config_path, const std::filesystem::path& dir, Streams io);

struct SweepRow {
    double value = 0.0;
    std::optional<double> T_hat;
    std::optional<double> slope;
    double window_lo = 0.0;
    double window_hi = 0.0;
    std::string verdict;
    std::string error;
    bool all_pass = false;
};

/// Axis in {p, q, lambda, N}. Runs are independent; BLOWUP_LAB_THREADS caps concurrency.
std::vector<SweepRow> sweep(const ExperimentConfig& base, const std::string& axis,
                            const std::vector<double>& values, const std::filesystem::path& out_dir);
int cmd_sweep(const std::filesystem::path& config_path, const std::string& axis,
              const std::string& values, const std::filesystem::path& out_dir, Streams io);

int cmd_verify(const std::string& suite, Streams io);

int cmd_oracle(const std::filesystem::path& config_path, const std::string& window,
               const std::optional<std::filesystem::path>& trace_dir,
               const std::optional<std::filesystem::path>& out_dir, Streams io);

/// "a,b,c" -> numbers; throws ConfigError on malformed or empty input.
std::vector<double> parse_number_list(const std::string& text);

} // namespace blowup::lab
