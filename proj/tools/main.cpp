#include "blowup_lab/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    using namespace blowup::lab;
    CLI::App app{"Radial blow-up experiments: u_t = Δu + λe^{pu}, du/dη = e^{qu}"};
    app.require_subcommand(1);

    std::string config, out, axis, values, suite, window, trace_dir;

    auto* run = app.add_subcommand("run", "Simulate one configuration and write its artifacts");
    run->add_option("--config", config, "Experiment config (JSON)")->required();
    run->add_option("--out", out, "Output directory (default: output.dir)");

    auto* sweep = app.add_subcommand("sweep", "Run one configuration per value of a parameter");
    sweep->add_option("--config", config, "Base experiment config")->required();
    sweep->add_option("--axis", axis, "p, q, lambda or N")->required();
    sweep->add_option("--values", values, "Comma-separated values")->required();
    sweep->add_option("--out", out, "Output directory")->required();

    auto* verify = app.add_subcommand("verify", "Run a property suite");
    verify->add_option("--suite", suite, "kernel, operators, conditions, supersolution, estimator or all")
        ->required();

    auto* oracle = app.add_subcommand("oracle", "Integral-identity residual over a time window");
    oracle->add_option("--config", config, "Experiment config")->required();
    oracle->add_option("--window", window, "t0,t1")->required();
    oracle->add_option("--trace-dir", trace_dir, "Use the stored trace in this directory");
    oracle->add_option("--out", out, "Write oracle.json here");

    auto* analyze = app.add_subcommand("analyze", "Recompute report.json from stored trace files");
    analyze->add_option("--config", config, "Experiment config")->required();
    analyze->add_option("--dir", out, "Directory holding trace.csv, lemma1.csv, snapshots.csv")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    const Streams io{std::cout, std::cerr};
    auto optional_path = [](const std::string& s) {
        return s.empty() ? std::nullopt : std::optional<std::filesystem::path>(s);
    };
    if (*run) return cmd_run(config, optional_path(out), io);
    if (*sweep) return cmd_sweep(config, axis, values, out, io);
    if (*verify) return cmd_verify(suite, io);
    if (*oracle) return cmd_oracle(config, window, optional_path(trace_dir), optional_path(out), io);
    if (*analyze) return cmd_analyze(config, out, io);
    return kExitConfig;
}
