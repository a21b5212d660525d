#include "blowup_lab/commands.hpp"

#include "blowup/error.hpp"
#include "blowup/kernel.hpp"
#include "blowup_lab/io.hpp"
#include "blowup_lab/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

namespace blowup::lab {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

int exit_code_for(const Error& e) {
    switch (e.code()) {
    case ErrorCode::ConfigError:
    case ErrorCode::UnknownSuite: return kExitConfig;
    default: return kExitRuntime;
    }
}

std::string utc_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_meta(const fs::path& dir, const std::string& command, const fs::path& config_path,
                double wall_seconds) {
    ordered_json meta;
    meta["tool"] = "blowup_lab";
    meta["version"] = "0.1.0";
    meta["command"] = command;
    meta["config_path"] = config_path.string();
    meta["created_utc"] = utc_now();
    meta["wall_seconds"] = wall_seconds;
    write_text(dir / "meta.json", dump_json(meta));
}

std::string format_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

unsigned sweep_threads(std::size_t jobs) {
    unsigned cap = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("BLOWUP_LAB_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) cap = static_cast<unsigned>(v);
    }
    return static_cast<unsigned>(std::min<std::size_t>(cap, std::max<std::size_t>(jobs, 1)));
}

ExperimentConfig with_axis(ExperimentConfig c, const std::string& axis, double value) {
    if (axis == "p")
        c.spec.p = value;
    else if (axis == "q")
        c.spec.q = value;
    else if (axis == "lambda")
        c.spec.lambda = value;
    else if (axis == "N") {
        if (value != std::floor(value)) throw Error(ErrorCode::ConfigError, "N values must be integers");
        c.N = static_cast<int>(value);
    } else
        throw Error(ErrorCode::ConfigError, "sweep axis must be one of p, q, lambda, N");
    return c;
}

} // namespace

Trace simulate(const Experiment& exp) {
    return run(exp.spec, exp.grid, exp.config.control, exp.monitors);
}

std::string plot_script(const Experiment& exp, const ExperimentReport& rep) {
    std::ostringstream os;
    os << "# gnuplot script for the files in this directory\n"
       << "set datafile separator ','\n"
       << "set key top left\n"
       << "set grid\n";
    const double T_hat = rep.estimate ? rep.estimate->T_hat : rep.t_end;
    os << "T_hat = " << format_double(T_hat) << '\n';
    if (rep.rate)
        os << "slope = " << format_double(rep.rate->slope) << '\n'
           << "intercept = " << format_double(rep.rate->intercept) << '\n'
           << "fit_lo = " << format_double(rep.rate->fit_window.lo) << '\n'
           << "fit_hi = " << format_double(rep.rate->fit_window.hi) << '\n';
    const AmplitudeRange w = rate_window(exp.spec);
    os << "s_lo = " << format_double(w.lo) << "\ns_hi = " << format_double(w.hi) << '\n'
       << "set terminal pngcairo size 900,1200\n"
       << "set output 'plot.png'\n"
       << "set multiplot layout 3,1\n"
       << "set xlabel 't'\nset ylabel 'M(t) = u(R,t)'\n"
       << "plot 'trace.csv' every ::1 using 1:2 with lines title 'M(t)'\n"
       << "set xlabel '-log(T_hat - t)'\nset ylabel 'M'\n";
    if (rep.rate)
        os << "plot 'trace.csv' every ::1 using (-log(T_hat - $1)):2 with lines title 'M', \\\n"
           << "     slope*x + intercept title sprintf('fit slope %.3f', slope), \\\n"
           << "     s_lo*x + intercept dashtype 2 title 'lower bound slope', \\\n"
           << "     s_hi*x + intercept dashtype 3 title 'upper bound slope'\n";
    else
        os << "plot 'trace.csv' every ::1 using (-log(T_hat - $1)):2 with lines title 'M'\n";
    os << "set xlabel 'r'\nset ylabel 'u(r, t)'\n"
       << "plot 'snapshots.csv' every ::1 using 3:4:1 with lines lc variable notitle\n"
       << "unset multiplot\n";
    return os.str();
}

void write_artifacts(const fs::path& dir, const Experiment& exp, const Trace& trace,
                     const ExperimentReport& report) {
    write_trace_files(dir, trace);
    write_text(dir / "report.json", dump_json(report_to_json(exp, report)));
    write_text(dir / "plot.gp", plot_script(exp, report));
}

void print_summary(std::ostream& out, const ExperimentReport& rep) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "stop=%s steps=%zu t_end=%.10g M_end=%.6g\n",
                  std::string(to_string(rep.stop)).c_str(), rep.steps, rep.t_end, rep.M_end);
    out << buf;
    if (rep.estimate) {
        std::snprintf(buf, sizeof buf, "T_hat=%.10g spread=%.3g\n", rep.estimate->T_hat, rep.estimate->spread);
        out << buf;
    }
    if (rep.rate) {
        std::snprintf(buf, sizeof buf, "slope=%.6f window=[%.4g, %.4g] fit=[%.4g, %.4g] n=%zu\n",
                      rep.rate->slope, rep.rate->window.lo, rep.rate->window.hi,
                      rep.rate->fit_window.lo, rep.rate->fit_window.hi, rep.rate->samples_used);
        out << buf;
    }
    out << "rate: " << to_string(rep.rate_verdict) << "  lemma1: " << to_string(rep.monitors.lemma1.verdict)
        << "  J2: " << to_string(rep.monitors.J2.verdict) << "  J3: " << to_string(rep.monitors.J3.verdict)
        << "  theorem4: " << to_string(rep.theorem4.verdict) << '\n';
}

int cmd_run(const fs::path& config_path, const std::optional<fs::path>& out_dir, Streams io) {
    try {
        const auto start = std::chrono::steady_clock::now();
        const Experiment exp = prepare(load_config(config_path));
        const fs::path dir = out_dir.value_or(fs::path(exp.config.output_dir));
        const HypothesisReport hyp = check_hypotheses(exp.spec, exp.grid, exp.config.analysis.T_cmp,
                                                      exp.config.analysis.C_up);
        auto note = [&](const char* name, bool ok) {
            if (!ok) io.err << "hypothesis " << name << " fails; dependent gates are not applicable\n";
        };
        note("compat", hyp.compat.ok);
        note("subsolution", hyp.subsolution.ok);
        note("monotone", hyp.monotone_ok);
        note("cond11", hyp.cond11.ok);
        note("cond12", hyp.cond12.ok);
        note("cond14", hyp.cond14.ok);

        const Trace trace = simulate(exp);
        const ExperimentReport rep = analyze_experiment(exp, trace);
        fs::create_directories(dir);
        write_artifacts(dir, exp, trace, rep);
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        write_meta(dir, "run", config_path, wall);
        print_summary(io.out, rep);
        return rep.all_pass() ? kExitOk : kExitGateFailed;
    } catch (const Error& e) {
        io.err << "error: " << e.what() << '\n';
        return exit_code_for(e);
    } catch (const std::exception& e) {
        io.err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}

int cmd_analyze(const fs::path& config_path, const fs::path& dir, Streams io) {
    try {
        const Experiment exp = prepare(load_config(config_path));
        const Trace trace = read_trace_files(dir, exp.grid, exp.config.control.u_stop,
                                             exp.config.control.t_max, exp.monitors.epsilon);
        const ExperimentReport rep = analyze_experiment(exp, trace);
        io.out << dump_json(report_to_json(exp, rep));
        return rep.all_pass() ? kExitOk : kExitGateFailed;
    } catch (const Error& e) {
        io.err << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
}

std::vector<double> parse_number_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto first = item.find_first_not_of(" \t");
        if (first == std::string::npos) throw Error(ErrorCode::ConfigError, "empty entry in list '" + text + "'");
        char* end = nullptr;
        const double v = std::strtod(item.c_str() + first, &end);
        if (end == item.c_str() + first || item.find_first_not_of(" \t", end - item.c_str()) != std::string::npos)
            throw Error(ErrorCode::ConfigError, "not a number: '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw Error(ErrorCode::ConfigError, "empty value list");
    return out;
}

std::vector<SweepRow> sweep(const ExperimentConfig& base, const std::string& axis,
                            const std::vector<double>& values, const fs::path& out_dir) {
    if (values.empty()) throw Error(ErrorCode::ConfigError, "empty value list");
    with_axis(base, axis, values.front()); // axis name check before spawning work

    struct Job {
        std::optional<Experiment> exp;
        std::optional<Trace> trace;
        std::string error;
    };
    std::vector<Job> jobs(values.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < values.size(); k = next++) {
            try {
                jobs[k].exp = prepare(with_axis(base, axis, values[k]));
                jobs[k].trace = simulate(*jobs[k].exp);
            } catch (const std::exception& e) {
                jobs[k].error = e.what();
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < sweep_threads(values.size()); ++i) pool.emplace_back(worker);
    }

    // Refinement sweeps share the fit window of the coarsest grid.
    std::optional<AmplitudeRange> common;
    if (axis == "N") {
        std::optional<std::size_t> coarsest;
        for (std::size_t k = 0; k < jobs.size(); ++k)
            if (jobs[k].trace && (!coarsest || values[k] < values[*coarsest])) coarsest = k;
        if (coarsest) common = configured_fit_window(*jobs[*coarsest].exp, *jobs[*coarsest].trace);
    }

    std::vector<SweepRow> rows(values.size());
    for (std::size_t k = 0; k < jobs.size(); ++k) {
        SweepRow& row = rows[k];
        row.value = values[k];
        if (!jobs[k].error.empty()) {
            row.verdict = "error";
            row.error = jobs[k].error;
            continue;
        }
        const Experiment& exp = *jobs[k].exp;
        const AmplitudeRange w = rate_window(exp.spec);
        row.window_lo = w.lo;
        row.window_hi = w.hi;
        try {
            const ExperimentReport rep = analyze_experiment(exp, *jobs[k].trace, common);
            if (rep.estimate) row.T_hat = rep.estimate->T_hat;
            if (rep.rate) row.slope = rep.rate->slope;
            row.verdict = std::string(to_string(rep.rate_verdict));
            row.all_pass = rep.all_pass();
            const fs::path dir = out_dir / (axis + "_" + format_value(values[k]));
            fs::create_directories(dir);
            write_artifacts(dir, exp, *jobs[k].trace, rep);
        } catch (const std::exception& e) {
            row.verdict = "error";
            row.error = e.what();
        }
    }
    return rows;
}

int cmd_sweep(const fs::path& config_path, const std::string& axis, const std::string& values,
              const fs::path& out_dir, Streams io) {
    try {
        const auto start = std::chrono::steady_clock::now();
        const ExperimentConfig base = load_config(config_path);
        const std::vector<SweepRow> rows = sweep(base, axis, parse_number_list(values), out_dir);
        fs::create_directories(out_dir);
        std::ostringstream csv;
        csv << "value,T_hat,slope,window_lo,window_hi,verdict\n";
        bool ok = true;
        for (const SweepRow& r : rows) {
            csv << format_double(r.value) << ',' << (r.T_hat ? format_double(*r.T_hat) : "nan") << ','
                << (r.slope ? format_double(*r.slope) : "nan") << ',' << format_double(r.window_lo)
                << ',' << format_double(r.window_hi) << ',' << r.verdict << '\n';
            ok = ok && r.all_pass;
            if (!r.error.empty()) io.err << axis << "=" << format_value(r.value) << ": " << r.error << '\n';
        }
        write_text(out_dir / "summary.csv", csv.str());
        write_meta(out_dir, "sweep " + axis, config_path,
                   std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
        io.out << csv.str();
        return ok ? kExitOk : kExitGateFailed;
    } catch (const Error& e) {
        io.err << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
}

int cmd_verify(const std::string& suite, Streams io) {
    try {
        std::vector<std::string_view> suites;
        if (suite == "all")
            suites = suite_names();
        else
            suites.push_back(suite);
        bool ok = true;
        for (std::string_view s : suites) {
            const std::vector<CheckResult> checks = run_suite(s);
            print_checks(io.out, s, checks);
            for (const CheckResult& c : checks) ok = ok && c.pass;
        }
        return ok ? kExitOk : kExitGateFailed;
    } catch (const Error& e) {
        io.err << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
}

int cmd_oracle(const fs::path& config_path, const std::string& window,
               const std::optional<fs::path>& trace_dir, const std::optional<fs::path>& out_dir,
               Streams io) {
    try {
        const std::vector<double> w = parse_number_list(window);
        if (w.size() != 2 || !(w[0] > 0.0) || !(w[1] > w[0]))
            throw Error(ErrorCode::ConfigError, "--window needs t0,t1 with 0 < t0 < t1");
        ExperimentConfig config = load_config(config_path);
        Trace trace;
        Experiment exp = prepare(config);
        if (trace_dir) {
            trace = read_trace_files(*trace_dir, exp.grid, config.control.u_stop, config.control.t_max,
                                     exp.monitors.epsilon);
        } else {
            config.control.dense_window = TimeWindow{w[0], w[1]};
            config.control.t_max = std::min(config.control.t_max, w[1]);
            exp = prepare(config);
            trace = simulate(exp);
        }
        const auto& snaps = trace.snapshots;
        std::size_t z = snaps.size(), t = 0;
        for (std::size_t k = 0; k < snaps.size(); ++k) {
            if (z == snaps.size() && snaps[k].t >= w[0]) z = k;
            if (snaps[k].t <= w[1]) t = k;
        }
        if (z >= snaps.size() || t <= z)
            throw Error(ErrorCode::InsufficientSnapshots, "no snapshots inside the window");

        std::vector<double> xs;
        for (int i = 0; i <= 9; ++i) xs.push_back(0.1 * i * exp.spec.R);
        const IdentityResidual res = integral_identity_residual(trace, exp.spec, z, t, xs);
        const double threshold = 1e-2 * res.max_abs_u;
        const bool pass = res.max_residual < threshold;

        char buf[160];
        std::snprintf(buf, sizeof buf, "window z=%.10g t=%.10g\n", snaps[z].t, snaps[t].t);
        io.out << buf;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            std::snprintf(buf, sizeof buf, "r=%.3f residual=%.3e\n", xs[i], res.residuals[i]);
            io.out << buf;
        }
        std::snprintf(buf, sizeof buf, "%s max_residual=%.3e threshold=%.3e\n", pass ? "PASS" : "FAIL",
                      res.max_residual, threshold);
        io.out << buf;

        if (out_dir) {
            fs::create_directories(*out_dir);
            ordered_json j;
            j["z"] = snaps[z].t;
            j["t"] = snaps[t].t;
            j["radii"] = xs;
            j["residuals"] = res.residuals;
            j["max_residual"] = res.max_residual;
            j["max_abs_u"] = res.max_abs_u;
            j["pass"] = pass;
            write_text(*out_dir / "oracle.json", dump_json(j));
        }
        return pass ? kExitOk : kExitGateFailed;
    } catch (const Error& e) {
        io.err << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
}

} // namespace blowup::lab
