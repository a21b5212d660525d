#include "blowup_lab/config.hpp"

#include "blowup/error.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string_view>

namespace blowup::lab {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void config_error(const std::string& what) {
    throw Error(ErrorCode::ConfigError, what);
}

void require_object(const json& j, const std::string& where,
                    std::initializer_list<std::string_view> allowed) {
    if (!j.is_object()) config_error(where + " must be an object");
    for (const auto& [key, _] : j.items()) {
        bool known = false;
        for (std::string_view a : allowed) known = known || key == a;
        if (!known) config_error("unknown key '" + key + "' in " + where);
    }
}

double get_number(const json& j, const char* key, const std::string& where, double fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number()) config_error(where + "." + key + " must be a number");
    return v.get<double>();
}

int get_int(const json& j, const char* key, const std::string& where, int fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number_integer()) config_error(where + "." + key + " must be an integer");
    return v.get<int>();
}

bool get_bool(const json& j, const char* key, const std::string& where, bool fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_boolean()) config_error(where + "." + key + " must be true or false");
    return v.get<bool>();
}

std::pair<double, double> get_pair(const json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        config_error(where + " must be a two-element numeric array");
    return {v[0].get<double>(), v[1].get<double>()};
}

SpecConfig parse_spec(const json& j) {
    require_object(j, "spec", {"n", "R", "p", "q", "lambda", "u0"});
    for (const char* key : {"n", "R", "q", "lambda", "u0"})
        if (!j.contains(key)) config_error(std::string("spec.") + key + " is required");
    SpecConfig s;
    s.n = get_int(j, "n", "spec", s.n);
    s.R = get_number(j, "R", "spec", s.R);
    s.p = get_number(j, "p", "spec", s.p);
    s.q = get_number(j, "q", "spec", s.q);
    s.lambda = get_number(j, "lambda", "spec", s.lambda);
    const json& u0 = j.at("u0");
    require_object(u0, "spec.u0", {"family", "a"});
    if (u0.contains("family")) {
        if (!u0.at("family").is_string()) config_error("spec.u0.family must be a string");
        try {
            s.family = initial_family_from_string(u0.at("family").get<std::string>());
        } catch (const Error& e) {
            config_error(e.what());
        }
    }
    if (!u0.contains("a")) config_error("spec.u0.a is required");
    s.a = get_number(u0, "a", "spec.u0", s.a);
    return s;
}

StepControl parse_control(const json& j) {
    require_object(j, "control", {"cfl_safety", "delta_max", "u_stop", "t_max", "dense_window"});
    StepControl c;
    c.cfl_safety = get_number(j, "cfl_safety", "control", c.cfl_safety);
    c.delta_max = get_number(j, "delta_max", "control", c.delta_max);
    c.u_stop = get_number(j, "u_stop", "control", c.u_stop);
    c.t_max = get_number(j, "t_max", "control", c.t_max);
    if (j.contains("dense_window") && !j.at("dense_window").is_null()) {
        const auto [b, e] = get_pair(j.at("dense_window"), "control.dense_window");
        c.dense_window = TimeWindow{b, e};
    }
    return c;
}

AnalysisConfig parse_analysis(const json& j) {
    require_object(j, "analysis",
                   {"beta", "fit_window", "fit_width", "resolution_theta", "epsilon_fraction",
                    "interior_fraction", "T_cmp", "C_up", "b_max", "theorem4"});
    AnalysisConfig a;
    if (j.contains("beta") && !j.at("beta").is_null()) {
        if (!j.at("beta").is_number()) config_error("analysis.beta must be a number or null");
        a.beta = j.at("beta").get<double>();
    }
    if (j.contains("fit_window")) {
        const json& fw = j.at("fit_window");
        if (fw.is_string()) {
            const std::string mode = fw.get<std::string>();
            if (mode == "auto")
                a.fit_window.mode = FitWindowMode::Auto;
            else if (mode == "top")
                a.fit_window.mode = FitWindowMode::Top;
            else
                config_error("analysis.fit_window must be \"auto\", \"top\" or [lo, hi]");
        } else {
            const auto [lo, hi] = get_pair(fw, "analysis.fit_window");
            a.fit_window.mode = FitWindowMode::Explicit;
            a.fit_window.explicit_range = {lo, hi};
        }
    }
    a.fit_window.width = get_number(j, "fit_width", "analysis", a.fit_window.width);
    a.fit_window.resolution_theta =
        get_number(j, "resolution_theta", "analysis", a.fit_window.resolution_theta);
    a.epsilon_fraction = get_number(j, "epsilon_fraction", "analysis", a.epsilon_fraction);
    a.interior_fraction = get_number(j, "interior_fraction", "analysis", a.interior_fraction);
    a.T_cmp = get_number(j, "T_cmp", "analysis", a.T_cmp);
    a.C_up = get_number(j, "C_up", "analysis", a.C_up);
    a.b_max = get_number(j, "b_max", "analysis", a.b_max);
    a.theorem4 = get_bool(j, "theorem4", "analysis", a.theorem4);
    return a;
}

} // namespace

ExperimentConfig config_from_json(const json& j) {
    require_object(j, "config", {"spec", "grid", "control", "analysis", "output"});
    if (!j.contains("spec")) config_error("config.spec is required");
    ExperimentConfig c;
    c.spec = parse_spec(j.at("spec"));
    if (j.contains("grid")) {
        require_object(j.at("grid"), "grid", {"N"});
        c.N = get_int(j.at("grid"), "N", "grid", c.N);
    }
    if (j.contains("control")) c.control = parse_control(j.at("control"));
    if (j.contains("analysis")) c.analysis = parse_analysis(j.at("analysis"));
    if (j.contains("output")) {
        const json& o = j.at("output");
        require_object(o, "output", {"dir"});
        if (o.contains("dir")) {
            if (!o.at("dir").is_string()) config_error("output.dir must be a string");
            c.output_dir = o.at("dir").get<std::string>();
        }
    }
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) config_error("cannot open config file " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        config_error(path.string() + ": " + e.what());
    }
    return config_from_json(j);
}

ordered_json config_to_json(const ExperimentConfig& c) {
    ordered_json j;
    j["spec"] = {{"n", c.spec.n},
                 {"R", c.spec.R},
                 {"p", c.spec.p},
                 {"q", c.spec.q},
                 {"lambda", c.spec.lambda},
                 {"u0", {{"family", std::string(to_string(c.spec.family))}, {"a", c.spec.a}}}};
    j["grid"] = {{"N", c.N}};
    ordered_json control = {{"cfl_safety", c.control.cfl_safety},
                            {"delta_max", c.control.delta_max},
                            {"u_stop", c.control.u_stop},
                            {"t_max", c.control.t_max}};
    if (c.control.dense_window)
        control["dense_window"] = {c.control.dense_window->begin, c.control.dense_window->end};
    j["control"] = control;

    ordered_json analysis;
    analysis["beta"] = c.analysis.beta ? ordered_json(*c.analysis.beta) : ordered_json(nullptr);
    const FitWindowSpec& fw = c.analysis.fit_window;
    if (fw.mode == FitWindowMode::Explicit)
        analysis["fit_window"] = {fw.explicit_range.lo, fw.explicit_range.hi};
    else
        analysis["fit_window"] = std::string(to_string(fw.mode));
    analysis["fit_width"] = fw.width;
    analysis["resolution_theta"] = fw.resolution_theta;
    analysis["epsilon_fraction"] = c.analysis.epsilon_fraction;
    analysis["interior_fraction"] = c.analysis.interior_fraction;
    analysis["T_cmp"] = c.analysis.T_cmp;
    analysis["C_up"] = c.analysis.C_up;
    analysis["b_max"] = c.analysis.b_max;
    analysis["theorem4"] = c.analysis.theorem4;
    j["analysis"] = analysis;
    j["output"] = {{"dir", c.output_dir}};
    return j;
}

Experiment prepare(const ExperimentConfig& config) {
    try {
        const AnalysisConfig& a = config.analysis;
        if (!(a.epsilon_fraction > 0.0 && a.epsilon_fraction <= 1.0))
            config_error("analysis.epsilon_fraction must lie in (0, 1]");
        if (!(a.interior_fraction >= 0.0 && a.interior_fraction < 1.0))
            config_error("analysis.interior_fraction must lie in [0, 1)");
        if (!(a.T_cmp > 0.0) || !(a.C_up > 0.0))
            config_error("analysis.T_cmp and analysis.C_up must be positive");
        if (a.beta && !(*a.beta > 0.0)) config_error("analysis.beta must be positive");
        if (!(a.fit_window.width > 0.0) || !(a.fit_window.resolution_theta > 0.0))
            config_error("analysis.fit_width and analysis.resolution_theta must be positive");

        ProblemSpec spec;
        spec.n = config.spec.n;
        spec.R = config.spec.R;
        spec.p = config.spec.p;
        spec.q = config.spec.q;
        spec.lambda = config.spec.lambda;
        spec.u0 = build_quadratic_initial_data(config.spec.a, spec, a.b_max);
        spec.validate();
        const RadialGrid grid(spec.R, config.N);
        config.control.validate(spec, evaluate_initial_data(spec.u0, grid).max());
        return Experiment{config, spec, grid,
                          MonitorParams::from_spec(spec, grid, a.epsilon_fraction),
                          a.beta.value_or(spec.q)};
    } catch (const Error& e) {
        if (e.code() == ErrorCode::ConfigError) throw;
        throw Error(ErrorCode::ConfigError, e.what());
    }
}

} // namespace blowup::lab
