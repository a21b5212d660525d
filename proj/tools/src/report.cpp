#include "blowup_lab/report.hpp"

#include "blowup/error.hpp"

namespace blowup::lab {

using nlohmann::ordered_json;

namespace {

bool gate_ok(Verdict v) { return v != Verdict::Fail; }

ordered_json check_json(const ConditionCheck& c) { return {{"ok", c.ok}, {"value", c.value}}; }

ordered_json cond14_json(const Cond14& c) {
    return {{"ok", c.ok},          {"lhs", c.lhs},
            {"rhs", c.rhs},        {"horizon", c.horizon},
            {"upper_constant", c.upper_constant}, {"sup_norm", c.sup_norm}};
}

ordered_json verdict_json(Verdict v) { return std::string(to_string(v)); }

} // namespace

bool ExperimentReport::all_pass() const {
    return gate_ok(rate_verdict) && gate_ok(monitors.lemma1.verdict) &&
           gate_ok(monitors.J2.verdict) && gate_ok(monitors.J3.verdict) &&
           gate_ok(theorem4.verdict);
}

AmplitudeRange configured_fit_window(const Experiment& exp, const Trace& trace) {
    return resolve_fit_window(trace, exp.spec, exp.grid, exp.config.analysis.fit_window);
}

ExperimentReport analyze_experiment(const Experiment& exp, const Trace& trace,
                                    const std::optional<AmplitudeRange>& window_override) {
    const AnalysisConfig& cfg = exp.config.analysis;
    ExperimentReport rep;
    rep.hypotheses = check_hypotheses(exp.spec, exp.grid, cfg.T_cmp, cfg.C_up);
    rep.stop = trace.stop;
    rep.steps = trace.samples.size() - 1;
    rep.t_end = trace.last().t;
    rep.M_end = trace.last().M;

    const HypothesisReport& hyp = rep.hypotheses;
    const bool base_hyp = hyp.compat.ok && hyp.subsolution.ok && hyp.monotone_ok;

    rep.monitors = summarize_monitors(trace, exp.spec, hyp, exp.monitors);
    if (!base_hyp) {
        rep.monitors.lemma1.verdict = Verdict::NotApplicable;
        rep.monitors.J2.verdict = Verdict::NotApplicable;
        rep.monitors.J3.verdict = Verdict::NotApplicable;
    }

    if (trace.stop == StopReason::ReachedTmax) {
        rep.rate_note = "no blow-up observed before t_max";
    } else {
        try {
            rep.estimate = estimate_blowup_time(trace, exp.beta);
            const AmplitudeRange window = window_override.value_or(configured_fit_window(exp, trace));
            rep.rate = fit_rate(trace, exp.spec, *rep.estimate, window);
            rep.rate_verdict = base_hyp ? rep.rate->verdict : Verdict::NotApplicable;
            if (!base_hyp) rep.rate_note = "initial data violates compatibility/subsolution/monotonicity";
        } catch (const Error& e) {
            rep.rate_note = e.what();
            rep.rate_verdict = Verdict::Fail;
        }
    }

    TheoremFourResult& t4 = rep.theorem4;
    if (!cfg.theorem4) {
        t4.note = "not requested";
    } else if (exp.spec.p != 1.0 || exp.spec.q != 1.0 || !(exp.spec.lambda > 0.0)) {
        t4.note = "requires p = q = 1 and lambda > 0";
    } else if (!hyp.cond14.ok) {
        t4.note = "cond14 violated at T_cmp";
    } else if (!base_hyp) {
        t4.note = "initial data violates compatibility/subsolution/monotonicity";
    } else if (!rep.estimate) {
        t4.note = "no blow-up time estimate";
    } else {
        // The comparison runs up to the observed blow-up time, so the smallness
        // condition must also hold with that horizon.
        t4.cond14_at_T_hat = evaluate_cond14(exp.spec, hyp.cond14.sup_norm, rep.estimate->T_hat,
                                             cfg.C_up);
        if (!t4.cond14_at_T_hat->ok) {
            t4.note = "cond14 violated at T_hat";
        } else {
            t4.envelope = envelope_from_spec(exp.spec, exp.grid, cfg.T_cmp, cfg.C_up);
            t4.report = check_boundary_blowup(trace, *t4.envelope, exp.spec, *rep.estimate,
                                              cfg.interior_fraction);
            t4.verdict = t4.report->verdict;
        }
    }
    return rep;
}

ordered_json report_to_json(const Experiment& exp, const ExperimentReport& rep) {
    ordered_json j;
    j["config_echo"] = config_to_json(exp.config);
    j["initial_data"] = {{"family", std::string(to_string(exp.spec.u0.family))},
                         {"a", exp.spec.u0.a},
                         {"b", exp.spec.u0.b},
                         {"u0_R", exp.spec.u0.value(exp.spec.R)}};
    const HypothesisReport& h = rep.hypotheses;
    j["hypotheses"] = {{"compat", check_json(h.compat)},
                       {"subsolution", check_json(h.subsolution)},
                       {"monotone_ok", h.monotone_ok},
                       {"cond11", check_json(h.cond11)},
                       {"cond12", check_json(h.cond12)},
                       {"cond14", cond14_json(h.cond14)}};
    j["run"] = {{"stop", std::string(to_string(rep.stop))},
                {"steps", rep.steps},
                {"t_end", rep.t_end},
                {"M_end", rep.M_end}};

    const ordered_json null = nullptr;
    j["T_hat"] = rep.estimate ? ordered_json(rep.estimate->T_hat) : null;
    j["T_hat_spread"] = rep.estimate ? ordered_json(rep.estimate->spread) : null;
    j["T_aitken"] = rep.estimate ? ordered_json(rep.estimate->T_aitken) : null;
    j["beta"] = exp.beta;
    j["slope"] = rep.rate ? ordered_json(rep.rate->slope) : null;
    j["intercept"] = rep.rate ? ordered_json(rep.rate->intercept) : null;
    const AmplitudeRange bounds = rate_window(exp.spec);
    j["window"] = {bounds.lo, bounds.hi};
    j["fit_window"] = rep.rate ? ordered_json{rep.rate->fit_window.lo, rep.rate->fit_window.hi} : null;
    j["fit_samples"] = rep.rate ? ordered_json(rep.rate->samples_used) : null;
    j["verdict_rate"] = verdict_json(rep.rate_verdict);
    if (!rep.rate_note.empty()) j["rate_note"] = rep.rate_note;

    const TheoremFourResult& t4 = rep.theorem4;
    j["verdict_theorem4"] = verdict_json(t4.verdict);
    ordered_json t4j;
    t4j["note"] = t4.note;
    if (t4.cond14_at_T_hat) t4j["cond14_at_T_hat"] = cond14_json(*t4.cond14_at_T_hat);
    if (t4.envelope) t4j["envelope"] = {{"A", t4.envelope->A}, {"B", t4.envelope->B}};
    if (t4.report) {
        const BoundaryBlowupReport& r = *t4.report;
        t4j["max_envelope_excess"] = r.max_envelope_excess;
        t4j["max_interior_excess"] = r.max_interior_excess;
        t4j["max_upper_excess"] = r.max_upper_excess;
        t4j["reached_blowup"] = r.reached_blowup;
        t4j["tolerance"] = r.tolerance;
        t4j["T_used"] = r.T_used;
    }
    j["theorem4"] = t4j;

    const MonitorSummary& m = rep.monitors;
    j["monitors"] = {
        {"tol_mono", exp.monitors.tol_mono},
        {"lemma1",
         {{"min_ur", m.lemma1.min_ur},
          {"min_ut", m.lemma1.min_ut},
          {"monotone", m.lemma1.monotone},
          {"positivity_preserved", m.lemma1.positivity_preserved},
          {"verdict", verdict_json(m.lemma1.verdict)}}},
        {"J2",
         {{"applicable", m.J2.applicable},
          {"min_J", m.J2.min_J},
          {"max_ratio", m.J2.max_ratio},
          {"ratio_bounded", m.J2.ratio_bounded},
          {"verdict", verdict_json(m.J2.verdict)}}},
        {"J3",
         {{"applicable", m.J3.applicable},
          {"epsilon", m.J3.epsilon},
          {"min_J", m.J3.min_J},
          {"min_ratio", m.J3.min_ratio},
          {"verdict", verdict_json(m.J3.verdict)}}}};
    j["all_pass"] = rep.all_pass();
    return j;
}

} // namespace blowup::lab
