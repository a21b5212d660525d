#pragma once

// Trace -> verdicts for one experiment, and the report.json document.

#include "blowup/analyze.hpp"
#include "blowup/supersolution.hpp"
#include "blowup_lab/config.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace blowup::lab {

struct TheoremFourResult {
    Verdict verdict = Verdict::NotApplicable;
    std::string note;
    std::optional<Cond14> cond14_at_T_hat;
    std::optional<SupersolutionEnvelope> envelope;
    std::optional<BoundaryBlowupReport> report;
};

struct ExperimentReport {
    HypothesisReport hypotheses;
    StopReason stop = StopReason::ReachedTmax;
    std::size_t steps = 0;
    double t_end = 0.0;
    double M_end = 0.0;

    std::optional<BlowupTimeEstimate> estimate;
    std::optional<RateReport> rate;
    Verdict rate_verdict = Verdict::NotApplicable;
    std::string rate_note;

    MonitorSummary monitors;
    TheoremFourResult theorem4;

    /// True when no applicable gate failed.
    bool all_pass() const;
};

/// Runs every analysis on a finished trace. `window_override` replaces the
/// configured fit window (used to put refinement runs on a common window).
ExperimentReport analyze_experiment(const Experiment& exp, const Trace& trace,
                                    const std::optional<AmplitudeRange>& window_override = {});

/// Fit window the configuration selects for this trace.
AmplitudeRange configured_fit_window(const Experiment& exp, const Trace& trace);

nlohmann::ordered_json report_to_json(const Experiment& exp, const ExperimentReport& report);

} // namespace blowup::lab
