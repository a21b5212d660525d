#pragma once

// Verdicts over a finished trace: blow-up time, log-rate slope against the
// proven window [1/(2α), 1/q], and run-wide monitor summaries.

#include "blowup/grid.hpp"
#include "blowup/integrate.hpp"
#include "blowup/model.hpp"
#include "blowup/monitors.hpp"

#include <optional>
#include <string_view>

namespace blowup {

enum class Verdict { Pass, Fail, NotApplicable };

std::string_view to_string(Verdict v);

struct AmplitudeRange {
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double m) const noexcept { return m >= lo && m <= hi; }
    bool operator==(const AmplitudeRange&) const = default;
};

struct BlowupTimeEstimate {
    double T_hat = 0.0;      // linearized least-squares root
    double T_aitken = 0.0;   // Aitken extrapolation of level-crossing times
    double spread = 0.0;     // |T_hat - T_aitken|
    double beta = 0.0;
    std::size_t samples_used = 0;
};

inline constexpr std::size_t kMinSamplesForEstimate = 30;

/// Primary estimate: least-squares line through (t_i, e^{-β M_i}) over the top
/// decade of e^{-βM}; its root is T. Secondary: Aitken Δ² on the crossing times
/// of M_end - 2, M_end - 1, M_end. Throws InsufficientSamples or NonmonotoneTrace.
BlowupTimeEstimate estimate_blowup_time(const Trace& trace, double beta);

enum class FitWindowMode { Auto, Top, Explicit };

std::string_view to_string(FitWindowMode mode);

struct FitWindowSpec {
    FitWindowMode mode = FitWindowMode::Auto;
    AmplitudeRange explicit_range{};
    double width = 2.0;                // amplitude units
    double resolution_theta = 0.1;     // auto: boundary-cell jump q h e^{qM} <= theta

    bool operator==(const FitWindowSpec&) const = default;
};

/// Amplitude up to which the boundary layer is resolved: q h e^{q M} = theta.
double resolved_amplitude(const ProblemSpec& spec, const RadialGrid& grid, double theta);

/// Concrete window for a trace. Auto ends at min(M_end, resolved amplitude),
/// Top ends at M_end; both span `width` units and are clipped below at M(0).
AmplitudeRange resolve_fit_window(const Trace& trace, const ProblemSpec& spec,
                                  const RadialGrid& grid, const FitWindowSpec& window);

/// Window bounds on the slope: (1/(2α), 1/q), collapsing to 1/(2q) when λ = 0.
AmplitudeRange rate_window(const ProblemSpec& spec);

inline constexpr double kSlopeTolerance = 0.05;

struct RateReport {
    double T_hat = 0.0;
    double T_hat_spread = 0.0;
    double slope = 0.0;
    double intercept = 0.0;
    AmplitudeRange window{};       // slope bounds
    AmplitudeRange fit_window{};   // amplitudes used
    std::size_t samples_used = 0;
    Verdict verdict = Verdict::NotApplicable;
};

/// OLS of M_i against -log(T_hat - t_i) for samples with M_i in `fit_window`.
RateReport fit_rate(const Trace& trace, const ProblemSpec& spec, const BlowupTimeEstimate& T,
                    const AmplitudeRange& fit_window, double tol_slope = kSlopeTolerance);

struct Lemma1Summary {
    double min_ur = 0.0;
    double min_ut = 0.0;
    bool monotone = true;
    bool positivity_preserved = true;
    Verdict verdict = Verdict::NotApplicable;
};

struct J2Summary {
    bool applicable = false;
    double min_J = 0.0;
    double max_ratio = 0.0;     // max u_t(R) / e^{2α u(R)}
    bool ratio_bounded = true;
    Verdict verdict = Verdict::NotApplicable;
};

struct J3Summary {
    bool applicable = false;
    double epsilon = 0.0;
    double min_J = 0.0;
    double min_ratio = 0.0;     // min u_t(R) / e^{q u(R)}
    Verdict verdict = Verdict::NotApplicable;
};

struct MonitorSummary {
    Lemma1Summary lemma1;
    J2Summary J2;
    J3Summary J3;
};

/// Run-wide monitor verdicts from the per-step trace columns and snapshots.
MonitorSummary summarize_monitors(const Trace& trace, const ProblemSpec& spec,
                                  const HypothesisReport& hyp, const MonitorParams& params);

} // namespace blowup
