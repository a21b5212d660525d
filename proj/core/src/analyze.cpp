#include "blowup/analyze.hpp"

#include "blowup/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace blowup {

std::string_view to_string(Verdict v) {
    switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::NotApplicable: return "not_applicable";
    }
    return "unknown";
}

std::string_view to_string(FitWindowMode mode) {
    switch (mode) {
    case FitWindowMode::Auto: return "auto";
    case FitWindowMode::Top: return "top";
    case FitWindowMode::Explicit: return "explicit";
    }
    return "unknown";
}

namespace {

struct Line {
    double intercept = 0.0;
    double slope = 0.0;
};

// Ordinary least squares on centered data.
Line least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const auto m = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= m;
    my /= m;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    Line line;
    line.slope = sxx > 0.0 ? sxy / sxx : std::numeric_limits<double>::quiet_NaN();
    line.intercept = my - line.slope * mx;
    return line;
}

// Time at which M first reaches `level`, interpolated linearly between samples.
double crossing_time(const std::vector<TraceSample>& s, double level) {
    auto it = std::find_if(s.begin(), s.end(), [&](const TraceSample& x) { return x.M >= level; });
    if (it == s.end()) throw Error(ErrorCode::InsufficientSamples, "level never reached");
    if (it == s.begin()) return it->t;
    const TraceSample& b = *it;
    const TraceSample& a = *(it - 1);
    return a.t + (level - a.M) / (b.M - a.M) * (b.t - a.t);
}

} // namespace

BlowupTimeEstimate estimate_blowup_time(const Trace& trace, double beta) {
    const auto& s = trace.samples;
    if (!(beta > 0.0)) throw Error(ErrorCode::InvalidSpec, "beta must be positive");
    if (s.size() < 3) throw Error(ErrorCode::InsufficientSamples, "trace too short");
    const double M0 = s.front().M;
    const double M_end = s.back().M;
    const double t_end = s.back().t;
    const auto high = static_cast<std::size_t>(
        std::count_if(s.begin(), s.end(), [&](const TraceSample& x) { return x.M > M0 + 2.0; }));
    if (high < kMinSamplesForEstimate)
        throw Error(ErrorCode::InsufficientSamples,
                    std::to_string(high) + " samples above u0(R) + 2, need " +
                        std::to_string(kMinSamplesForEstimate));

    // Top decade of e^{-βM}, scaled by e^{βM_end} so values lie in [1, 10].
    const double floor_level = M_end - std::log(10.0) / beta;
    std::vector<double> x, y;
    double prev = -std::numeric_limits<double>::infinity();
    for (const TraceSample& sample : s) {
        if (sample.M < floor_level) continue;
        if (sample.M < prev)
            throw Error(ErrorCode::NonmonotoneTrace, "M decreases inside the estimation range");
        prev = sample.M;
        x.push_back(sample.t - t_end);
        y.push_back(std::exp(-beta * (sample.M - M_end)));
    }
    if (x.size() < 3)
        throw Error(ErrorCode::InsufficientSamples, "fewer than 3 samples in the top decade");
    const Line line = least_squares(x, y);
    if (!(line.slope < 0.0))
        throw Error(ErrorCode::NonmonotoneTrace, "e^{-beta M} is not decreasing near the end");

    BlowupTimeEstimate est;
    est.beta = beta;
    est.samples_used = x.size();
    est.T_hat = t_end - line.intercept / line.slope;

    const double t0 = crossing_time(s, M_end - 2.0);
    const double t1 = crossing_time(s, M_end - 1.0);
    const double t2 = t_end;
    const double d1 = t1 - t0;
    const double d2 = t2 - t1;
    if (!(d2 - d1 < 0.0))
        throw Error(ErrorCode::NonmonotoneTrace, "level-crossing intervals are not contracting");
    est.T_aitken = t2 - d2 * d2 / (d2 - d1);
    est.spread = std::abs(est.T_hat - est.T_aitken);
    return est;
}

double resolved_amplitude(const ProblemSpec& spec, const RadialGrid& grid, double theta) {
    return std::log(theta / (spec.q * grid.h())) / spec.q;
}

AmplitudeRange resolve_fit_window(const Trace& trace, const ProblemSpec& spec,
                                  const RadialGrid& grid, const FitWindowSpec& window) {
    if (trace.samples.empty()) throw Error(ErrorCode::InsufficientSamples, "empty trace");
    const double M0 = trace.samples.front().M;
    const double M_end = trace.samples.back().M;
    double hi = M_end;
    switch (window.mode) {
    case FitWindowMode::Explicit: return window.explicit_range;
    case FitWindowMode::Top: break;
    case FitWindowMode::Auto:
        hi = std::min(M_end, resolved_amplitude(spec, grid, window.resolution_theta));
        break;
    }
    return {std::max(M0, hi - window.width), hi};
}

AmplitudeRange rate_window(const ProblemSpec& spec) {
    const double lo = 1.0 / (2.0 * spec.alpha());
    const double hi = spec.lambda > 0.0 ? 1.0 / spec.q : 1.0 / (2.0 * spec.q);
    return {lo, hi};
}

RateReport fit_rate(const Trace& trace, const ProblemSpec& spec, const BlowupTimeEstimate& T,
                    const AmplitudeRange& fit_window, double tol_slope) {
    std::vector<double> x, y;
    for (const TraceSample& s : trace.samples) {
        if (!fit_window.contains(s.M) || !(s.t < T.T_hat)) continue;
        x.push_back(-std::log(T.T_hat - s.t));
        y.push_back(s.M);
    }
    if (x.size() < 3)
        throw Error(ErrorCode::InsufficientSamples,
                    "fewer than 3 samples in fit window [" + std::to_string(fit_window.lo) + ", " +
                        std::to_string(fit_window.hi) + "]");
    const Line line = least_squares(x, y);

    RateReport rep;
    rep.T_hat = T.T_hat;
    rep.T_hat_spread = T.spread;
    rep.slope = line.slope;
    rep.intercept = line.intercept;
    rep.window = rate_window(spec);
    rep.fit_window = fit_window;
    rep.samples_used = x.size();
    const bool inside =
        rep.window.lo - tol_slope <= rep.slope && rep.slope <= rep.window.hi + tol_slope;
    rep.verdict = inside ? Verdict::Pass : Verdict::Fail;
    return rep;
}

MonitorSummary summarize_monitors(const Trace& trace, const ProblemSpec& spec,
                                  const HypothesisReport& hyp, const MonitorParams& params) {
    const double tol = params.tol_mono;
    const double inf = std::numeric_limits<double>::infinity();
    MonitorSummary out;

    Lemma1Summary& l1 = out.lemma1;
    l1.min_ur = inf;
    l1.min_ut = inf;
    bool seen_nonnegative = false;
    for (const TraceSample& s : trace.samples) {
        l1.min_ur = std::min(l1.min_ur, s.min_ur);
        l1.min_ut = std::min(l1.min_ut, s.min_ut);
        // Positivity is only required to persist once reached; u0 may be negative.
        if (seen_nonnegative && s.min_u < -tol) l1.positivity_preserved = false;
        if (s.min_u >= 0.0) seen_nonnegative = true;
    }
    l1.monotone = trace.monotone;
    const bool l1_ok =
        l1.min_ur >= -tol && l1.min_ut >= -tol && l1.monotone && l1.positivity_preserved;
    l1.verdict = l1_ok ? Verdict::Pass : Verdict::Fail;

    J2Summary& j2 = out.J2;
    j2.applicable = spec.q >= 1.0 && hyp.cond11.ok;
    j2.min_J = inf;
    const double M_end = trace.samples.back().M;
    double ratio_early = 0.0;
    double ratio_late = 0.0;
    for (const TraceSample& s : trace.samples) {
        j2.min_J = std::min(j2.min_J, s.min_J2);
        const double ratio = s.ut_R * std::exp(-2.0 * spec.alpha() * s.M);
        j2.max_ratio = std::max(j2.max_ratio, ratio);
        if (s.M < M_end - 1.0)
            ratio_early = std::max(ratio_early, ratio);
        else
            ratio_late = std::max(ratio_late, ratio);
    }
    // Bounded: the last amplitude unit does not push the ratio past twice its earlier maximum.
    j2.ratio_bounded = ratio_early == 0.0 || ratio_late <= 2.0 * ratio_early;
    if (j2.applicable)
        j2.verdict = j2.min_J >= -tol && j2.ratio_bounded ? Verdict::Pass : Verdict::Fail;

    J3Summary& j3 = out.J3;
    j3.epsilon = trace.epsilon;
    j3.applicable = hyp.cond12.ok && trace.epsilon > 0.0 &&
                    trace.epsilon <= params.epsilon_bound(spec) * (1.0 + 1e-12);
    j3.min_J = inf;
    j3.min_ratio = inf;
    for (const TraceSample& s : trace.samples) {
        j3.min_J = std::min(j3.min_J, s.min_J3);
        j3.min_ratio = std::min(j3.min_ratio, s.ut_R * std::exp(-spec.q * s.M));
    }
    if (j3.applicable)
        j3.verdict = j3.min_J >= -tol && j3.min_ratio >= j3.epsilon - tol ? Verdict::Pass
                                                                         : Verdict::Fail;
    return out;
}

} // namespace blowup
