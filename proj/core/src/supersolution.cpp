#include "blowup/supersolution.hpp"

#include "blowup/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace blowup {

double SupersolutionEnvelope::v(double r, double R) const noexcept {
    const double w = R * R - r * r;
    return A * w * w;
}

double SupersolutionEnvelope::z(double r, double t, double R, double T) const noexcept {
    const double d = v(r, R) + B * (T - t);
    return d > 0.0 ? -std::log(d) : std::numeric_limits<double>::infinity();
}

double SupersolutionEnvelope::interior_bound(double r, double R) const noexcept {
    const double d = v(r, R);
    return d > 0.0 ? -std::log(d) : std::numeric_limits<double>::infinity();
}

double envelope_min_B(double A, const ProblemSpec& spec) {
    return A * (4.0 * spec.R * spec.R * (spec.n + 1.0) + 1.0);
}

SupersolutionEnvelope envelope_from_spec(const ProblemSpec& spec, const RadialGrid& grid,
                                         double T_cmp, double C_up) {
    spec.validate();
    if (spec.p != 1.0 || spec.q != 1.0)
        throw Error(ErrorCode::NotApplicable, "envelope requires p = q = 1");
    if (!(spec.lambda > 0.0)) throw Error(ErrorCode::NotApplicable, "envelope requires lambda > 0");
    double sup_norm = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        sup_norm = std::max(sup_norm, std::abs(spec.u0.value(grid.r(i))));
    const Cond14 c = evaluate_cond14(spec, sup_norm, T_cmp, C_up);
    SupersolutionEnvelope env;
    env.A = spec.lambda;
    env.B = envelope_min_B(env.A, spec);
    env.C_up = C_up;
    env.T_cmp = T_cmp;
    // The lower B constraint equals the left side of the smallness condition,
    // so the two B constraints conflict exactly when it fails.
    if (!c.ok)
        throw Error(ErrorCode::Cond14Violated, "B = " + std::to_string(env.B) + " exceeds " +
                                                   std::to_string(c.rhs));
    return env;
}

double supersolution_residual(const SupersolutionEnvelope& env, const ProblemSpec& spec, double r,
                              double t) {
    const double R = spec.R;
    const double A = env.A;
    const double w = R * R - r * r;
    const double D = env.v(r, R) + env.B * (env.T_cmp - t);
    const double z_t = env.B / D;
    const double z_r = 4.0 * r * A * w / D;
    const double z_rr = (D * 4.0 * A * (R * R - 3.0 * r * r) + 16.0 * A * A * r * r * w * w) / (D * D);
    const double lap = r > 0.0 ? z_rr + (spec.n - 1.0) / r * z_r : spec.n * z_rr;
    return z_t - lap - spec.lambda / D;
}

double verify_supersolution_pde(const SupersolutionEnvelope& env, const ProblemSpec& spec,
                                const RadialGrid& grid, std::span<const double> t_nodes) {
    double best = std::numeric_limits<double>::infinity();
    for (double t : t_nodes)
        for (std::size_t i = 0; i < grid.size(); ++i)
            best = std::min(best, supersolution_residual(env, spec, grid.r(i), t));
    return best;
}

BoundaryBlowupReport check_boundary_blowup(const Trace& trace, const SupersolutionEnvelope& env,
                                           const ProblemSpec& spec,
                                           const BlowupTimeEstimate& estimate,
                                           double interior_fraction, double tol_cmp) {
    BoundaryBlowupReport rep;
    rep.tolerance = tol_cmp;
    if (spec.p != 1.0 || spec.q != 1.0 || !(spec.lambda > 0.0)) return rep;

    const double R = spec.R;
    // Lenient side of the estimator uncertainty: z grows as T decreases.
    rep.T_used = estimate.T_hat - estimate.spread;
    rep.reached_blowup = trace.stop != StopReason::ReachedTmax;
    const double ninf = -std::numeric_limits<double>::infinity();
    rep.max_envelope_excess = ninf;
    rep.max_interior_excess = ninf;
    rep.max_upper_excess = ninf;

    for (const Snapshot& snap : trace.snapshots) {
        const RadialGrid& grid = snap.u.grid();
        for (std::size_t i = 0; i < snap.u.size(); ++i) {
            const double r = grid.r(i);
            rep.max_envelope_excess =
                std::max(rep.max_envelope_excess, snap.u[i] - env.z(r, snap.t, R, rep.T_used));
            if (r <= interior_fraction * R)
                rep.max_interior_excess =
                    std::max(rep.max_interior_excess, snap.u[i] - env.interior_bound(r, R));
        }
    }
    const double logC = std::log(env.C_up);
    for (const TraceSample& s : trace.samples) {
        if (!(s.t < rep.T_used)) continue;
        rep.max_upper_excess = std::max(rep.max_upper_excess, s.M - (logC - std::log(rep.T_used - s.t)));
    }

    const bool ok = rep.reached_blowup && rep.max_envelope_excess <= tol_cmp &&
                    rep.max_interior_excess <= tol_cmp && rep.max_upper_excess <= tol_cmp;
    rep.verdict = ok ? Verdict::Pass : Verdict::Fail;
    return rep;
}

} // namespace blowup
