#include "blowup/integrate.hpp"

#include "blowup/error.hpp"
#include "blowup/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace blowup {

std::string_view to_string(StopReason reason) {
    switch (reason) {
    case StopReason::ReachedUStop: return "u_stop";
    case StopReason::DtUnderflow: return "dt_underflow";
    case StopReason::ReachedTmax: return "t_max";
    }
    return "unknown";
}

void StepControl::validate(const ProblemSpec& spec, double max_u0) const {
    auto fail = [](const std::string& why) { throw Error(ErrorCode::InvalidControl, why); };
    if (!(cfl_safety > 0.0 && cfl_safety < 1.0)) fail("cfl_safety must lie in (0, 1)");
    if (!(delta_max > 0.0)) fail("delta_max must be positive");
    if (!(t_max > 0.0)) fail("t_max must be positive");
    if (!(u_stop > max_u0))
        fail("u_stop " + std::to_string(u_stop) + " must exceed max u0 = " + std::to_string(max_u0));
    // e^{q u_stop} and e^{p u_stop} must stay well inside double range.
    if (spec.q * u_stop > 700.0 || (spec.lambda > 0.0 && spec.p * u_stop > 700.0))
        fail("u_stop too large: exp(q u_stop) or exp(p u_stop) would overflow");
    if (dense_window && !(dense_window->begin < dense_window->end))
        fail("dense window must have begin < end");
}

void compute_rhs(std::span<const double> u, const ProblemSpec& spec, const RadialGrid& grid,
                 std::span<double> out) {
    radial_laplacian(u, grid, spec.n, out);
    const std::size_t last = u.size() - 1;
    out[last] = apply_flux_closure(u, grid, spec.q, spec.n);
    if (spec.lambda > 0.0) {
        for (std::size_t i = 0; i <= last; ++i)
            out[i] += spec.lambda * checked_exp(spec.p * u[i], "reaction term");
    }
}

RadialField compute_rhs(const RadialField& u, const ProblemSpec& spec) {
    u.require_finite("compute_rhs");
    RadialField out(u.grid());
    compute_rhs(u.values(), spec, u.grid(), out.values());
    return out;
}

double select_dt(double max_u, const ProblemSpec& spec, const RadialGrid& grid,
                 const StepControl& ctl) {
    const double h = grid.h();
    const double parabolic = ctl.cfl_safety * h * h / (2.0 * spec.n);
    const double lp = spec.p * max_u;
    const double lq = spec.q * max_u;
    if ((spec.lambda > 0.0 && lp > kMaxExpArgument) || lq > kMaxExpArgument)
        throw Error(ErrorCode::Underflow, "nonlinear rate not representable at M = " +
                                              std::to_string(max_u));
    double rate = 2.0 / h * spec.q * std::exp(lq);
    if (spec.lambda > 0.0) rate += spec.lambda * spec.p * std::exp(lp);
    const double dt = std::min(parabolic, ctl.delta_max / rate);
    if (!(dt >= StepControl::kMinDt))
        throw Error(ErrorCode::Underflow, "dt = " + std::to_string(dt) + " below 1e-16");
    return dt;
}

double select_dt(const RadialField& u, const ProblemSpec& spec, const StepControl& ctl) {
    u.require_finite("select_dt");
    return select_dt(u.max(), spec, u.grid(), ctl);
}

namespace {

// Kahan-compensated clock; late steps are a few ulps of t.
class Clock {
public:
    double now() const noexcept { return sum_; }
    void advance(double dt) noexcept {
        const double y = dt - carry_;
        const double t = sum_ + y;
        carry_ = (t - sum_) - y;
        sum_ = t;
    }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

} // namespace

void rk4_advance(std::span<const double> y, std::span<const double> k1, double dt,
                 const RhsFunction& f, std::span<double> out) {
    const std::size_t m = y.size();
    std::vector<double> k2(m), k3(m), k4(m), tmp(m);
    for (std::size_t i = 0; i < m; ++i) tmp[i] = y[i] + 0.5 * dt * k1[i];
    f(tmp, k2);
    for (std::size_t i = 0; i < m; ++i) tmp[i] = y[i] + 0.5 * dt * k2[i];
    f(tmp, k3);
    for (std::size_t i = 0; i < m; ++i) tmp[i] = y[i] + dt * k3[i];
    f(tmp, k4);
    for (std::size_t i = 0; i < m; ++i) {
        out[i] = y[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        if (!std::isfinite(out[i]))
            throw Error(ErrorCode::Overflow, "non-finite value after step at node " +
                                                 std::to_string(i));
    }
}

RadialField step(const RadialField& u, const ProblemSpec& spec, double dt) {
    u.require_finite("step");
    const RadialGrid& grid = u.grid();
    RadialField k1 = compute_rhs(u, spec);
    RadialField next(grid);
    rk4_advance(u.values(), k1.values(), dt,
                [&](std::span<const double> y, std::span<double> out) {
                    compute_rhs(y, spec, grid, out);
                },
                next.values());
    return next;
}

Trace run(const ProblemSpec& spec, const RadialGrid& grid, const StepControl& ctl,
          std::optional<MonitorParams> monitors) {
    spec.validate();
    if (grid.R() != spec.R) throw Error(ErrorCode::InvalidSpec, "grid radius differs from spec R");
    RadialField u = evaluate_initial_data(spec.u0, grid);
    ctl.validate(spec, u.max());
    const MonitorParams params = monitors.value_or(MonitorParams::from_spec(spec, grid));

    Trace trace;
    trace.epsilon = params.epsilon;

    RadialField rhs(grid);
    RadialField ur(grid);
    RadialField next(grid);
    const RhsFunction rhs_fn = [&](std::span<const double> y, std::span<double> out) {
        compute_rhs(y, spec, grid, out);
    };
    Clock clock;

    auto record = [&](double t, double dt) {
        derivative_field(u.values(), grid, spec.q, ur.values());
        TraceSample s;
        s.t = t;
        s.M = u.back();
        s.ut_R = rhs.back();
        s.min_ur = ur.min();
        s.min_J2 = min_J_theorem2(u.values(), ur.values(), grid);
        s.min_J3 = min_J_theorem3(rhs.values(), ur.values(), params.epsilon);
        s.dt = dt;
        s.min_u = u.min();
        s.min_ut = rhs.min();
        trace.samples.push_back(s);
    };

    compute_rhs(u.values(), spec, grid, rhs.values());
    record(0.0, 0.0);
    trace.snapshots.push_back({0.0, u});
    double next_level = u.back() + 1.0;
    bool last_is_snapshot = true;

    for (;;) {
        const double M = u.max();
        if (M >= ctl.u_stop) {
            trace.stop = StopReason::ReachedUStop;
            break;
        }
        if (clock.now() >= ctl.t_max) {
            trace.stop = StopReason::ReachedTmax;
            break;
        }
        double dt = 0.0;
        try {
            dt = select_dt(M, spec, grid, ctl);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::Underflow) throw;
            trace.stop = StopReason::DtUnderflow;
            break;
        }
        // Time resolution exhausted: the stored clock would stall.
        const double t_prev = clock.now();
        if (dt < 2.0 * (std::nextafter(t_prev, std::numeric_limits<double>::infinity()) - t_prev)) {
            trace.stop = StopReason::DtUnderflow;
            break;
        }

        const bool final_step = t_prev + dt >= ctl.t_max;
        if (final_step) dt = ctl.t_max - t_prev;

        rk4_advance(u.values(), rhs.values(), dt, rhs_fn, next.values());
        std::swap(u, next);
        clock.advance(dt);
        const double t = clock.now();
        compute_rhs(u.values(), spec, grid, rhs.values());
        record(t, dt);

        const auto& samples = trace.samples;
        if (samples[samples.size() - 1].M < samples[samples.size() - 2].M) trace.monotone = false;

        last_is_snapshot = false;
        if (u.back() >= next_level) {
            trace.snapshots.push_back({t, u});
            while (next_level <= u.back()) next_level += 1.0;
            last_is_snapshot = true;
        } else if (ctl.dense_window && ctl.dense_window->contains(t)) {
            trace.snapshots.push_back({t, u});
            last_is_snapshot = true;
        }
        if (final_step) {
            trace.stop = StopReason::ReachedTmax;
            break;
        }
    }
    if (!last_is_snapshot) trace.snapshots.push_back({clock.now(), u});
    return trace;
}

} // namespace blowup
