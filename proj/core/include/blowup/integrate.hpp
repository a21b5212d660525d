#pragma once

// Method-of-lines integration of the radial problem with an amplitude-aware
// explicit step. The run stops at an amplitude threshold that stands in for
// blow-up; declaring blow-up is left to the analysis layer.

#include "blowup/grid.hpp"
#include "blowup/model.hpp"
#include "blowup/monitors.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace blowup {

struct TimeWindow {
    double begin = 0.0;
    double end = 0.0;

    bool contains(double t) const noexcept { return t >= begin && t <= end; }
    bool operator==(const TimeWindow&) const = default;
};

struct StepControl {
    double cfl_safety = 0.4;
    double delta_max = 0.05;
    double u_stop = 25.0;
    double t_max = 100.0;
    /// Store a snapshot at every accepted step inside this window.
    std::optional<TimeWindow> dense_window;

    static constexpr double kMinDt = 1e-16;

    /// Throws InvalidControl.
    void validate(const ProblemSpec& spec, double max_u0) const;

    bool operator==(const StepControl&) const = default;
};

struct TraceSample {
    double t = 0.0;
    double M = 0.0;     // u(R, t) = max u
    double ut_R = 0.0;  // rhs at r = R
    double min_ur = 0.0;
    double min_J2 = 0.0;
    double min_J3 = 0.0;
    double dt = 0.0;    // accepted step that produced this sample (0 for t = 0)
    double min_u = 0.0;
    double min_ut = 0.0;

    bool operator==(const TraceSample&) const = default;
};

struct Snapshot {
    double t = 0.0;
    RadialField u;
};

enum class StopReason { ReachedUStop, DtUnderflow, ReachedTmax };

std::string_view to_string(StopReason reason);

struct Trace {
    std::vector<TraceSample> samples;
    std::vector<Snapshot> snapshots; // time ordered; t = 0, amplitude levels, dense window, final
    StopReason stop = StopReason::ReachedTmax;
    bool monotone = true;            // M nondecreasing over accepted steps
    double epsilon = 0.0;            // ε used for the min_J3 column

    const TraceSample& last() const { return samples.back(); }
};

/// u_t for the semi-discrete system. Interior and center nodes get the radial
/// Laplacian plus reaction, the boundary node the ghost-closure Laplacian plus reaction.
void compute_rhs(std::span<const double> u, const ProblemSpec& spec, const RadialGrid& grid,
                 std::span<double> out);
RadialField compute_rhs(const RadialField& u, const ProblemSpec& spec);

/// dt = min(cfl h^2/(2n), δ / (λ p e^{pM} + (2/h) q e^{qM})). Throws Underflow below 1e-16.
double select_dt(const RadialField& u, const ProblemSpec& spec, const StepControl& ctl);
double select_dt(double max_u, const ProblemSpec& spec, const RadialGrid& grid,
                 const StepControl& ctl);

using RhsFunction = std::function<void(std::span<const double>, std::span<double>)>;

/// One classical four-stage Runge-Kutta step of y' = f(y). `k1` must hold f(y).
void rk4_advance(std::span<const double> y, std::span<const double> k1, double dt,
                 const RhsFunction& f, std::span<double> out);

/// Classical four-stage Runge-Kutta step.
RadialField step(const RadialField& u, const ProblemSpec& spec, double dt);

/// Integrates from spec.u0 until max u >= u_stop, dt underflow, or t = t_max
/// (the last step is shortened to land on t_max).
Trace run(const ProblemSpec& spec, const RadialGrid& grid, const StepControl& ctl,
          std::optional<MonitorParams> monitors = std::nullopt);

} // namespace blowup
