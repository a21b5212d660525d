#pragma once

// Pointwise sign monitors evaluated on a single snapshot (and its rhs).

#include "blowup/grid.hpp"
#include "blowup/model.hpp"

#include <optional>
#include <span>

namespace blowup {

struct MonitorParams {
    double epsilon = 0.0; // ε of J = u_t - ε u_r, must satisfy ε <= q e^{q u0(R)}
    double tol_mono = 0.0;

    /// ε = fraction * q e^{q u0(R)}, tol_mono = 10 h^2.
    static MonitorParams from_spec(const ProblemSpec& spec, const RadialGrid& grid,
                                   double epsilon_fraction = 0.9);
    double epsilon_bound(const ProblemSpec& spec) const;
};

struct Lemma1Minima {
    double min_u = 0.0;
    double min_ur = 0.0;
    double min_ut = 0.0;
    bool ur_flag = false;
    bool ut_flag = false;
    bool u_flag = false;

    bool flagged() const noexcept { return ur_flag || ut_flag; }
};

/// Minima of u, u_r and u_t. The boundary u_r uses the flux exp(q u_N) when q is given.
Lemma1Minima monitor_lemma1(const RadialField& u, const RadialField& rhs, double tol,
                            std::optional<double> q = std::nullopt);

struct JMinimum {
    double min = 0.0;
    std::size_t argmin = 0;
    bool flagged = false;
};

/// min over the grid of J = u_r - (r/R) e^{u}.
JMinimum monitor_J_theorem2(const RadialField& u, double tol, std::optional<double> q = std::nullopt);

struct J3Minimum {
    double min = 0.0;
    double boundary_ratio = 0.0; // u_t(R) / e^{q u(R)}, must stay >= ε
    bool flagged = false;
};

/// min over the grid of J = u_t - ε u_r, plus the boundary ratio.
J3Minimum monitor_J_theorem3(const RadialField& u, const RadialField& rhs, double q,
                             const MonitorParams& params);

// Span kernels used by the integrator's per-step bookkeeping.
double min_J_theorem2(std::span<const double> u, std::span<const double> ur, const RadialGrid& grid);
double min_J_theorem3(std::span<const double> ut, std::span<const double> ur, double epsilon);

} // namespace blowup
