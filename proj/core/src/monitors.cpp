#include "blowup/monitors.hpp"

#include "blowup/error.hpp"
#include "blowup/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace blowup {

MonitorParams MonitorParams::from_spec(const ProblemSpec& spec, const RadialGrid& grid,
                                       double epsilon_fraction) {
    MonitorParams params;
    params.epsilon = epsilon_fraction * spec.q * std::exp(spec.q * spec.u0.value(spec.R));
    params.tol_mono = 10.0 * grid.h() * grid.h();
    return params;
}

double MonitorParams::epsilon_bound(const ProblemSpec& spec) const {
    return spec.q * std::exp(spec.q * spec.u0.value(spec.R));
}

Lemma1Minima monitor_lemma1(const RadialField& u, const RadialField& rhs, double tol,
                            std::optional<double> q) {
    const RadialField ur = derivative_field(u, q);
    Lemma1Minima m;
    m.min_u = u.min();
    m.min_ur = ur.min();
    m.min_ut = rhs.min();
    m.u_flag = m.min_u < -tol;
    m.ur_flag = m.min_ur < -tol;
    m.ut_flag = m.min_ut < -tol;
    return m;
}

double min_J_theorem2(std::span<const double> u, std::span<const double> ur, const RadialGrid& grid) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < u.size(); ++i)
        best = std::min(best, ur[i] - grid.r(i) / grid.R() * std::exp(u[i]));
    return best;
}

double min_J_theorem3(std::span<const double> ut, std::span<const double> ur, double epsilon) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < ut.size(); ++i)
        best = std::min(best, ut[i] - epsilon * ur[i]);
    return best;
}

JMinimum monitor_J_theorem2(const RadialField& u, double tol, std::optional<double> q) {
    const RadialField ur = derivative_field(u, q);
    const RadialGrid& grid = u.grid();
    JMinimum m;
    m.min = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double j = ur[i] - grid.r(i) / grid.R() * std::exp(u[i]);
        if (j < m.min) {
            m.min = j;
            m.argmin = i;
        }
    }
    m.flagged = m.min < -tol;
    return m;
}

J3Minimum monitor_J_theorem3(const RadialField& u, const RadialField& rhs, double q,
                             const MonitorParams& params) {
    if (rhs.size() != u.size())
        throw Error(ErrorCode::InvalidSpec, "rhs and u have different lengths");
    const RadialField ur = derivative_field(u, q);
    J3Minimum m;
    m.min = min_J_theorem3(rhs.values(), ur.values(), params.epsilon);
    m.boundary_ratio = rhs.back() / std::exp(q * u.back());
    m.flagged = m.min < -params.tol_mono || m.boundary_ratio < params.epsilon - params.tol_mono;
    return m;
}

} // namespace blowup
