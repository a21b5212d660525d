#include "blowup/model.hpp"

#include "blowup/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace blowup {

std::string_view to_string(InitialFamily family) {
    switch (family) {
    case InitialFamily::Quadratic: return "quadratic";
    }
    return "unknown";
}

InitialFamily initial_family_from_string(std::string_view name) {
    if (name == "quadratic") return InitialFamily::Quadratic;
    throw Error(ErrorCode::InvalidSpec, "unknown initial-data family '" + std::string(name) + "'");
}

double ProblemSpec::alpha() const noexcept {
    return lambda > 0.0 ? std::max(p, q) : q;
}

void ProblemSpec::validate() const {
    auto fail = [](const std::string& why) { throw Error(ErrorCode::InvalidSpec, why); };
    if (n < 1) fail("dimension n must be >= 1");
    if (!(R > 0.0) || !std::isfinite(R)) fail("radius R must be positive");
    if (!(q > 0.0) || !std::isfinite(q)) fail("boundary exponent q must be positive");
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) fail("lambda must be >= 0");
    if (lambda > 0.0 && (!(p > 0.0) || !std::isfinite(p)))
        fail("reaction exponent p must be positive when lambda > 0");
    if (!std::isfinite(u0.a) || !(u0.b >= 0.0) || !std::isfinite(u0.b))
        fail("initial data needs finite a and b >= 0");
}

InitialData build_quadratic_initial_data(double a, const ProblemSpec& spec, double b_max) {
    ProblemSpec probe = spec;
    probe.u0 = InitialData{InitialFamily::Quadratic, a, 0.0};
    probe.validate();
    if (!(b_max > 0.0) || !std::isfinite(b_max))
        throw Error(ErrorCode::InvalidSpec, "b_max must be positive");

    const double R = spec.R;
    const double q = spec.q;
    auto g = [&](double b) { return 2.0 * b * R - std::exp(q * (a + b * R * R)); };

    // g(0) = -e^{qa} < 0 and g is concave in b, so the smallest root lies left
    // of the maximizer b*, where e^{q u0(R)} = 2/(qR).
    const double b_star = (std::log(2.0 / (q * R)) / q - a) / (R * R);
    const double hi_cap = std::min(b_max, b_star);
    if (!(hi_cap > 0.0) || g(hi_cap) < 0.0)
        throw Error(ErrorCode::NoCompatibleRoot,
                    "2bR = exp(q(a + bR^2)) has no root in (0, b_max] for a = " +
                        std::to_string(a));
    double lo = 0.0;
    double hi = hi_cap;
    while (hi - lo > 1e-12 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (g(mid) >= 0.0)
            hi = mid;
        else
            lo = mid;
    }
    // Return whichever bracket end has the smaller residual.
    const double b = std::abs(g(lo)) < std::abs(g(hi)) ? lo : hi;
    return InitialData{InitialFamily::Quadratic, a, b};
}

RadialField evaluate_initial_data(const InitialData& data, const RadialGrid& grid) {
    RadialField out(grid);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = data.value(grid.r(i));
    return out;
}

Cond14 evaluate_cond14(const ProblemSpec& spec, double sup_norm, double horizon,
                       double upper_constant) {
    const double n1 = spec.n + 1.0;
    const double R2 = spec.R * spec.R;
    Cond14 c;
    c.horizon = horizon;
    c.upper_constant = upper_constant;
    c.sup_norm = sup_norm;
    c.lhs = spec.lambda * (4.0 * R2 * n1 + 1.0);
    c.rhs = std::min(1.0 / upper_constant,
                     4.0 * n1 / (R2 + 4.0 * n1 * horizon) * std::exp(-sup_norm));
    c.ok = c.lhs <= c.rhs;
    return c;
}

HypothesisReport check_hypotheses(const ProblemSpec& spec, const RadialGrid& grid, double horizon,
                                  double upper_constant) {
    spec.validate();
    if (!(horizon > 0.0)) throw Error(ErrorCode::InvalidSpec, "horizon T must be positive");
    if (!(upper_constant > 0.0))
        throw Error(ErrorCode::InvalidSpec, "upper constant C must be positive");
    if (grid.R() != spec.R) throw Error(ErrorCode::InvalidSpec, "grid radius differs from spec R");

    const InitialData& u0 = spec.u0;
    const double R = spec.R;
    HypothesisReport rep;

    const double flux = 2.0 * u0.b * R;
    const double residual = std::abs(flux - std::exp(spec.q * u0.value(R)));
    rep.compat = {residual <= kConditionSlack * std::max(1.0, flux), residual};

    const double inf = std::numeric_limits<double>::infinity();
    double min_sub = inf;
    double min_ur = inf;
    double min_c11 = inf;
    double sup_norm = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double r = grid.r(i);
        const double v = u0.value(r);
        const double ur = u0.derivative(r);
        const double reaction = spec.lambda > 0.0 ? spec.lambda * std::exp(spec.p * v) : 0.0;
        min_sub = std::min(min_sub, u0.laplacian(spec.n) + reaction);
        min_ur = std::min(min_ur, ur);
        min_c11 = std::min(min_c11, ur - r / R * std::exp(v));
        sup_norm = std::max(sup_norm, std::abs(v));
    }
    rep.subsolution = {min_sub >= -kConditionSlack, min_sub};
    rep.monotone_ok = min_ur >= -kConditionSlack;
    rep.cond11 = {min_c11 >= -kConditionSlack, min_c11};
    rep.cond12 = {min_sub > 0.0, min_sub};
    rep.cond14 = evaluate_cond14(spec, sup_norm, horizon, upper_constant);
    return rep;
}

} // namespace blowup
