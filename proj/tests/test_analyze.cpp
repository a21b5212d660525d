#include "blowup/analyze.hpp"
#include "blowup/error.hpp"
#include "blowup/integrate.hpp"
#include "blowup/monitors.hpp"
#include "blowup/supersolution.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace blowup;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected blowup::Error");
    return ErrorCode::ConfigError;
}

// Samples of M(t) on t_k = T - (T - t0) g^k, geometric towards T.
template <typename F>
Trace synthetic_trace(double T, double t0, int count, double ratio, F&& M_of_t) {
    Trace tr;
    double gap = T - t0;
    double prev_t = 0.0;
    for (int k = 0; k < count; ++k) {
        const double t = T - gap;
        tr.samples.push_back({.t = t, .M = M_of_t(t), .dt = k ? t - prev_t : 0.0});
        prev_t = t;
        gap *= ratio;
    }
    tr.stop = StopReason::ReachedUStop;
    return tr;
}

ProblemSpec spec_pq(double p, double q, double lambda) {
    ProblemSpec s;
    s.n = 1;
    s.R = 1.0;
    s.p = p;
    s.q = q;
    s.lambda = lambda;
    return s;
}

} // namespace

TEST_CASE("blow-up time on exact logarithmic profiles") {
    SUBCASE("beta = 2, unit prefactor") {
        const Trace tr = synthetic_trace(1.0, 0.0, 400, 0.95,
                                         [](double t) { return -0.5 * std::log(1.0 - t); });
        const BlowupTimeEstimate e = estimate_blowup_time(tr, 2.0);
        CHECK(e.T_hat == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(e.T_aitken == doctest::Approx(1.0).epsilon(1e-4));
        CHECK(e.samples_used >= 3);
    }
    SUBCASE("prefactor does not shift the root") {
        const Trace tr = synthetic_trace(1.0, 0.0, 400, 0.95,
                                         [](double t) { return -0.5 * std::log(3.0 * (1.0 - t)); });
        CHECK(estimate_blowup_time(tr, 2.0).T_hat == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("property: estimator is exact for random kappa, beta, T") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 100; ++k) {
        const double beta = 0.5 + 3.5 * u(rng);
        const double kappa = std::exp(-2.0 + 4.0 * u(rng));
        const double T = 0.1 + 5.0 * u(rng);
        const Trace tr = synthetic_trace(T, 0.0, 600, 0.96, [&](double t) {
            return -std::log(kappa * (T - t)) / beta;
        });
        const BlowupTimeEstimate e = estimate_blowup_time(tr, beta);
        CHECK(std::abs(e.T_hat - T) < 1e-6 * T);
        CHECK(e.T_hat > tr.last().t);
    }
}

TEST_CASE("blow-up time preconditions") {
    const Trace short_tr = synthetic_trace(1.0, 0.0, 20, 0.5, [](double t) { return -std::log(1.0 - t); });
    CHECK(code_of([&] { estimate_blowup_time(short_tr, 1.0); }) == ErrorCode::InsufficientSamples);

    Trace bumpy = synthetic_trace(1.0, 0.0, 400, 0.95, [](double t) { return -std::log(1.0 - t); });
    bumpy.samples[390].M = bumpy.samples.back().M;
    CHECK(code_of([&] { estimate_blowup_time(bumpy, 1.0); }) == ErrorCode::NonmonotoneTrace);
    CHECK(code_of([&] { estimate_blowup_time(bumpy, 0.0); }) == ErrorCode::InvalidSpec);
}

TEST_CASE("rate fit recovers slope and intercept") {
    const Trace tr = synthetic_trace(1.0, 0.0, 300, 0.95,
                                     [](double t) { return 0.4 * -std::log(1.0 - t) + 7.0; });
    BlowupTimeEstimate T;
    T.T_hat = 1.0;
    const RateReport rep = fit_rate(tr, spec_pq(1.0, 2.0, 1.0), T, {7.0, 1e9});
    CHECK(rep.slope == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(rep.intercept == doctest::Approx(7.0).epsilon(1e-12));
    CHECK(rep.samples_used == tr.samples.size());
    CHECK(code_of([&] { fit_rate(tr, spec_pq(1.0, 2.0, 1.0), T, {-5.0, -4.0}); }) ==
          ErrorCode::InsufficientSamples);
}

TEST_CASE("rate window verdicts") {
    const ProblemSpec s = spec_pq(1.0, 2.0, 1.0);
    CHECK(rate_window(s) == AmplitudeRange{0.25, 0.5});
    BlowupTimeEstimate T;
    T.T_hat = 1.0;
    for (auto [slope, expected] : {std::pair{0.3, Verdict::Pass}, std::pair{0.6, Verdict::Fail},
                                   std::pair{0.21, Verdict::Pass}, std::pair{0.19, Verdict::Fail}}) {
        const Trace tr = synthetic_trace(1.0, 0.0, 200, 0.95,
                                         [&](double t) { return slope * -std::log(1.0 - t); });
        CHECK(fit_rate(tr, s, T, {0.0, 1e9}).verdict == expected);
    }
    // Without reaction the window collapses to 1/(2q).
    CHECK(rate_window(spec_pq(5.0, 1.0, 0.0)) == AmplitudeRange{0.5, 0.5});
}

TEST_CASE("property: rate window is a valid interval") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.05, 6.0);
    for (int k = 0; k < 200; ++k) {
        const AmplitudeRange w = rate_window(spec_pq(u(rng), u(rng), k % 4 ? 1.0 : 0.0));
        CHECK(w.lo <= w.hi);
        CHECK(w.lo > 0.0);
    }
}

TEST_CASE("fit window resolution") {
    const ProblemSpec s = spec_pq(1.0, 1.0, 0.0);
    const RadialGrid g(1.0, 100);
    // q h e^{q M} = theta  ->  M = log(theta / (q h)) / q.
    CHECK(resolved_amplitude(s, g, 0.1) == doctest::Approx(std::log(10.0)));
    Trace tr;
    tr.samples = {{.t = 0.0, .M = -0.5}, {.t = 1.0, .M = 20.0}};
    FitWindowSpec auto_spec;
    CHECK(resolve_fit_window(tr, s, g, auto_spec) == AmplitudeRange{std::log(10.0) - 2.0, std::log(10.0)});
    FitWindowSpec top{.mode = FitWindowMode::Top};
    CHECK(resolve_fit_window(tr, s, g, top) == AmplitudeRange{18.0, 20.0});
    FitWindowSpec wide{.mode = FitWindowMode::Top, .width = 50.0};
    CHECK(resolve_fit_window(tr, s, g, wide).lo == -0.5);
    FitWindowSpec expl{.mode = FitWindowMode::Explicit, .explicit_range = {3.0, 4.0}};
    CHECK(resolve_fit_window(tr, s, g, expl) == AmplitudeRange{3.0, 4.0});
}

TEST_CASE("lemma 1 monitor") {
    const RadialGrid g(1.0, 32);
    ProblemSpec s = spec_pq(1.0, 2.0, 1.0);
    const RadialField zero(g, 0.0);
    const Lemma1Minima m0 = monitor_lemma1(zero, compute_rhs(zero, s), 1e-6, s.q);
    CHECK(m0.min_ut == doctest::Approx(1.0));
    CHECK_FALSE(m0.flagged());

    RadialField bowl(g);
    for (std::size_t i = 0; i < g.size(); ++i) bowl[i] = -g.r(i) * g.r(i);
    const Lemma1Minima mb = monitor_lemma1(bowl, RadialField(g, 1.0), 1e-6);
    CHECK(mb.min_ur == doctest::Approx(-2.0));
    CHECK(mb.ur_flag);
    CHECK(mb.u_flag);

    s.u0 = build_quadratic_initial_data(-1.0, s, 10.0);
    const RadialField u0 = evaluate_initial_data(s.u0, g);
    const Lemma1Minima mq = monitor_lemma1(u0, compute_rhs(u0, s), 10.0 * g.h() * g.h(), s.q);
    CHECK(mq.min_ur >= 0.0);
    CHECK(mq.min_ut >= 0.0);
    CHECK_FALSE(mq.flagged());
}

TEST_CASE("J monitor for the lower estimate") {
    const RadialGrid g(1.0, 64);
    ProblemSpec s = spec_pq(1.0, 1.0, 1.0);
    s.u0 = build_quadratic_initial_data(-1.0, s, 10.0);
    const JMinimum j = monitor_J_theorem2(evaluate_initial_data(s.u0, g), 1e-9, s.q);
    CHECK(j.min == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
    CHECK_FALSE(j.flagged);

    const JMinimum jz = monitor_J_theorem2(RadialField(g, 0.0), 1e-9);
    CHECK(jz.min == doctest::Approx(-1.0));
    CHECK(jz.argmin == g.size() - 1);
    CHECK(jz.flagged);
}

TEST_CASE("J monitor for the upper estimate") {
    const RadialGrid g(1.0, 32);
    RadialField u(g);
    for (std::size_t i = 0; i < g.size(); ++i) u[i] = g.r(i) * g.r(i);
    MonitorParams zero_eps{.epsilon = 0.0, .tol_mono = 1e-9};
    RadialField ut(g, 0.5);
    const J3Minimum a = monitor_J_theorem3(u, ut, 1.0, zero_eps);
    CHECK(a.min == doctest::Approx(0.5));
    CHECK_FALSE(a.flagged);

    MonitorParams eps{.epsilon = 0.3, .tol_mono = 1e-9};
    const J3Minimum b = monitor_J_theorem3(u, RadialField(g, 0.0), 1.0, eps);
    CHECK(b.min < 0.0);
    CHECK(b.flagged);
}

TEST_CASE("run-wide monitors on a compatible fixture") {
    ProblemSpec s = spec_pq(1.0, 2.0, 1.0);
    s.u0 = build_quadratic_initial_data(-1.0, s, 10.0);
    const RadialGrid g(1.0, 64);
    const MonitorParams params = MonitorParams::from_spec(s, g);
    StepControl ctl;
    ctl.u_stop = 8.0;
    const Trace tr = run(s, g, ctl, params);
    const HypothesisReport hyp = check_hypotheses(s, g, 1.0, 10.0);
    const MonitorSummary m = summarize_monitors(tr, s, hyp, params);
    CHECK(m.lemma1.verdict == Verdict::Pass);
    CHECK(m.J2.verdict == Verdict::NotApplicable); // q = 2 fixture violates cond11
    CHECK(m.J3.applicable);
    CHECK(m.J3.verdict == Verdict::Pass);
    CHECK(m.J3.min_ratio >= params.epsilon);

    // Re-analysis is a pure function of the trace.
    const MonitorSummary again = summarize_monitors(tr, s, hyp, params);
    CHECK(again.J3.min_J == m.J3.min_J);
    CHECK(again.lemma1.min_ut == m.lemma1.min_ut);
}

TEST_CASE("envelope constants") {
    ProblemSpec s = spec_pq(1.0, 1.0, 0.01);
    s.u0 = {InitialFamily::Quadratic, 0.0, 0.0};
    const RadialGrid g(1.0, 32);
    const SupersolutionEnvelope env = envelope_from_spec(s, g, 1.0, 10.0);
    CHECK(env.A == 0.01);
    CHECK(env.B == doctest::Approx(0.09));
    CHECK(envelope_min_B(0.01, s) == doctest::Approx(0.09));

    s.lambda = 0.02;
    CHECK(code_of([&] { envelope_from_spec(s, g, 1.0, 10.0); }) == ErrorCode::Cond14Violated);
    s.lambda = 0.01;
    s.p = 2.0;
    CHECK(code_of([&] { envelope_from_spec(s, g, 1.0, 10.0); }) == ErrorCode::NotApplicable);
    s.p = 1.0;
    s.lambda = 0.0;
    CHECK(code_of([&] { envelope_from_spec(s, g, 1.0, 10.0); }) == ErrorCode::NotApplicable);
}

TEST_CASE("closed-form supersolution residual agrees with finite differences of z") {
    ProblemSpec s = spec_pq(1.0, 1.0, 0.01);
    for (int n : {1, 2, 3}) {
        s.n = n;
        const SupersolutionEnvelope env{.A = 0.011, .B = 0.2, .C_up = 10.0, .T_cmp = 1.0};
        for (double r : {0.2, 0.5, 0.8}) {
            const double t = 0.4, d = 1e-4;
            auto z = [&](double rr, double tt) { return env.z(rr, tt, s.R, env.T_cmp); };
            const double zt = (z(r, t + d) - z(r, t - d)) / (2.0 * d);
            const double zr = (z(r + d, t) - z(r - d, t)) / (2.0 * d);
            const double zrr = (z(r + d, t) - 2.0 * z(r, t) + z(r - d, t)) / (d * d);
            const double fd = zt - zrr - (n - 1) / r * zr - s.lambda * std::exp(z(r, t));
            CHECK(supersolution_residual(env, s, r, t) == doctest::Approx(fd).epsilon(1e-5));
        }
    }
}

TEST_CASE("property: admissible envelopes are supersolutions") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    ProblemSpec s = spec_pq(1.0, 1.0, 0.002); // both constraints satisfiable for n <= 3
    const RadialGrid g(1.0, 64);
    std::vector<double> ts;
    for (int k = 0; k < 50; ++k) ts.push_back(0.02 * k);
    for (int k = 0; k < 100; ++k) {
        s.n = 1 + k % 3;
        const double upper = std::min(1.0 / 10.0, 4.0 * (s.n + 1) / (1.0 + 4.0 * (s.n + 1)));
        const double A_max = upper / (4.0 * (s.n + 1) + 1.0);
        const double A = s.lambda + (A_max - s.lambda) * u(rng);
        const double B_min = envelope_min_B(A, s);
        const double B = B_min + (upper - B_min) * u(rng);
        REQUIRE(A >= s.lambda);
        REQUIRE(B >= B_min);
        const SupersolutionEnvelope env{.A = A, .B = B, .C_up = 10.0, .T_cmp = 1.0};
        CHECK(verify_supersolution_pde(env, s, g, ts) >= 0.0);
        CHECK(supersolution_residual(env, s, s.R, 0.5) >= 0.0);
    }
}

TEST_CASE("envelope with B = A is not a supersolution") {
    ProblemSpec s = spec_pq(1.0, 1.0, 0.01);
    const RadialGrid g(1.0, 64);
    const SupersolutionEnvelope env{.A = 0.01, .B = 0.01, .C_up = 10.0, .T_cmp = 1.0};
    const std::vector<double> ts{0.0, 0.5, 0.9};
    CHECK(verify_supersolution_pde(env, s, g, ts) < 0.0);
}

TEST_CASE("uniform-in-space growth fails the boundary blow-up check") {
    ProblemSpec s = spec_pq(1.0, 1.0, 0.01);
    s.u0 = {InitialFamily::Quadratic, 0.0, 0.0};
    const RadialGrid g(1.0, 32);
    const SupersolutionEnvelope env = envelope_from_spec(s, g, 1.0, 10.0);
    Trace tr;
    for (int k = 0; k < 50; ++k) {
        const double t = 1.0 - std::pow(0.8, k);
        const double M = -std::log(1.0 - t);
        tr.samples.push_back({.t = t, .M = M});
        tr.snapshots.push_back({t, RadialField(g, M)});
    }
    tr.stop = StopReason::ReachedUStop;
    BlowupTimeEstimate T;
    T.T_hat = 1.0;
    const BoundaryBlowupReport rep = check_boundary_blowup(tr, env, s, T, 0.9);
    CHECK(rep.verdict == Verdict::Fail);
    CHECK(rep.max_interior_excess > 1.0);

    s.q = 2.0;
    CHECK(check_boundary_blowup(tr, env, s, T, 0.9).verdict == Verdict::NotApplicable);
}
