#include "blowup/error.hpp"
#include "blowup/model.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace blowup;

namespace {

ProblemSpec base_spec(double q) {
    ProblemSpec s;
    s.n = 1;
    s.R = 1.0;
    s.p = 1.0;
    s.q = q;
    s.lambda = 1.0;
    return s;
}

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected blowup::Error");
    return ErrorCode::ConfigError;
}

} // namespace

TEST_CASE("compatibility root matches independent high-precision root") {
    // Reference roots from 30-digit root finding on 2bR = exp(q(a + bR^2)).
    struct Case {
        double a, q, b_ref;
    };
    for (const Case c : {Case{-2.0, 1.0, 0.0727758326560353463},
                         Case{-1.0, 2.0, 0.0792971697815196811},
                         Case{-1.0, 1.0, 0.231960952986534435}}) {
        const ProblemSpec spec = base_spec(c.q);
        const InitialData d = build_quadratic_initial_data(c.a, spec, 10.0);
        CHECK(d.b == doctest::Approx(c.b_ref).epsilon(1e-11));
        const double flux = 2.0 * d.b * spec.R;
        CHECK(std::abs(flux - std::exp(c.q * d.value(spec.R))) < 1e-10 * std::max(1.0, flux));
    }
}

TEST_CASE("compatibility equation without root is reported") {
    // sup_b 2b e^{-b} = 2/e < 1 when a = 0, q = 1.
    CHECK(code_of([] { build_quadratic_initial_data(0.0, base_spec(1.0), 50.0); }) ==
          ErrorCode::NoCompatibleRoot);
    CHECK(code_of([] { build_quadratic_initial_data(-1.0, base_spec(1.0), -1.0); }) ==
          ErrorCode::InvalidSpec);
    ProblemSpec bad = base_spec(1.0);
    bad.R = 0.0;
    CHECK(code_of([&] { build_quadratic_initial_data(-1.0, bad, 1.0); }) == ErrorCode::InvalidSpec);
}

TEST_CASE("spec validation") {
    ProblemSpec s = base_spec(1.0);
    s.validate();
    s.lambda = 0.0;
    s.p = -3.0; // p is irrelevant without reaction
    s.validate();
    CHECK(s.alpha() == 1.0);
    s.lambda = 1.0;
    CHECK(code_of([&] { s.validate(); }) == ErrorCode::InvalidSpec);
    s.p = 3.0;
    CHECK(s.alpha() == 3.0);
    s.n = 0;
    CHECK(code_of([&] { s.validate(); }) == ErrorCode::InvalidSpec);
}

TEST_CASE("evaluate_initial_data") {
    const RadialGrid grid(1.0, 16);
    const RadialField zero = evaluate_initial_data({InitialFamily::Quadratic, 0.0, 0.0}, grid);
    for (double v : zero.values()) CHECK(v == 0.0);

    const RadialGrid half(1.0, 16);
    const RadialField f = evaluate_initial_data({InitialFamily::Quadratic, 1.0, 2.0}, half);
    CHECK(f[8] == 1.5); // r = 0.5

    const InitialData d = build_quadratic_initial_data(-2.0, base_spec(1.0), 10.0);
    const RadialField g = evaluate_initial_data(d, grid);
    CHECK(g[16] == doctest::Approx(-1.92722416734396465).epsilon(1e-11));
}

TEST_CASE("smallness condition arithmetic") {
    ProblemSpec s = base_spec(1.0);
    s.u0 = {InitialFamily::Quadratic, 0.0, 0.0}; // |u0|_inf = 0
    const RadialGrid grid(1.0, 32);

    s.lambda = 0.01;
    auto rep = check_hypotheses(s, grid, 1.0, 10.0);
    CHECK(rep.cond14.ok);
    CHECK(rep.cond14.lhs == doctest::Approx(0.09));
    CHECK(rep.cond14.rhs == doctest::Approx(0.1));

    s.lambda = 0.02;
    rep = check_hypotheses(s, grid, 1.0, 10.0);
    CHECK_FALSE(rep.cond14.ok);
    CHECK(rep.cond14.lhs == doctest::Approx(0.18));

    s.lambda = 0.0;
    rep = check_hypotheses(s, grid, 1.0, 10.0);
    CHECK(rep.cond14.ok);
    CHECK(rep.cond14.lhs == 0.0);

    // Horizon term wins when C is small: min{1, 8/(1 + 8*2)} = 8/17.
    const Cond14 c = evaluate_cond14(s, 0.0, 2.0, 1.0);
    CHECK(c.rhs == doctest::Approx(8.0 / 17.0));
}

TEST_CASE("hypotheses of the compatible quadratic family") {
    ProblemSpec s = base_spec(2.0);
    s.u0 = build_quadratic_initial_data(-1.0, s, 10.0);
    const RadialGrid grid(1.0, 64);
    const HypothesisReport rep = check_hypotheses(s, grid, 1.0, 10.0);
    CHECK(rep.compat.ok);
    CHECK(rep.subsolution.ok);
    CHECK(rep.monotone_ok);
    CHECK(rep.cond12.ok);
    CHECK(rep.cond12.value == doctest::Approx(2.0 * s.u0.b + std::exp(s.u0.a)));
    // q = 2 with u0(R) < 0: e^{u0(R)} > e^{2 u0(R)} = 2bR, so J < 0 at r = R.
    CHECK_FALSE(rep.cond11.ok);

    CHECK(check_hypotheses(s, grid, 1.0, 10.0) == rep);

    CHECK(code_of([&] { check_hypotheses(s, grid, 0.0, 10.0); }) == ErrorCode::InvalidSpec);
    CHECK(code_of([&] { check_hypotheses(s, grid, 1.0, -1.0); }) == ErrorCode::InvalidSpec);
}

TEST_CASE("property: q = 1 family meets cond11 with equality at r = R") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> a_dist(-4.0, -1.2);
    std::uniform_real_distribution<double> R_dist(0.5, 2.0);
    for (int k = 0; k < 50; ++k) {
        ProblemSpec s = base_spec(1.0);
        s.R = R_dist(rng);
        InitialData d;
        try {
            d = build_quadratic_initial_data(a_dist(rng), s, 20.0);
        } catch (const Error&) {
            continue;
        }
        s.u0 = d;
        const RadialGrid grid(s.R, 128);
        const HypothesisReport rep = check_hypotheses(s, grid, 1.0, 10.0);
        CHECK(rep.cond11.ok);
        const double at_R = d.derivative(s.R) - std::exp(d.value(s.R));
        CHECK(std::abs(at_R) < 1e-9);
        CHECK(rep.cond11.value == doctest::Approx(at_R).epsilon(1e-6).scale(1.0));
    }
}

TEST_CASE("property: q >= 1 with u0(R) >= 0 satisfies cond11") {
    // Pick s = u0(R) >= 0 inside the range where b = e^{qs}/(2R) is the smallest
    // root (2bR - e^{q u0(R)} is concave in b): e^{qs} <= 2/(qR).
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int tested = 0;
    for (int k = 0; k < 200; ++k) {
        ProblemSpec s = base_spec(1.0 + unit(rng));
        s.R = 0.2 + (2.0 / s.q - 0.2) * unit(rng);
        const double s_max = std::log(2.0 / (s.q * s.R)) / s.q;
        const double uR = 0.95 * s_max * unit(rng);
        const double b = std::exp(s.q * uR) / (2.0 * s.R);
        s.u0 = build_quadratic_initial_data(uR - b * s.R * s.R, s, 50.0);
        if (s.u0.value(s.R) < 0.0) continue;
        ++tested;
        const RadialGrid grid(s.R, 64);
        const HypothesisReport rep = check_hypotheses(s, grid, 1.0, 10.0);
        CHECK(rep.compat.ok);
        CHECK(rep.cond11.ok);
    }
    CHECK(tested > 150);
}
