#include "blowup_lab/verify.hpp"

#include "blowup/analyze.hpp"
#include "blowup/error.hpp"
#include "blowup/kernel.hpp"
#include "blowup/model.hpp"
#include "blowup/operators.hpp"
#include "blowup/quadrature.hpp"
#include "blowup/supersolution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <random>

namespace blowup::lab {

namespace {

CheckResult at_most(std::string name, double value, double bound) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "<= %.3g", bound);
    return {std::move(name), value, buf, value <= bound};
}

CheckResult at_least(std::string name, double value, double bound) {
    char buf[64];
    std::snprintf(buf, sizeof buf, ">= %.3g", bound);
    return {std::move(name), value, buf, value >= bound};
}

CheckResult below(std::string name, double value, double bound) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "< %.3g", bound);
    return {std::move(name), value, buf, value < bound};
}

std::vector<CheckResult> kernel_suite() {
    constexpr double pi = std::numbers::pi;
    std::vector<CheckResult> out;
    double mass = 0.0;
    for (int n = 1; n <= 3; ++n)
        for (double t : {1e-4, 1e-2, 1.0})
            mass = std::max(mass, std::abs(ball_potential(0.0, 20.0 * std::sqrt(t), t, n) - 1.0));
    out.push_back(below("|int Gamma - 1| (R = 20 sqrt t)", mass, 1e-8));

    double sphere = 0.0;
    for (double r : {0.1, 0.5, 0.9})
        for (double t : {1e-3, 1e-2, 0.1, 1.0}) {
            const double exact = std::pow(4.0 * pi * t, -1.5) * (4.0 * pi * t / r) *
                                 (std::exp(-(1 - r) * (1 - r) / (4 * t)) -
                                  std::exp(-(1 + r) * (1 + r) / (4 * t)));
            sphere = std::max(sphere, std::abs(sphere_potential(r, 1.0, t, 3) - exact) /
                                          std::max(1.0, exact));
        }
    out.push_back(below("sphere potential n=3 vs closed form", sphere, 1e-8));

    double bound = 0.0;
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 50; ++k) {
        const double R = 0.2 + 2.0 * u(rng);
        const double t = std::pow(10.0, -4.0 + 5.0 * u(rng));
        bound = std::max(bound, ball_potential(R * u(rng), R, t, 1 + k % 3));
    }
    out.push_back(at_most("max ball potential", bound, 1.0 + 1e-12));

    double green = 0.0;
    for (int n = 1; n <= 3; ++n) {
        const double layer = quad::graded(
            [&](double s) { return sphere_double_layer(0.5, 1.0, s, n); }, 1e-12, 0.1, 1e-12, 1e-3, 256);
        green = std::max(green, std::abs(ball_potential(0.5, 1.0, 0.1, n) - layer - 1.0));
    }
    out.push_back(below("Green identity for constants", green, 1e-8));
    return out;
}

std::vector<CheckResult> operators_suite() {
    std::vector<CheckResult> out;
    double exact = 0.0;
    for (int n = 1; n <= 3; ++n) {
        const RadialGrid g(1.0, 32);
        RadialField u(g);
        for (std::size_t i = 0; i < g.size(); ++i) u[i] = g.r(i) * g.r(i);
        const RadialField L = radial_laplacian(u, n);
        for (std::size_t i = 0; i + 1 < g.size(); ++i) exact = std::max(exact, std::abs(L[i] - 2.0 * n));
    }
    out.push_back(below("Laplacian of r^2 - 2n", exact, 1e-9));

    auto error_at = [](int N) {
        const RadialGrid g(1.0, N);
        RadialField u(g);
        for (std::size_t i = 0; i < g.size(); ++i) u[i] = std::cos(g.r(i));
        const RadialField L = radial_laplacian(u, 3);
        double err = 0.0;
        for (std::size_t i = 0; i + 1 < g.size(); ++i) {
            const double r = g.r(i);
            const double ref = i == 0 ? -3.0 : -std::cos(r) - 2.0 * std::sin(r) / r;
            err = std::max(err, std::abs(L[i] - ref));
        }
        return err;
    };
    double order = 1e9;
    for (int N : {32, 64, 128}) order = std::min(order, std::log2(error_at(N) / error_at(2 * N)));
    out.push_back(at_least("Laplacian observed order (3 refinements)", order, 1.9));

    double flux = 0.0;
    const RadialGrid g(1.0, 40);
    RadialField u(g);
    for (std::size_t i = 0; i < g.size(); ++i) u[i] = -0.5 + 0.2 * std::pow(g.r(i), 3);
    for (double q : {0.5, 1.0, 2.0}) {
        const double ghost = ghost_value(u.values(), g.h(), q);
        flux = std::max(flux, std::abs((ghost - u[g.size() - 2]) / (2.0 * g.h()) - std::exp(q * u.back())));
    }
    out.push_back(below("ghost closure flux identity", flux, 1e-12));
    return out;
}

std::vector<CheckResult> conditions_suite() {
    std::vector<CheckResult> out;
    ProblemSpec s;
    s.n = 1;
    s.R = 1.0;
    s.p = 1.0;
    s.q = 1.0;
    s.u0 = {InitialFamily::Quadratic, 0.0, 0.0};
    s.lambda = 0.01;
    const Cond14 a = evaluate_cond14(s, 0.0, 1.0, 10.0);
    out.push_back({"cond14 lambda=0.01: lhs 0.09 <= 0.1", a.lhs, "holds", a.ok});
    s.lambda = 0.02;
    const Cond14 b = evaluate_cond14(s, 0.0, 1.0, 10.0);
    out.push_back({"cond14 lambda=0.02: lhs 0.18 > 0.1", b.lhs, "violated", !b.ok});
    s.lambda = 0.0;
    const Cond14 c = evaluate_cond14(s, 0.0, 1.0, 10.0);
    out.push_back({"cond14 lambda=0", c.lhs, "holds", c.ok});

    s.lambda = 1.0;
    s.q = 2.0;
    const InitialData d = build_quadratic_initial_data(-1.0, s, 10.0);
    const double residual = std::abs(2.0 * d.b - std::exp(2.0 * d.value(1.0)));
    out.push_back(below("compatibility residual (a=-1, q=2)", residual, 1e-10));
    bool no_root = false;
    try {
        s.q = 1.0;
        build_quadratic_initial_data(0.0, s, 50.0);
    } catch (const Error& e) {
        no_root = e.code() == ErrorCode::NoCompatibleRoot;
    }
    out.push_back({"no compatible root for a=0, q=1", 0.0, "NoCompatibleRoot", no_root});
    return out;
}

std::vector<CheckResult> supersolution_suite() {
    std::vector<CheckResult> out;
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    ProblemSpec s;
    s.p = s.q = 1.0;
    s.R = 1.0;
    s.lambda = 0.002;
    const RadialGrid g(1.0, 64);
    std::vector<double> ts;
    for (int k = 0; k < 50; ++k) ts.push_back(0.02 * k);
    double worst = 1e300;
    for (int k = 0; k < 100; ++k) {
        s.n = 1 + k % 3;
        const double upper = std::min(0.1, 4.0 * (s.n + 1) / (1.0 + 4.0 * (s.n + 1)));
        const double A_max = upper / (4.0 * (s.n + 1) + 1.0);
        const double A = s.lambda + (A_max - s.lambda) * u(rng);
        const double B_min = envelope_min_B(A, s);
        const double B = B_min + (upper - B_min) * u(rng);
        worst = std::min(worst, verify_supersolution_pde({A, B, 10.0, 1.0}, s, g, ts));
    }
    out.push_back(at_least("min residual over 100 admissible (A, B)", worst, 0.0));

    s.n = 1;
    s.lambda = 0.01;
    const double probe = verify_supersolution_pde({0.01, 0.01, 10.0, 1.0}, s, g, ts);
    out.push_back(below("min residual with B = A (below the constraint)", probe, 0.0));
    return out;
}

std::vector<CheckResult> estimator_suite() {
    std::vector<CheckResult> out;
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
        const double beta = 0.5 + 3.5 * u(rng);
        const double kappa = std::exp(-2.0 + 4.0 * u(rng));
        const double T = 0.1 + 5.0 * u(rng);
        Trace tr;
        double gap = T;
        for (int i = 0; i < 600; ++i, gap *= 0.96)
            tr.samples.push_back({.t = T - gap, .M = -std::log(kappa * gap) / beta});
        worst = std::max(worst, std::abs(estimate_blowup_time(tr, beta).T_hat - T) / T);
    }
    out.push_back(below("relative T_hat error on log profiles", worst, 1e-6));
    return out;
}

} // namespace

std::vector<std::string_view> suite_names() {
    return {"kernel", "operators", "conditions", "supersolution", "estimator"};
}

std::vector<CheckResult> run_suite(std::string_view suite) {
    if (suite == "kernel") return kernel_suite();
    if (suite == "operators") return operators_suite();
    if (suite == "conditions") return conditions_suite();
    if (suite == "supersolution") return supersolution_suite();
    if (suite == "estimator") return estimator_suite();
    throw Error(ErrorCode::UnknownSuite, "unknown suite '" + std::string(suite) + "'");
}

void print_checks(std::ostream& out, std::string_view suite, const std::vector<CheckResult>& checks) {
    for (const CheckResult& c : checks) {
        char buf[512];
        std::snprintf(buf, sizeof buf, "%-5s %-14s %-48s %-14.6g %s\n", c.pass ? "PASS" : "FAIL",
                      std::string(suite).c_str(), c.name.c_str(), c.value, c.expectation.c_str());
        out << buf;
    }
}

} // namespace blowup::lab
