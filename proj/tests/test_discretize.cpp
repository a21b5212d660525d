#include "blowup/error.hpp"
#include "blowup/operators.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace blowup;

namespace {

RadialField sample(const RadialGrid& g, auto&& f) {
    RadialField u(g);
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = f(g.r(i));
    return u;
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

TEST_CASE("grid basics") {
    const RadialGrid g(2.0, 16);
    CHECK(g.size() == 17);
    CHECK(g.h() == 0.125);
    CHECK(g.r(16) == 2.0);
    CHECK(code_of([] { RadialGrid(1.0, 8); }) == ErrorCode::InvalidSpec);
    CHECK(code_of([] { RadialGrid(-1.0, 32); }) == ErrorCode::InvalidSpec);
    CHECK(code_of([&] { RadialField(g, std::vector<double>(3)); }) == ErrorCode::InvalidSpec);

    const RadialField u = sample(g, [](double r) { return 3.0 * r; });
    CHECK(u.interpolate(0.3) == doctest::Approx(0.9));
    CHECK(u.interpolate(2.0) == 6.0);
    CHECK(code_of([&] { u.interpolate(2.1); }) == ErrorCode::DomainError);
}

TEST_CASE("laplacian is exact on quadratics for every dimension") {
    for (int n = 1; n <= 4; ++n) {
        const RadialGrid g(1.0, 32);
        const RadialField u = sample(g, [](double r) { return 0.7 - 1.5 * r * r; });
        const RadialField L = radial_laplacian(u, n);
        for (std::size_t i = 0; i < g.size() - 1; ++i)
            CHECK(L[i] == doctest::Approx(-3.0 * n).epsilon(1e-10));
        CHECK(L[g.size() - 1] == 0.0);
    }
}

TEST_CASE("boundary closure is exact when the quadratic satisfies the flux law") {
    // u = c + r^2 with e^{q(c + R^2)} = 2R.
    for (int n : {1, 2, 3}) {
        const double R = 1.3;
        const double q = 1.7;
        const double c = std::log(2.0 * R) / q - R * R;
        const RadialGrid g(R, 64);
        const RadialField u = sample(g, [&](double r) { return c + r * r; });
        const RadialField L = laplacian_with_flux(u, q, n);
        for (std::size_t i = 0; i < g.size(); ++i)
            CHECK(L[i] == doctest::Approx(2.0 * n).epsilon(1e-9));
    }
}

TEST_CASE("r^4 in two dimensions: truncation error is exactly 6 h^2") {
    // Δ r^4 = 16 r^2, and the centered stencil adds 2h^2 + 4h^2.
    for (int N : {32, 64, 128}) {
        const RadialGrid g(1.0, N);
        const RadialField u = sample(g, [](double r) { return r * r * r * r; });
        const RadialField L = radial_laplacian(u, 2);
        const std::size_t mid = static_cast<std::size_t>(N / 2);
        const double h = g.h();
        CHECK(g.r(mid) == 0.5);
        CHECK(L[mid] - 4.0 == doctest::Approx(6.0 * h * h).epsilon(1e-6));
    }
}

TEST_CASE("laplacian converges at second order on a smooth radial function") {
    auto max_err = [](int N) {
        const RadialGrid g(1.0, N);
        const int n = 3;
        // u = cos(r), Δu = -cos r - (n-1) sin r / r.
        const RadialField u = sample(g, [](double r) { return std::cos(r); });
        const RadialField L = radial_laplacian(u, n);
        double err = 0.0;
        for (std::size_t i = 0; i + 1 < g.size(); ++i) {
            const double r = g.r(i);
            const double exact = i == 0 ? -3.0 : -std::cos(r) - (n - 1) * std::sin(r) / r;
            err = std::max(err, std::abs(L[i] - exact));
        }
        return err;
    };
    const double order = std::log2(max_err(64) / max_err(128));
    CHECK(order >= 1.9);
}

TEST_CASE("ghost value reproduces the flux through the centered difference") {
    const RadialGrid g(1.0, 40);
    const RadialField u = sample(g, [](double r) { return -0.5 + 0.2 * r * r * r; });
    for (double q : {0.5, 1.0, 2.0}) {
        const double ghost = ghost_value(u.values(), g.h(), q);
        const double centered = (ghost - u[g.size() - 2]) / (2.0 * g.h());
        CHECK(centered == doctest::Approx(std::exp(q * u.back())).epsilon(1e-12));
    }
}

TEST_CASE("flux closure overflows loudly") {
    const RadialGrid g(1.0, 16);
    RadialField u(g, 0.0);
    u[16] = 800.0;
    CHECK(code_of([&] { apply_flux_closure(u, 1.0, 1); }) == ErrorCode::Overflow);
    CHECK(code_of([] { checked_exp(710.0, "x"); }) == ErrorCode::Overflow);
    CHECK(checked_exp(1.0, "x") == std::exp(1.0));
}

TEST_CASE("non-finite input is rejected") {
    const RadialGrid g(1.0, 16);
    RadialField u(g, 0.0);
    u[3] = std::numeric_limits<double>::quiet_NaN();
    CHECK(code_of([&] { radial_laplacian(u, 1); }) == ErrorCode::NonFiniteInput);
    CHECK(code_of([&] { apply_flux_closure(u, 1.0, 1); }) == ErrorCode::NonFiniteInput);
    CHECK(code_of([&] { derivative_field(u); }) == ErrorCode::NonFiniteInput);
    u[3] = std::numeric_limits<double>::infinity();
    CHECK_FALSE(u.all_finite());
}

TEST_CASE("derivative field") {
    const RadialGrid g(2.0, 32);
    const RadialField u = sample(g, [](double r) { return 1.0 + r * r; });
    const RadialField du = derivative_field(u);
    for (std::size_t i = 0; i < g.size(); ++i)
        CHECK(du[i] == doctest::Approx(2.0 * g.r(i)).epsilon(1e-10).scale(1.0));

    const RadialField dq = derivative_field(u, 0.5);
    CHECK(dq.back() == doctest::Approx(std::exp(0.5 * 5.0)));
    CHECK(dq[5] == du[5]);
}
