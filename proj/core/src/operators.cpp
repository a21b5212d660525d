#include "blowup/operators.hpp"

#include "blowup/error.hpp"

#include <cmath>
#include <string>

namespace blowup {

double checked_exp(double x, const char* what) {
    if (!(x <= kMaxExpArgument))
        throw Error(ErrorCode::Overflow,
                    std::string(what) + ": exp(" + std::to_string(x) + ") not representable");
    return std::exp(x);
}

double ghost_value(std::span<const double> u, double h, double q) {
    const std::size_t last = u.size() - 1;
    return u[last - 1] + 2.0 * h * checked_exp(q * u[last], "flux closure");
}

void radial_laplacian(std::span<const double> u, const RadialGrid& grid, int n,
                      std::span<double> out) {
    const std::size_t last = u.size() - 1;
    const double h = grid.h();
    const double inv_h2 = 1.0 / (h * h);
    const double inv_2h = 0.5 / h;
    const double nm1 = static_cast<double>(n - 1);

    out[0] = 2.0 * n * (u[1] - u[0]) * inv_h2;
    for (std::size_t i = 1; i < last; ++i) {
        const double second = (u[i + 1] - 2.0 * u[i] + u[i - 1]) * inv_h2;
        const double first = (u[i + 1] - u[i - 1]) * inv_2h;
        out[i] = second + nm1 / grid.r(i) * first;
    }
}

RadialField radial_laplacian(const RadialField& u, int n) {
    u.require_finite("radial_laplacian");
    RadialField out(u.grid());
    radial_laplacian(u.values(), u.grid(), n, out.values());
    return out;
}

double apply_flux_closure(std::span<const double> u, const RadialGrid& grid, double q, int n) {
    const std::size_t last = u.size() - 1;
    const double h = grid.h();
    const double ghost = ghost_value(u, h, q);
    const double second = (ghost - 2.0 * u[last] + u[last - 1]) / (h * h);
    const double first = (ghost - u[last - 1]) / (2.0 * h);
    return second + static_cast<double>(n - 1) / grid.R() * first;
}

double apply_flux_closure(const RadialField& u, double q, int n) {
    u.require_finite("apply_flux_closure");
    return apply_flux_closure(u.values(), u.grid(), q, n);
}

RadialField laplacian_with_flux(const RadialField& u, double q, int n) {
    RadialField out = radial_laplacian(u, n);
    out[out.size() - 1] = apply_flux_closure(u.values(), u.grid(), q, n);
    return out;
}

void derivative_field(std::span<const double> u, const RadialGrid& grid,
                      std::optional<double> q, std::span<double> out) {
    const std::size_t last = u.size() - 1;
    const double inv_2h = 0.5 / grid.h();
    out[0] = (-3.0 * u[0] + 4.0 * u[1] - u[2]) * inv_2h;
    for (std::size_t i = 1; i < last; ++i)
        out[i] = (u[i + 1] - u[i - 1]) * inv_2h;
    if (q)
        out[last] = checked_exp(*q * u[last], "derivative_field");
    else
        out[last] = (3.0 * u[last] - 4.0 * u[last - 1] + u[last - 2]) * inv_2h;
}

RadialField derivative_field(const RadialField& u, std::optional<double> q) {
    u.require_finite("derivative_field");
    RadialField out(u.grid());
    derivative_field(u.values(), u.grid(), q, out.values());
    return out;
}

} // namespace blowup
