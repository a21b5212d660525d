#pragma once

// Second-order finite differences for radial functions on a ball in R^n.
//
// Interior:  (u[i+1] - 2u[i] + u[i-1])/h^2 + ((n-1)/r_i) (u[i+1] - u[i-1])/(2h)
// Center:    n * u_rr(0) ~= 2n (u[1] - u[0]) / h^2
// Boundary:  same interior stencil with the ghost value
//            u[N+1] = u[N-1] + 2h exp(q u[N]), so the centered normal derivative
//            equals exp(q u[N]) exactly.

#include "blowup/grid.hpp"

#include <optional>
#include <span>

namespace blowup {

/// Largest exponent x for which exp(x) is finite.
inline constexpr double kMaxExpArgument = 709.78;

/// exp(x), throwing Overflow instead of returning +inf.
double checked_exp(double x, const char* what);

/// Ghost value beyond r = R for the flux condition du/dr = exp(q u).
double ghost_value(std::span<const double> u, double h, double q);

/// Laplacian at nodes 0..N-1 written into `out`; out[N] is left untouched.
void radial_laplacian(std::span<const double> u, const RadialGrid& grid, int n,
                      std::span<double> out);

/// Radial Laplacian at nodes 0..N-1. Node N is set to 0 and must be filled by
/// apply_flux_closure when a boundary value is needed.
RadialField radial_laplacian(const RadialField& u, int n);

/// Laplacian at r = R using the ghost-node closure.
double apply_flux_closure(std::span<const double> u, const RadialGrid& grid, double q, int n);
double apply_flux_closure(const RadialField& u, double q, int n);

/// Full Laplacian including the closure at node N.
RadialField laplacian_with_flux(const RadialField& u, double q, int n);

/// Discrete u_r: centered in the interior, one-sided second order at r = 0 and,
/// without q, at r = R. With q the boundary value is the flux exp(q u[N]).
void derivative_field(std::span<const double> u, const RadialGrid& grid,
                      std::optional<double> q, std::span<double> out);
RadialField derivative_field(const RadialField& u, std::optional<double> q = std::nullopt);

} // namespace blowup
