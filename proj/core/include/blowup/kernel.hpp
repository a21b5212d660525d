#pragma once

// Heat kernel Γ(x, t) = (4πt)^{-n/2} exp(-|x|^2 / 4t) and the ball / sphere
// potentials of the integral representation
//
//   u(x,t) = ∫_B Γ(x-y, t-z) u(y,z) dy + λ ∫_z^t ∫_B Γ e^{p u} dy dτ
//          + ∫_z^t ∫_S Γ e^{q u} ds dτ - ∫_z^t ∫_S u ∂Γ/∂η_y ds dτ,
//
// used as an independent short-time check on the finite-difference solution.

#include "blowup/grid.hpp"
#include "blowup/integrate.hpp"
#include "blowup/model.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace blowup {

struct PotentialQuadrature {
    int angular_nodes = 256;
    int time_nodes = 128;
    int radial_nodes = 256;

    void validate() const;
};

/// Surface area of the unit sphere S^{m-1} in R^m.
double unit_sphere_area(int m);

double gamma(double dist, double t, int n);

/// ∫_{S_R} Γ(x - y, t) ds_y for |x| = r.
double sphere_potential(double r, double R, double t, int n, const PotentialQuadrature& quad = {});

/// ∫_{S_R} ∂Γ/∂η_y (x - y, t) ds_y for |x| = r (outward normal at y).
double sphere_double_layer(double r, double R, double t, int n,
                           const PotentialQuadrature& quad = {});

/// ∫_{B_R} Γ(x - y, t) dy for |x| = r.
double ball_potential(double r, double R, double t, int n, const PotentialQuadrature& quad = {});

/// ∫_{B_R} Γ(x - y, t) f(|y|) dy for a radial density given on a grid
/// (piecewise-linear interpolation between nodes).
double ball_potential(double r, const RadialField& density, double t, int n,
                      const PotentialQuadrature& quad = {});

struct IdentityOptions {
    bool include_flux = true;
    /// Largest snapshot gap tolerated inside [z, t], as a fraction of t - z.
    double max_gap_fraction = 1.0 / 50.0;
};

struct IdentityResidual {
    double max_residual = 0.0;
    double max_abs_u = 0.0;
    std::vector<double> residuals; // per x node
};

/// Residual of the integral representation between snapshots z_index < t_index.
/// Boundary values u(R, τ) come from the per-step samples, interior values from
/// snapshots interpolated linearly in time.
IdentityResidual integral_identity_residual(const Trace& trace, const ProblemSpec& spec,
                                            std::size_t z_index, std::size_t t_index,
                                            std::span<const double> x_nodes,
                                            const PotentialQuadrature& quad = {},
                                            const IdentityOptions& options = {});

} // namespace blowup
