#pragma once

// Comparison function for boundary-only blow-up with p = q = 1:
//
//   v(r) = A (R^2 - r^2)^2,   z(r, t) = -log(v(r) + B (T - t)),
//
// a supersolution of z_t - Δz - λ e^z >= 0 when A >= λ and B >= A[4R^2(n+1) + 1].

#include "blowup/analyze.hpp"
#include "blowup/grid.hpp"
#include "blowup/integrate.hpp"
#include "blowup/model.hpp"

#include <span>

namespace blowup {

struct SupersolutionEnvelope {
    double A = 0.0;
    double B = 0.0;
    double C_up = 0.0;
    double T_cmp = 0.0;

    double v(double r, double R) const noexcept;
    /// z(r, t) for blow-up time T; +inf where v + B(T - t) <= 0.
    double z(double r, double t, double R, double T) const noexcept;
    /// Time-independent interior bound -log(A (R^2 - r^2)^2).
    double interior_bound(double r, double R) const noexcept;

    bool operator==(const SupersolutionEnvelope&) const = default;
};

/// B constraint from the PDE inequality: B >= A [4R^2(n+1) + 1].
double envelope_min_B(double A, const ProblemSpec& spec);

/// A = λ, B = A[4R^2(n+1) + 1]. Throws NotApplicable (p != 1 or q != 1 or λ = 0)
/// or Cond14Violated.
SupersolutionEnvelope envelope_from_spec(const ProblemSpec& spec, const RadialGrid& grid,
                                         double T_cmp, double C_up);

/// z_t - Δz - λ e^z from the closed forms of z_t, z_r, z_rr, evaluated with the
/// envelope horizon T_cmp. Δz at r = 0 uses the n z_rr(0) limit.
double supersolution_residual(const SupersolutionEnvelope& env, const ProblemSpec& spec, double r,
                              double t);

/// Minimum residual over grid nodes × t_nodes (all t < T_cmp).
double verify_supersolution_pde(const SupersolutionEnvelope& env, const ProblemSpec& spec,
                                const RadialGrid& grid, std::span<const double> t_nodes);

inline constexpr double kComparisonTolerance = 0.1;

struct BoundaryBlowupReport {
    Verdict verdict = Verdict::NotApplicable;
    double max_envelope_excess = 0.0;   // max over snapshots/nodes of u - z
    double max_interior_excess = 0.0;   // max over r <= aR of u - interior bound
    double max_upper_excess = 0.0;      // max over samples of M - log(C/(T - t))
    bool reached_blowup = false;
    double tolerance = 0.0;             // tol_cmp (plus the estimator spread contribution)
    double T_used = 0.0;
};

/// Compares the trace against the envelope using T = T_hat - spread.
BoundaryBlowupReport check_boundary_blowup(const Trace& trace, const SupersolutionEnvelope& env,
                                           const ProblemSpec& spec,
                                           const BlowupTimeEstimate& estimate,
                                           double interior_fraction,
                                           double tol_cmp = kComparisonTolerance);

} // namespace blowup
