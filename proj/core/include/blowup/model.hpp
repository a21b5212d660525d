#pragma once

// Continuous problem  u_t = Δu + λ e^{p u}  in B_R,  du/dη = e^{q u}  on ∂B_R,
// radial initial data, and the hypothesis checks imposed on (u0, λ, p, q).

#include "blowup/grid.hpp"

#include <string_view>

namespace blowup {

enum class InitialFamily { Quadratic };

std::string_view to_string(InitialFamily family);
InitialFamily initial_family_from_string(std::string_view name);

/// u0(r) = a + b r^2.
struct InitialData {
    InitialFamily family = InitialFamily::Quadratic;
    double a = 0.0;
    double b = 0.0;

    double value(double r) const noexcept { return a + b * r * r; }
    double derivative(double r) const noexcept { return 2.0 * b * r; }
    double laplacian(int n) const noexcept { return 2.0 * b * n; }
};

struct ProblemSpec {
    int n = 1;
    double R = 1.0;
    double p = 1.0;
    double q = 1.0;
    double lambda = 1.0;
    InitialData u0{};

    /// Dominance exponent max{p, q}. With λ = 0 the reaction term is absent
    /// and only q matters.
    double alpha() const noexcept;

    /// Throws InvalidSpec.
    void validate() const;
};

/// Smallest root b in (0, b_max] of 2bR = exp(q (a + b R^2)), by bisection.
/// `spec.u0` is ignored. Throws NoCompatibleRoot or InvalidSpec.
InitialData build_quadratic_initial_data(double a, const ProblemSpec& spec, double b_max);

RadialField evaluate_initial_data(const InitialData& data, const RadialGrid& grid);

inline constexpr double kConditionSlack = 1e-9;

struct ConditionCheck {
    bool ok = false;
    double value = 0.0;

    bool operator==(const ConditionCheck&) const = default;
};

/// Smallness condition on λ required for the boundary-only blow-up envelope:
///   λ [4R^2(n+1) + 1] <= min{ 1/C, 4(n+1)/(R^2 + 4(n+1)T) e^{-|u0|_inf} }.
struct Cond14 {
    bool ok = false;
    double lhs = 0.0;
    double rhs = 0.0;
    double horizon = 0.0;
    double upper_constant = 0.0;
    double sup_norm = 0.0;

    bool operator==(const Cond14&) const = default;
};

Cond14 evaluate_cond14(const ProblemSpec& spec, double sup_norm, double horizon,
                       double upper_constant);

struct HypothesisReport {
    ConditionCheck compat;      // residual |2bR - e^{q u0(R)}|
    ConditionCheck subsolution; // min Δu0 + λ e^{p u0}
    bool monotone_ok = false;   // u0_r >= 0
    ConditionCheck cond11;      // min u0_r - (r/R) e^{u0}
    ConditionCheck cond12;      // a = min Δu0 + λ e^{p u0}, must be > 0
    Cond14 cond14;

    bool operator==(const HypothesisReport&) const = default;
};

HypothesisReport check_hypotheses(const ProblemSpec& spec, const RadialGrid& grid, double horizon,
                                  double upper_constant);

} // namespace blowup
