#pragma once

#include <functional>
#include <span>
#include <vector>

namespace blowup::quad {

struct Rule {
    std::vector<double> nodes;   // on [-1, 1]
    std::vector<double> weights;
};

/// Gauss-Legendre rule with `order` points (Newton iteration on P_order).
/// Rules are cached per order; the returned reference stays valid.
const Rule& gauss_legendre(int order);

inline constexpr int kPanelOrder = 8;

using Integrand = std::function<double(double)>;

/// Composite Gauss-Legendre over [a, b] with panels of kPanelOrder points.
double composite(const Integrand& f, double a, double b, int total_nodes);

/// Composite rule with breakpoints at `center` and at center ± width 2^k, so a
/// kernel peaked at `center` with scale `width` is resolved at any scale.
/// Remaining node budget is spread evenly over the graded panels.
double graded(const Integrand& f, double a, double b, double center, double width,
              int total_nodes);

/// Same breakpoints as `graded`, exposed for callers that integrate several functions.
std::vector<double> graded_breakpoints(double a, double b, double center, double width);

} // namespace blowup::quad
