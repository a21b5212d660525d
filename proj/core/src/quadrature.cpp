#include "blowup/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace blowup::quad {

namespace {

Rule make_gauss_legendre(int order) {
    Rule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    for (int i = 0; i < order; ++i) {
        // Chebyshev-like initial guess, then Newton on the Legendre recurrence.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= order; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = order * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        rule.nodes[i] = x;
        rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

double panel(const Integrand& f, const Rule& rule, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return sum * half;
}

double integrate_breakpoints(const Integrand& f, const std::vector<double>& cuts, int total_nodes) {
    const Rule& rule = gauss_legendre(kPanelOrder);
    const int panels = static_cast<int>(cuts.size()) - 1;
    const int sub = std::max(1, total_nodes / (kPanelOrder * std::max(panels, 1)));
    double sum = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double a = cuts[p];
        const double w = (cuts[p + 1] - a) / sub;
        for (int s = 0; s < sub; ++s) sum += panel(f, rule, a + s * w, a + (s + 1) * w);
    }
    return sum;
}

} // namespace

const Rule& gauss_legendre(int order) {
    static std::mutex mutex;
    static std::map<int, Rule> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, make_gauss_legendre(order)).first;
    return it->second;
}

double composite(const Integrand& f, double a, double b, int total_nodes) {
    return integrate_breakpoints(f, {a, b}, total_nodes);
}

std::vector<double> graded_breakpoints(double a, double b, double center, double width) {
    std::vector<double> cuts{a, b};
    if (!(width > 0.0) || !(b > a)) return cuts;
    center = std::clamp(center, a, b);
    if (center > a && center < b) cuts.push_back(center);
    for (double d = width / 8.0; d < (b - a); d *= 2.0) {
        if (center - d > a) cuts.push_back(center - d);
        if (center + d < b) cuts.push_back(center + d);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    return cuts;
}

double graded(const Integrand& f, double a, double b, double center, double width,
              int total_nodes) {
    return integrate_breakpoints(f, graded_breakpoints(a, b, center, width), total_nodes);
}

} // namespace blowup::quad
