#include "blowup/kernel.hpp"

#include "blowup/error.hpp"
#include "blowup/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace blowup {

namespace {

void require_positive_time(double t) {
    if (!(t > 0.0))
        throw Error(ErrorCode::NonpositiveTime, "kernel time must be positive, got " +
                                                    std::to_string(t));
}

void require_inside(double r, double R) {
    if (r < 0.0 || r > R)
        throw Error(ErrorCode::DomainError, "field radius " + std::to_string(r) +
                                                " outside [0, " + std::to_string(R) + "]");
}

double normalization(double t, int n) {
    return std::pow(4.0 * std::numbers::pi * t, -0.5 * n);
}

// Angular integral over S_R of g(|x-y|^2, (x-y)·η_y) for |x| = r, n >= 2.
template <typename G>
double sphere_angular(double r, double R, double t, int n, int nodes, G&& g) {
    const double measure = std::pow(R, n - 1) * unit_sphere_area(n - 1);
    const double dr2 = (R - r) * (R - r);
    auto integrand = [&](double theta) {
        const double s = std::sin(0.5 * theta);
        const double dist2 = dr2 + 4.0 * r * R * s * s;
        const double normal = r * std::cos(theta) - R;
        const double jac = n == 2 ? 1.0 : std::pow(std::sin(theta), n - 2);
        return g(dist2, normal) * jac;
    };
    const double rR = r * R;
    if (rR <= 0.0) return measure * quad::composite(integrand, 0.0, std::numbers::pi, nodes);
    const double width = std::min(std::numbers::pi, 2.0 * std::sqrt(t / rR));
    return measure * quad::graded(integrand, 0.0, std::numbers::pi, 0.0, width, nodes);
}

double shell_potential(double r, double rho, double t, int n, int nodes) {
    if (rho <= 0.0) return 0.0;
    const double c = normalization(t, n);
    return sphere_angular(r, rho, t, n, nodes,
                          [&](double dist2, double) { return c * std::exp(-dist2 / (4.0 * t)); });
}

} // namespace

void PotentialQuadrature::validate() const {
    if (angular_nodes < 16 || time_nodes < 16 || radial_nodes < 16)
        throw Error(ErrorCode::InvalidSpec, "quadrature node counts must be >= 16");
}

double unit_sphere_area(int m) {
    return 2.0 * std::pow(std::numbers::pi, 0.5 * m) / std::tgamma(0.5 * m);
}

double gamma(double dist, double t, int n) {
    require_positive_time(t);
    return normalization(t, n) * std::exp(-dist * dist / (4.0 * t));
}

double sphere_potential(double r, double R, double t, int n, const PotentialQuadrature& quad) {
    require_positive_time(t);
    require_inside(r, R);
    if (n == 1) return gamma(R - r, t, 1) + gamma(R + r, t, 1);
    return shell_potential(r, R, t, n, quad.angular_nodes);
}

double sphere_double_layer(double r, double R, double t, int n, const PotentialQuadrature& quad) {
    require_positive_time(t);
    require_inside(r, R);
    // ∇_y Γ(x - y, t) = Γ (x - y) / (2t)
    if (n == 1)
        return (gamma(R - r, t, 1) * (r - R) + gamma(R + r, t, 1) * (-r - R)) / (2.0 * t);
    const double c = normalization(t, n);
    return sphere_angular(r, R, t, n, quad.angular_nodes, [&](double dist2, double normal) {
        return c * std::exp(-dist2 / (4.0 * t)) * normal / (2.0 * t);
    });
}

double ball_potential(double r, double R, double t, int n, const PotentialQuadrature& quad) {
    require_positive_time(t);
    require_inside(r, R);
    auto shell = [&](double rho) { return shell_potential(r, rho, t, n, quad.angular_nodes); };
    auto shell_n1 = [&](double rho) { return gamma(rho - r, t, 1) + gamma(rho + r, t, 1); };
    const double width = 2.0 * std::sqrt(t);
    if (n == 1) return quad::graded(shell_n1, 0.0, R, r, width, quad.radial_nodes);
    return quad::graded(shell, 0.0, R, r, width, quad.radial_nodes);
}

double ball_potential(double r, const RadialField& density, double t, int n,
                      const PotentialQuadrature& quad) {
    require_positive_time(t);
    const double R = density.grid().R();
    require_inside(r, R);
    auto integrand = [&](double rho) {
        const double f = density.interpolate(std::min(rho, R));
        if (n == 1) return f * (gamma(rho - r, t, 1) + gamma(rho + r, t, 1));
        return f * shell_potential(r, rho, t, n, quad.angular_nodes);
    };
    return quad::graded(integrand, 0.0, R, r, 2.0 * std::sqrt(t), quad.radial_nodes);
}

namespace {

// Linear-in-time access to the stored trace.
class TraceInterpolator {
public:
    TraceInterpolator(const Trace& trace, std::size_t first, std::size_t last)
        : trace_(trace), first_(first), last_(last) {}

    std::vector<double> field(double t) const {
        const auto& snaps = trace_.snapshots;
        std::size_t hi = first_ + 1;
        while (hi < last_ && snaps[hi].t < t) ++hi;
        const Snapshot& a = snaps[hi - 1];
        const Snapshot& b = snaps[hi];
        const double w = b.t > a.t ? std::clamp((t - a.t) / (b.t - a.t), 0.0, 1.0) : 1.0;
        std::vector<double> out(a.u.size());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = (1.0 - w) * a.u[i] + w * b.u[i];
        return out;
    }

    double boundary(double t) const {
        const auto& s = trace_.samples;
        auto it = std::lower_bound(s.begin(), s.end(), t,
                                   [](const TraceSample& x, double v) { return x.t < v; });
        if (it == s.begin()) return it->M;
        if (it == s.end()) return s.back().M;
        const TraceSample& b = *it;
        const TraceSample& a = *(it - 1);
        const double w = (t - a.t) / (b.t - a.t);
        return (1.0 - w) * a.M + w * b.M;
    }

private:
    const Trace& trace_;
    std::size_t first_;
    std::size_t last_;
};

} // namespace

IdentityResidual integral_identity_residual(const Trace& trace, const ProblemSpec& spec,
                                            std::size_t z_index, std::size_t t_index,
                                            std::span<const double> x_nodes,
                                            const PotentialQuadrature& quad,
                                            const IdentityOptions& options) {
    quad.validate();
    const auto& snaps = trace.snapshots;
    if (!(z_index < t_index) || t_index >= snaps.size())
        throw Error(ErrorCode::InsufficientSnapshots, "need snapshot indices z < t inside the trace");
    const double t0 = snaps[z_index].t;
    const double t1 = snaps[t_index].t;
    if (!(t0 > 0.0) || !(t1 > t0))
        throw Error(ErrorCode::InsufficientSnapshots, "need 0 < z < t");
    double max_gap = 0.0;
    for (std::size_t k = z_index + 1; k <= t_index; ++k)
        max_gap = std::max(max_gap, snaps[k].t - snaps[k - 1].t);
    if (max_gap > options.max_gap_fraction * (t1 - t0))
        throw Error(ErrorCode::InsufficientSnapshots,
                    "snapshot gap " + std::to_string(max_gap) + " too coarse for window " +
                        std::to_string(t1 - t0));

    const RadialField& u_start = snaps[z_index].u;
    const RadialField& u_end = snaps[t_index].u;
    const RadialGrid& grid = u_start.grid();
    const double R = spec.R;
    const int n = spec.n;
    const TraceInterpolator interp(trace, z_index, t_index);

    // Reaction densities at the time nodes are shared across x nodes.
    const quad::Rule& rule = quad::gauss_legendre(quad::kPanelOrder);
    const int panels = std::max(1, quad.time_nodes / quad::kPanelOrder);
    const double panel_width = (t1 - t0) / panels;
    struct TimeNode {
        double tau;
        double weight;
        RadialField reaction;
        double boundary;
    };
    std::vector<TimeNode> nodes;
    nodes.reserve(static_cast<std::size_t>(panels) * rule.nodes.size());
    for (int p = 0; p < panels; ++p) {
        const double mid = t0 + (p + 0.5) * panel_width;
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            const double tau = mid + 0.5 * panel_width * rule.nodes[k];
            std::vector<double> u = interp.field(tau);
            if (spec.lambda > 0.0)
                for (double& v : u) v = spec.lambda * std::exp(spec.p * v);
            else
                std::fill(u.begin(), u.end(), 0.0);
            nodes.push_back({tau, 0.5 * panel_width * rule.weights[k],
                             RadialField(grid, std::move(u)), interp.boundary(tau)});
        }
    }

    IdentityResidual out;
    out.max_abs_u = std::max(std::abs(u_end.max()), std::abs(u_end.min()));
    for (double x : x_nodes) {
        require_inside(x, R);
        double rhs = ball_potential(x, u_start, t1 - t0, n, quad);
        for (const TimeNode& node : nodes) {
            const double s = t1 - node.tau;
            double integrand = 0.0;
            if (spec.lambda > 0.0) integrand += ball_potential(x, node.reaction, s, n, quad);
            if (options.include_flux)
                integrand += sphere_potential(x, R, s, n, quad) * std::exp(spec.q * node.boundary);
            integrand -= node.boundary * sphere_double_layer(x, R, s, n, quad);
            rhs += node.weight * integrand;
        }
        const double residual = std::abs(u_end.interpolate(x) - rhs);
        out.residuals.push_back(residual);
        out.max_residual = std::max(out.max_residual, residual);
    }
    return out;
}

} // namespace blowup
