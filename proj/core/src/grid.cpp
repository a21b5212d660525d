#include "blowup/grid.hpp"

#include "blowup/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace blowup {

RadialGrid::RadialGrid(double radius, int resolution)
    : radius_(radius), n_(resolution), h_(radius / resolution) {
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw Error(ErrorCode::InvalidSpec, "grid radius must be positive and finite");
    if (resolution < kMinResolution)
        throw Error(ErrorCode::InvalidSpec,
                    "grid resolution N must be >= " + std::to_string(kMinResolution));
}

RadialField::RadialField(const RadialGrid& grid, double fill)
    : grid_(grid), values_(grid.size(), fill) {}

RadialField::RadialField(const RadialGrid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size())
        throw Error(ErrorCode::InvalidSpec, "field length " + std::to_string(values_.size()) +
                                                " does not match grid size " +
                                                std::to_string(grid_.size()));
}

double RadialField::max() const noexcept {
    return *std::max_element(values_.begin(), values_.end());
}

double RadialField::min() const noexcept {
    return *std::min_element(values_.begin(), values_.end());
}

bool RadialField::all_finite() const noexcept {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

void RadialField::require_finite(const char* what) const {
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i]))
            throw Error(ErrorCode::NonFiniteInput,
                        std::string(what) + ": non-finite value at node " + std::to_string(i));
    }
}

double RadialField::interpolate(double r) const {
    if (r < 0.0 || r > grid_.R())
        throw Error(ErrorCode::DomainError, "interpolation radius outside [0, R]");
    const double s = r / grid_.h();
    const auto i = std::min(static_cast<std::size_t>(s), values_.size() - 2);
    const double w = s - static_cast<double>(i);
    return (1.0 - w) * values_[i] + w * values_[i + 1];
}

} // namespace blowup
