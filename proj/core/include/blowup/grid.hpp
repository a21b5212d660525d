#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace blowup {

/// Uniform grid r_i = i*h on [0, R], i = 0..N. The last node is R exactly.
class RadialGrid {
public:
    static constexpr int kMinResolution = 16;

    RadialGrid(double radius, int resolution);

    int N() const noexcept { return n_; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(n_) + 1; }
    double R() const noexcept { return radius_; }
    double h() const noexcept { return h_; }
    double r(std::size_t i) const noexcept {
        return i == static_cast<std::size_t>(n_) ? radius_ : static_cast<double>(i) * h_;
    }

    bool operator==(const RadialGrid&) const = default;

private:
    double radius_;
    int n_;
    double h_;
};

/// Values of a radial function at the nodes of a RadialGrid.
class RadialField {
public:
    explicit RadialField(const RadialGrid& grid, double fill = 0.0);
    RadialField(const RadialGrid& grid, std::vector<double> values);

    const RadialGrid& grid() const noexcept { return grid_; }
    std::size_t size() const noexcept { return values_.size(); }

    double operator[](std::size_t i) const noexcept { return values_[i]; }
    double& operator[](std::size_t i) noexcept { return values_[i]; }

    std::span<const double> values() const noexcept { return values_; }
    std::span<double> values() noexcept { return values_; }

    double back() const noexcept { return values_.back(); }
    double max() const noexcept;
    double min() const noexcept;
    bool all_finite() const noexcept;

    /// Throws NonFiniteInput naming `what` when any value is NaN or infinite.
    void require_finite(const char* what) const;

    /// Linear interpolation at radius r in [0, R].
    double interpolate(double r) const;

private:
    RadialGrid grid_;
    std::vector<double> values_;
};

} // namespace blowup
