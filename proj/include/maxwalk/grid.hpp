#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace maxwalk {

inline constexpr double default_mass_tol = 1e-6;

/// Uniform grid of cell centers x_i = x_min + i*step.
struct GridSpec {
    double x_min = 0.0;
    double step = 1.0;
    std::size_t count = 0;

    double x(std::size_t i) const { return x_min + static_cast<double>(i) * step; }
    double x_max() const { return x(count - 1); }
    double lower_edge() const { return x_min - 0.5 * step; }
    double upper_edge() const { return x_max() + 0.5 * step; }

    /// Index of the cell centered at 0, if the grid has one.
    std::optional<std::size_t> zero_index() const;
    /// x_min / step as an integer when it is one (up to rounding noise).
    std::optional<long long> offset_cells() const;

    bool same_as(const GridSpec& o) const;
    void validate() const;

    /// count cells, symmetric, zero at index count/2.
    static GridSpec centered(double step, std::size_t count);
    /// Working grid for a walk of n_max steps: half-width 8*sqrt(max(n_max, 16))*pad.
    static GridSpec for_walk(int n_max, std::size_t points, double pad = 1.25);
};

/// Cell values of a (possibly signed) density on a uniform grid.
class GridDensity {
public:
    GridDensity() = default;
    GridDensity(GridSpec grid, std::vector<double> values);
    static GridDensity zeros(const GridSpec& grid);

    const GridSpec& grid() const { return grid_; }
    std::span<const double> values() const { return values_; }
    const std::vector<double>& vec() const { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }
    std::size_t size() const { return values_.size(); }
    double step() const { return grid_.step; }

    double mass() const;
    double sup_abs() const;
    double l1() const;

    GridDensity scaled(double a) const;

private:
    GridSpec grid_{};
    std::vector<double> values_;
};

GridDensity operator+(const GridDensity& a, const GridDensity& b);
GridDensity operator-(const GridDensity& a, const GridDensity& b);
GridDensity operator*(double a, const GridDensity& f);

/// Law of a nonnegative variable: atom at 0 plus a density on (0, inf).
struct HalfLineLaw {
    double atom_at_zero = 0.0;
    GridDensity density;

    /// Throws unless atom + mass = 1 within tol and the density is nonnegative.
    void validate(double mass_tol = default_mass_tol) const;
};

/// atom*delta_0 + density as a grid density (the atom occupies the zero cell).
GridDensity lift(const HalfLineLaw& law);

void write_csv(std::ostream& os, const GridDensity& f);
GridDensity read_csv(std::istream& is);

} // namespace maxwalk
