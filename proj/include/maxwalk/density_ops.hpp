#pragma once

#include "maxwalk/grid.hpp"

namespace maxwalk {

class ReferenceLaw;

enum class ConvMode { direct, fast };
enum class Side { positive, negative };
enum class Region { all, positive, negative };

struct ConvOptions {
    ConvMode mode = ConvMode::fast;
    /// Largest L1 mass allowed to fall outside the output window.
    double overflow_tol = 1e-9;
};

/// Linear convolution evaluated on a's grid. b must share the step and be
/// zero-aligned so the output lattice coincides with a's.
GridDensity convolve(const GridDensity& a, const GridDensity& b, ConvOptions opt = {});

/// sqrt(n) f(sqrt(n) x): grid shrinks by sqrt(n), values grow by sqrt(n). Exact.
GridDensity rescale_sqrt(const GridDensity& f, int n);

struct Restricted {
    GridDensity density;
    double mass = 0.0;
};

/// f on one open half-line. A cell straddling 0 is split in proportion to
/// its overlap (half each way for a cell centered at 0).
Restricted restrict(const GridDensity& f, Side side);

/// Fraction of cell i lying in (0, inf).
double positive_fraction(const GridSpec& g, std::size_t i);

/// step * sum x^k f over the region (cell split rule applies at 0).
double moment(const GridDensity& f, int order, Region region = Region::all);

double l1_distance(const GridDensity& f, const GridDensity& g);
double tv_distance(const GridDensity& f, const GridDensity& g);
/// Reference is cell-averaged onto f's grid first.
double tv_distance(const GridDensity& f, const ReferenceLaw& ref);

/// L1 norm and sup norm over (0, inf) with the same split rule.
double l1_positive(const GridDensity& f);
double sup_positive(const GridDensity& f);

/// Index range [lo, hi) of cells with nonzero value. Empty range if all zero.
std::pair<std::size_t, std::size_t> support_range(const GridDensity& f);

} // namespace maxwalk
