#include "maxwalk/density_ops.hpp"

#include "maxwalk/error.hpp"
#include "maxwalk/fft.hpp"
#include "maxwalk/parallel.hpp"
#include "maxwalk/reference.hpp"
#include "maxwalk/simd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace maxwalk {

std::pair<std::size_t, std::size_t> support_range(const GridDensity& f) {
    auto v = f.values();
    std::size_t lo = 0, hi = v.size();
    while (lo < hi && v[lo] == 0.0) ++lo;
    while (hi > lo && v[hi - 1] == 0.0) --hi;
    return {lo, hi};
}

namespace {

// Full linear convolution of x (nx) and y (ny), length nx+ny-1.
std::vector<double> linear_direct(const double* x, std::size_t nx, const double* y, std::size_t ny) {
    if (nx > ny) {
        std::swap(x, y);
        std::swap(nx, ny);
    }
    const std::size_t nf = nx + ny - 1;
    std::vector<double> out(nf, 0.0);
    const auto& k = simd::active();
    // Each output index accumulates over i in ascending order whatever the
    // partition, so results do not depend on the thread count.
    parallel_for(nf, 4096, [&](std::size_t m0, std::size_t m1) {
        for (std::size_t i = 0; i < nx; ++i) {
            const double a = x[i];
            if (a == 0.0) continue;
            const std::size_t lo = std::max(m0, i);
            const std::size_t hi = std::min(m1, i + ny);
            if (lo < hi) k.axpy(a, y + (lo - i), out.data() + lo, hi - lo);
        }
    });
    return out;
}

std::vector<double> linear_fft(const double* x, std::size_t nx, const double* y, std::size_t ny) {
    const std::size_t nf = nx + ny - 1;
    const std::size_t len = next_pow2(std::max<std::size_t>(nf, 4));
    RealFft fft(len);
    std::vector<double> bx(len, 0.0), by(len, 0.0);
    std::copy(x, x + nx, bx.begin());
    std::copy(y, y + ny, by.begin());
    std::vector<cplx> sx(fft.spectrum_size()), sy(fft.spectrum_size());
    fft.forward(bx.data(), sx.data());
    fft.forward(by.data(), sy.data());
    simd::active().cmul(sx.data(), sy.data(), sx.data(), sx.size());
    fft.inverse(sx.data(), bx.data());
    const double inv = 1.0 / static_cast<double>(len);
    std::vector<double> out(nf);
    for (std::size_t m = 0; m < nf; ++m) out[m] = bx[m] * inv;
    return out;
}

} // namespace

GridDensity convolve(const GridDensity& a, const GridDensity& b, ConvOptions opt) {
    const GridSpec& ga = a.grid();
    const GridSpec& gb = b.grid();
    const double h = ga.step;
    if (std::abs(gb.step - h) > 1e-12 * h)
        throw Error(Errc::grid_mismatch, "convolution needs equal steps");
    const auto ob = gb.offset_cells();
    if (!ob) throw Error(Errc::grid_mismatch, "second convolution operand must be zero-aligned");

    auto [la, ua] = support_range(a);
    auto [lb, ub] = support_range(b);
    std::vector<double> out(ga.count, 0.0);
    if (la == ua || lb == ub) return GridDensity(ga, std::move(out));

    const std::size_t na = ua - la, nb = ub - lb;
    std::vector<double> full = opt.mode == ConvMode::direct
                                   ? linear_direct(a.vec().data() + la, na, b.vec().data() + lb, nb)
                                   : linear_fft(a.vec().data() + la, na, b.vec().data() + lb, nb);

    // full[m] sits at x = ga.x(la) + gb.x(lb) + m*h, i.e. output index m + la + lb + ob.
    const long long shift = static_cast<long long>(la + lb) + *ob;
    double dropped = 0.0;
    for (std::size_t m = 0; m < full.size(); ++m) {
        const long long k = static_cast<long long>(m) + shift;
        if (k >= 0 && k < static_cast<long long>(ga.count)) out[static_cast<std::size_t>(k)] = h * full[m];
        else dropped += std::abs(full[m]);
    }
    dropped *= h * h;
    if (dropped > opt.overflow_tol) {
        std::ostringstream msg;
        msg << "convolution window overflow: L1 mass " << dropped << " falls outside [" << ga.lower_edge()
            << ", " << ga.upper_edge() << "]";
        throw Error(Errc::window_overflow, msg.str());
    }
    return GridDensity(ga, std::move(out));
}

GridDensity rescale_sqrt(const GridDensity& f, int n) {
    if (n < 1) throw Error(Errc::invalid_argument, "rescale_sqrt needs n >= 1");
    if (n == 1) return f;
    const double s = std::sqrt(static_cast<double>(n));
    GridSpec g{f.grid().x_min / s, f.grid().step / s, f.grid().count};
    std::vector<double> v = f.vec();
    for (double& x : v) x *= s;
    return GridDensity(g, std::move(v));
}

double positive_fraction(const GridSpec& g, std::size_t i) {
    if (auto z = g.zero_index()) {
        if (i > *z) return 1.0;
        if (i < *z) return 0.0;
        return 0.5;
    }
    return std::clamp((g.x(i) + 0.5 * g.step) / g.step, 0.0, 1.0);
}

namespace {
// [full_lo, full_hi) cells entirely on the side, plus an optional partial cell.
struct SideCells {
    std::size_t lo = 0, hi = 0;
    long long partial = -1;
    double weight = 0.0;
};

SideCells side_cells(const GridSpec& g, Side side) {
    SideCells s;
    // first cell with positive fraction 1
    const double first_pos = std::ceil((0.5 * g.step - g.x_min) / g.step - 1e-9);
    const std::size_t p = static_cast<std::size_t>(std::clamp(first_pos, 0.0, static_cast<double>(g.count)));
    long long straddle = -1;
    if (p > 0) {
        const double fr = positive_fraction(g, p - 1);
        if (fr > 0.0 && fr < 1.0) straddle = static_cast<long long>(p - 1);
    }
    if (side == Side::positive) {
        s.lo = p;
        s.hi = g.count;
        if (straddle >= 0) {
            s.partial = straddle;
            s.weight = positive_fraction(g, static_cast<std::size_t>(straddle));
        }
    } else {
        s.lo = 0;
        s.hi = straddle >= 0 ? static_cast<std::size_t>(straddle) : p;
        if (straddle >= 0) {
            s.partial = straddle;
            s.weight = 1.0 - positive_fraction(g, static_cast<std::size_t>(straddle));
        }
    }
    return s;
}
} // namespace

Restricted restrict(const GridDensity& f, Side side) {
    const auto& g = f.grid();
    const SideCells c = side_cells(g, side);
    std::vector<double> v(g.count, 0.0);
    std::copy(f.vec().begin() + static_cast<std::ptrdiff_t>(c.lo), f.vec().begin() + static_cast<std::ptrdiff_t>(c.hi),
              v.begin() + static_cast<std::ptrdiff_t>(c.lo));
    if (c.partial >= 0) v[static_cast<std::size_t>(c.partial)] = c.weight * f[static_cast<std::size_t>(c.partial)];
    GridDensity d(g, std::move(v));
    const double m = d.mass();
    return {std::move(d), m};
}

double moment(const GridDensity& f, int order, Region region) {
    if (order < 0 || order > 2) throw Error(Errc::invalid_argument, "moment order must be 0, 1 or 2");
    const auto& g = f.grid();
    const auto& k = simd::active();
    double sums[3];
    if (region == Region::all) {
        k.power_sums(f.vec().data(), g.count, g.x_min, g.step, sums);
        return g.step * sums[order];
    }
    const SideCells c = side_cells(g, region == Region::positive ? Side::positive : Side::negative);
    double total = 0.0;
    if (c.hi > c.lo) {
        k.power_sums(f.vec().data() + c.lo, c.hi - c.lo, g.x(c.lo), g.step, sums);
        total = sums[order];
    }
    if (c.partial >= 0) {
        const auto i = static_cast<std::size_t>(c.partial);
        total += c.weight * f[i] * std::pow(g.x(i), order);
    }
    return g.step * total;
}

double l1_distance(const GridDensity& f, const GridDensity& g) {
    if (!f.grid().same_as(g.grid())) throw Error(Errc::grid_mismatch, "distance between densities on different grids");
    return f.step() * simd::active().sum_abs_diff(f.vec().data(), g.vec().data(), f.size());
}

double tv_distance(const GridDensity& f, const GridDensity& g) { return 0.5 * l1_distance(f, g); }

double tv_distance(const GridDensity& f, const ReferenceLaw& ref) {
    return tv_distance(f, sample_reference(ref, f.grid()));
}

double l1_positive(const GridDensity& f) {
    const auto& g = f.grid();
    double s = 0;
    for (std::size_t i = 0; i < g.count; ++i) {
        const double w = positive_fraction(g, i);
        if (w > 0) s += w * std::abs(f[i]);
    }
    return s * g.step;
}

double sup_positive(const GridDensity& f) {
    const auto& g = f.grid();
    double m = 0;
    for (std::size_t i = 0; i < g.count; ++i)
        if (positive_fraction(g, i) > 0) m = std::max(m, std::abs(f[i]));
    return m;
}

} // namespace maxwalk
