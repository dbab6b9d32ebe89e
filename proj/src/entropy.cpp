#include "maxwalk/entropy.hpp"

#include "maxwalk/density_ops.hpp"
#include "maxwalk/error.hpp"
#include "maxwalk/io.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

namespace maxwalk {

double L(double x) {
    if (x < 0) throw Error(Errc::invalid_argument, "L(x) needs x >= 0");
    return x > 0 ? x * std::log(x) : 0.0;
}

namespace {

enum class ZeroCell { both, positive_only, negative_only, none };

double clean(double v, const EntropyOptions& opt) {
    if (v < -opt.negative_floor) throw Error(Errc::invalid_argument, "relative entropy of a negative density");
    return v > opt.zero_level ? v : 0.0;
}

// Which side of 0 the zero cell's mass belongs to.
ZeroCell zero_cell_extent(const GridDensity& f, const EntropyOptions& opt, std::size_t z) {
    bool neg = false, pos = false;
    for (std::size_t i = 0; i < z && !neg; ++i) neg = f[i] > opt.zero_level;
    for (std::size_t i = z + 1; i < f.size() && !pos; ++i) pos = f[i] > opt.zero_level;
    if (neg == pos) return ZeroCell::both;
    return pos ? ZeroCell::positive_only : ZeroCell::negative_only;
}

} // namespace

double relative_entropy(const GridDensity& f, const ReferenceLaw& ref, const EntropyOptions& opt) {
    const auto& g = f.grid();
    const double h = g.step;
    const auto z = g.zero_index();
    const ZeroCell zc = z ? zero_cell_extent(f, opt, *z) : ZeroCell::none;

    double outside = 0.0, total = 0.0;
    for (std::size_t i = 0; i < g.count; ++i) {
        const double v = clean(f[i], opt);
        const double x = g.x(i);
        if (z && i == *z) {
            if (v == 0.0) continue;
            switch (zc) {
            case ZeroCell::positive_only:
                total += h * v * (std::log(2 * v) - ref.log_density(0.25 * h));
                continue;
            case ZeroCell::negative_only:
                if (ref.half_line()) outside += h * v;
                else total += h * v * (std::log(2 * v) - ref.log_density(-0.25 * h));
                continue;
            default:
                if (ref.half_line()) {
                    outside += 0.5 * h * v;
                    total += 0.5 * h * v * (std::log(v) - ref.log_density(0.25 * h));
                } else {
                    total += h * v * (std::log(v) - ref.log_density(x));
                }
                continue;
            }
        }
        if (ref.half_line()) {
            const double w = positive_fraction(g, i);
            if (w < 1.0) outside += (1.0 - w) * h * v;
            if (w == 0.0 || v == 0.0) continue;
            const double xc = w < 1.0 ? 0.5 * (x + 0.5 * h) : x; // center of the in-support part
            total += w * h * v * (std::log(v) - ref.log_density(xc));
            continue;
        }
        if (v > 0.0) total += h * v * (std::log(v) - ref.log_density(x));
    }
    if (outside > opt.mass_tol) return infinite_entropy;
    return total;
}

double conditional_positive_entropy(const GridDensity& f, const ReferenceLaw& ref, const EntropyOptions& opt) {
    auto r = restrict(f, Side::positive);
    if (!(r.mass > 0)) throw Error(Errc::invalid_argument, "conditioning on a null positive part");
    return relative_entropy((1.0 / r.mass) * r.density, ref, opt);
}

double differential_entropy(const GridDensity& f) {
    const EntropyOptions opt;
    const auto& g = f.grid();
    const auto z = g.zero_index();
    const ZeroCell zc = z ? zero_cell_extent(f, opt, *z) : ZeroCell::none;
    double s = 0;
    for (std::size_t i = 0; i < g.count; ++i) {
        const double v = std::max(f[i], 0.0);
        if (v <= opt.zero_level) continue;
        if (z && i == *z && (zc == ZeroCell::positive_only || zc == ZeroCell::negative_only))
            s += 0.5 * L(2 * v); // mass confined to half the cell
        else
            s += L(v);
    }
    return -g.step * s;
}

double gaussian_relent_closed_form(double h_x, double sigma2, double tau, GaussianSide side) {
    if (!(tau > 0)) throw Error(Errc::invalid_argument, "tau must be positive");
    if (!(sigma2 > 0)) throw Error(Errc::invalid_argument, "sigma^2 must be positive");
    const double c = side == GaussianSide::full ? 2 * std::numbers::pi : 0.5 * std::numbers::pi;
    return -h_x + 0.5 * std::log(c * tau * tau) + 0.5 * sigma2 / (tau * tau);
}

EntropyReport pinsker_check(const GridDensity& f, const ReferenceLaw& ref, const EntropyOptions& opt) {
    EntropyReport r;
    r.D = relative_entropy(f, ref, opt);
    r.mass_of_argument = f.mass();
    r.tv = tv_distance(f, ref);
    r.pinsker_slack = r.D - 0.5 * r.tv * r.tv;
    return r;
}

void write_entropy_rows(std::ostream& os, const std::vector<EntropyRow>& rows) {
    io::CsvWriter w(os, {"n", "D", "D_plus", "tv", "pinsker_slack", "mass"});
    for (const auto& r : rows) w.cell(r.n).cell(r.D).cell(r.D_plus).cell(r.tv).cell(r.pinsker_slack).cell(r.mass).end_row();
}

} // namespace maxwalk
