#include "maxwalk/limits.hpp"

#include "maxwalk/density_ops.hpp"
#include "maxwalk/entropy.hpp"
#include "maxwalk/error.hpp"
#include "maxwalk/io.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

namespace maxwalk {

namespace {
constexpr double residual_window = 8.0;
}

ConvergenceRow convergence_row(const WalkLaws& walk, int n, double C) {
    const auto phi = ReferenceLaw::half_normal();
    const GridDensity ps = rescale_sqrt(walk.pbar(n), n);
    const auto rp = restrict(ps, Side::positive);
    ConvergenceRow r;
    r.n = n;
    r.D = relative_entropy(rp.density, phi);
    r.D_plus = conditional_positive_entropy(ps, phi);
    r.tv = tv_distance(ps, phi);
    r.m2_plus = moment(ps, 2, Region::positive);
    r.Fbar0 = walk.Fbar0(n);
    r.tail_mass_C = tail_mass(walk, n, C);
    const auto rep = pinsker_check((1.0 / rp.mass) * rp.density, phi);
    r.pinsker_D = rep.D;
    r.pinsker_tv = rep.tv;
    r.pinsker_slack = rep.pinsker_slack;
    return r;
}

std::vector<ConvergenceRow> convergence_curves(const WalkLaws& walk, const std::vector<int>& n_list, double C) {
    std::vector<ConvergenceRow> rows;
    for (int n : n_list) rows.push_back(convergence_row(walk, n, C));
    return rows;
}

std::vector<ConvergenceRow> convergence_curves(const DistributionSpec& spec, const std::vector<int>& n_list, double C,
                                               std::size_t grid_points) {
    if (n_list.empty()) return {};
    const int n_max = *std::max_element(n_list.begin(), n_list.end());
    const WalkLaws walk(spec, n_max, GridSpec::for_walk(n_max, grid_points));
    return convergence_curves(walk, n_list, C);
}

double tail_mass(const WalkLaws& walk, int n, double C) {
    const GridDensity ps = rescale_sqrt(walk.pbar(n), n);
    const auto& g = ps.grid();
    double s = 0;
    for (std::size_t i = 0; i < g.count; ++i) {
        const double x = g.x(i);
        const double w = std::clamp((x + 0.5 * g.step - C) / g.step, 0.0, 1.0);
        // cells cut by C: integrate x^2 over the retained part only
        if (w <= 0) continue;
        if (w >= 1) {
            s += x * x * ps[i] * g.step;
        } else {
            const double a = C, b = x + 0.5 * g.step;
            s += ps[i] * (b * b * b - a * a * a) / 3.0;
        }
    }
    return s;
}

double alesh_residual(const WalkLaws& walk, int n) {
    if (!walk.spec().bounded_density())
        throw Error(Errc::invalid_argument, "alesh_residual needs a bounded increment density");
    if (n < 1 || n > walk.n_max()) throw Error(Errc::out_of_range, "alesh_residual: n out of range");
    const GridDensity ps = rescale_sqrt(walk.pbar(n), n);
    const GridDensity corr = walk.Fbar0(n - 1) * rescale_sqrt(walk.p(), n);
    const GridDensity phi = sample_reference(ReferenceLaw::half_normal(), ps.grid());
    const auto& g = ps.grid();
    double sup = 0;
    for (std::size_t i = 0; i < g.count; ++i) {
        const double x = g.x(i);
        if (x <= 0.5 * g.step || x >= residual_window) continue;
        sup = std::max(sup, x * std::abs(ps[i] - phi[i] - corr[i]));
    }
    return sup;
}

LocalResidual local_residual(const DecompTable& table, const WalkLaws& walk, int n, Remainder remainder) {
    const auto qr = qbar_rbar(table, walk, n);
    const GridDensity qs = rescale_sqrt(qr.qbar, n);
    const GridDensity r = remainder == Remainder::general ? rn_signed(table, walk, n)
                                                          : walk.Fbar0(n - 1) * rescale_sqrt(walk.p(), n);
    const GridDensity phi = sample_reference(ReferenceLaw::half_normal(), qs.grid());
    const auto& g = qs.grid();
    LocalResidual out;
    for (std::size_t i = 0; i < g.count; ++i) {
        const double x = g.x(i);
        if (x <= 0.5 * g.step || x >= residual_window) continue;
        const double d = std::abs(qs[i] - phi[i] - r[i]);
        out.part_a = std::max(out.part_a, x * d);
        if (x < std::exp(-1.0)) out.part_b_profile.emplace_back(x, d);
    }
    return out;
}

double PartBEnvelope::operator()(int n, double x) const {
    const double m = std::min(std::log(static_cast<double>(n)), 1.0 / (std::sqrt(static_cast<double>(n)) * x));
    return C1 * m + C2 * std::log(1.0 / x);
}

PartBEnvelope fit_part_b(const std::vector<std::pair<double, double>>& profile, int n0) {
    if (profile.empty()) throw Error(Errc::invalid_argument, "empty residual profile");
    PartBEnvelope best;
    double best_area = std::numeric_limits<double>::infinity();
    const int steps = 2000;
    for (int s = 0; s <= steps; ++s) {
        const double th = 0.5 * std::numbers::pi * s / steps;
        const PartBEnvelope dir{std::cos(th), std::sin(th)};
        double lam = 0;
        for (auto [x, r] : profile) lam = std::max(lam, r / dir(n0, x));
        const PartBEnvelope cand{lam * dir.C1, lam * dir.C2};
        double area = 0;
        for (auto [x, r] : profile) area += cand(n0, x);
        if (area < best_area) {
            best_area = area;
            best = cand;
        }
    }
    return best;
}

double part_b_ratio(const std::vector<std::pair<double, double>>& profile, int n, const PartBEnvelope& env) {
    double m = 0;
    for (auto [x, r] : profile) {
        const double e = env(n, x);
        m = std::max(m, e > 0 ? r / e : std::numeric_limits<double>::infinity());
    }
    return m;
}

void write_curves_csv(std::ostream& os, const std::vector<CurveRow>& rows) {
    io::CsvWriter w(os, {"n", "D", "D_plus", "tv", "m2_plus", "Fbar0", "tail4", "alesh", "local_a"});
    for (const auto& r : rows)
        w.cell(r.conv.n).cell(r.conv.D).cell(r.conv.D_plus).cell(r.conv.tv).cell(r.conv.m2_plus).cell(r.conv.Fbar0)
            .cell(r.conv.tail_mass_C).cell(r.alesh ? *r.alesh : std::numeric_limits<double>::quiet_NaN())
            .cell(r.local_a).end_row();
}

} // namespace maxwalk
