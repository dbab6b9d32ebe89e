#include "maxwalk/walk.hpp"

#include "maxwalk/error.hpp"
#include "maxwalk/fft.hpp"
#include "maxwalk/io.hpp"
#include "maxwalk/simd/kernels.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <ostream>
#include <sstream>

namespace maxwalk {

namespace {
HalfLineLaw halfline(const GridDensity& f) {
    return {restrict(f, Side::negative).mass, restrict(f, Side::positive).density};
}
} // namespace

WalkLaws::WalkLaws(DistributionSpec spec, int n_max, const GridSpec& grid, WalkOptions opt)
    : spec_(std::move(spec)), n_max_(n_max), grid_(grid), opt_(opt) {
    if (n_max < 1) throw Error(Errc::invalid_argument, "n_max must be >= 1");
    if (!grid.zero_index()) throw Error(Errc::grid_mismatch, "walk grid needs a cell centered at 0");
    const ConvOptions conv{opt.mode};
    p_k_.reserve(n_max);
    pbar_k_.reserve(n_max);
    p_k_.push_back(sample_density(spec_, grid));
    pbar_k_.push_back(p_k_.front());
    for (int k = 2; k <= n_max; ++k) {
        p_k_.push_back(convolve(p_k_.back(), p_k_.front(), conv));
        pbar_k_.push_back(convolve(lift(halfline(pbar_k_.back())), p_k_.front(), conv));
    }
    fbar0_.push_back(1.0);
    abar_.push_back(0.0);
    bbar_.push_back(0.0);
    for (int k = 1; k <= n_max; ++k) {
        const GridDensity& pb = pbar_k_[k - 1];
        const double drift = std::abs(pb.mass() - 1.0);
        if (drift > k * opt.mass_tol) {
            std::ostringstream msg;
            msg << "mass drift " << drift << " at k = " << k << " exceeds " << k * opt.mass_tol
                << "; widen the window (half-width factor) or add grid points";
            throw Error(Errc::mass_drift, msg.str());
        }
        auto neg = restrict(pb, Side::negative);
        fbar0_.push_back(neg.mass);
        abar_.push_back(moment(pb, 1, Region::negative));
        bbar_.push_back(moment(pb, 2, Region::negative));
        neg_k_.push_back(std::move(neg.density));
    }
}

void WalkLaws::check_k(int k, int lo) const {
    if (k < lo || k > n_max_) {
        std::ostringstream msg;
        msg << "step index " << k << " outside [" << lo << ", " << n_max_ << "]";
        throw Error(Errc::out_of_range, msg.str());
    }
}

const GridDensity& WalkLaws::p(int k) const {
    check_k(k, 1);
    return p_k_[k - 1];
}
const GridDensity& WalkLaws::pbar(int k) const {
    check_k(k, 1);
    return pbar_k_[k - 1];
}
const GridDensity& WalkLaws::pbar_negative(int k) const {
    check_k(k, 1);
    return neg_k_[k - 1];
}
double WalkLaws::Fbar0(int k) const {
    check_k(k, 0);
    return fbar0_[k];
}
double WalkLaws::abar(int k) const {
    check_k(k, 1);
    return abar_[k];
}
double WalkLaws::bbar(int k) const {
    check_k(k, 1);
    return bbar_[k];
}

WalkLaws compute_walk(const DistributionSpec& spec, int n_max, const GridSpec& grid, WalkOptions opt) {
    return WalkLaws(spec, n_max, grid, opt);
}

NagaevKernel nagaev_kernel(const WalkLaws& walk, int k) {
    if (k == 0) return {0, 1.0, GridDensity::zeros(walk.grid())};
    return {k, walk.Fbar0(k), walk.pbar_negative(k)};
}

GridDensity apply_kernel(const GridDensity& f, const NagaevKernel& g, ConvMode mode) {
    if (g.index == 0) return f;
    return g.atom_at_zero * f - convolve(f, g.negative_density, {mode});
}

GridDensity nagaev_density(const WalkLaws& walk, int n) {
    if (n < 1 || n > walk.n_max()) throw Error(Errc::out_of_range, "nagaev_density: n out of range");
    GridDensity acc = GridDensity::zeros(walk.grid());
    for (int k = 1; k <= n; ++k)
        acc = acc + apply_kernel(walk.p(k), nagaev_kernel(walk, n - k), walk.options().mode);
    return acc;
}

HalfLineLaw spitzer_positive_law(const WalkLaws& walk, int n) {
    if (n < 1 || n > walk.n_max()) throw Error(Errc::out_of_range, "spitzer_positive_law: n out of range");
    const SpectralGrid sg(walk.grid());
    const auto& k = simd::active();
    const std::size_t nb = sg.bins();
    std::vector<std::vector<cplx>> mu(n + 1), B(n + 1);
    for (int j = 1; j <= n; ++j) mu[j] = sg.forward(restrict(walk.p(j), Side::positive).density);
    B[0].assign(nb, cplx(1.0, 0.0)); // delta_0
    std::vector<cplx> law(nb, cplx(0.0, 0.0));
    for (int m = 1; m <= n; ++m) {
        B[m].assign(nb, cplx(0.0, 0.0));
        const double inv_m = 1.0 / m;
        for (int j = 1; j <= m; ++j) k.cmul_acc(inv_m, mu[j].data(), B[m - j].data(), B[m].data(), nb);
        const double c = walk.Fbar0(n - m);
        for (std::size_t i = 0; i < nb; ++i) law[i] += c * B[m][i];
    }
    const GridDensity raw = sg.inverse(law);
    // every B_m lives on [0, inf); what lands below 0 is roundoff or wraparound
    const auto& g = raw.grid();
    std::vector<double> v = raw.vec();
    double stray = 0;
    for (std::size_t i = 0; i < v.size() && g.x(i) < -0.5 * g.step; ++i) {
        stray += std::abs(v[i]) * g.step;
        v[i] = 0.0;
    }
    if (stray > default_mass_tol)
        throw Error(Errc::window_overflow, "spitzer_positive_law: mass " + std::to_string(stray) + " wrapped below 0");
    return {walk.Fbar0(n), GridDensity(g, std::move(v))};
}

double second_moment_spitzer(const WalkLaws& walk, int n) {
    if (n < 1 || n > walk.n_max()) throw Error(Errc::out_of_range, "second_moment_spitzer: n out of range");
    std::vector<double> e1(n + 1, 0.0), e2(n + 1, 0.0);
    for (int k = 1; k <= n; ++k) {
        e1[k] = moment(walk.p(k), 1, Region::positive) / k;
        e2[k] = moment(walk.p(k), 2, Region::positive) / k;
    }
    double s = 0;
    for (int k = 1; k <= n; ++k) {
        for (int l = 1; k + l <= n; ++l) s += e1[k] * e1[l];
        s += e2[k];
    }
    return s;
}

double sparre_andersen(int n) {
    if (n < 1) throw Error(Errc::invalid_argument, "sparre_andersen needs n >= 1");
    using boost::multiprecision::cpp_int;
    using boost::multiprecision::cpp_rational;
    cpp_int binom = 1;
    for (int i = 1; i <= n; ++i) binom = binom * (n + i) / i;
    const cpp_int denom = cpp_int(1) << (2 * n);
    return cpp_rational(binom, denom).convert_to<double>();
}

GridDensity opn_split(const WalkLaws& walk, int n) {
    if (n < 2 || n > walk.n_max()) throw Error(Errc::out_of_range, "opn_split needs 2 <= n <= n_max");
    return restrict(walk.pbar(n), Side::positive).density -
           walk.Fbar0(n - 1) * restrict(walk.p(), Side::positive).density;
}

void write_scalar_table(std::ostream& os, const WalkLaws& walk) {
    io::CsvWriter w(os, {"k", "Fbar0", "abar", "bbar", "mass_p", "mass_pbar"});
    for (int k = 1; k <= walk.n_max(); ++k)
        w.cell(k).cell(walk.Fbar0(k)).cell(walk.abar(k)).cell(walk.bbar(k)).cell(walk.p(k).mass())
            .cell(walk.pbar(k).mass()).end_row();
}

} // namespace maxwalk
