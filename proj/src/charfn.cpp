#include "maxwalk/charfn.hpp"

#include "maxwalk/density_ops.hpp"
#include "maxwalk/error.hpp"
#include "maxwalk/io.hpp"
#include "maxwalk/parallel.hpp"
#include "maxwalk/simd/kernels.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

namespace maxwalk {

namespace {
constexpr cplx I(0.0, 1.0);

CharFnSamples empty_like(const std::vector<double>& t, int order) {
    CharFnSamples s;
    s.t = t;
    s.order = order;
    for (int j = 0; j <= order; ++j) s.values[j].assign(t.size(), cplx(0.0, 0.0));
    return s;
}

cplx ipow(cplx z, int n) {
    cplx r(1.0, 0.0);
    while (n > 0) {
        if (n & 1) r *= z;
        z *= z;
        n >>= 1;
    }
    return r;
}
} // namespace

std::vector<double> uniform_t_grid(double t_max, double spacing) {
    const int m = static_cast<int>(std::ceil(t_max / spacing - 1e-9));
    std::vector<double> t;
    t.reserve(2 * m + 1);
    for (int i = -m; i <= m; ++i) t.push_back(t_max * i / m);
    return t;
}

CharFnSamples charfn(const GridDensity& f, const std::vector<double>& t, int order) {
    if (order < 0 || order > 2) throw Error(Errc::invalid_argument, "charfn order must be 0, 1 or 2");
    CharFnSamples s = empty_like(t, order);
    const auto [lo, hi] = support_range(f);
    if (lo == hi || t.empty()) return s;
    const auto& g = f.grid();
    const auto& ker = simd::active();
    std::vector<cplx> o1(order >= 1 ? t.size() : 0), o2(order >= 2 ? t.size() : 0);
    parallel_for((t.size() + 3) / 4, 8, [&](std::size_t b, std::size_t e) {
        const std::size_t t0 = 4 * b, t1 = std::min(t.size(), 4 * e);
        ker.fourier_sums(f.vec().data() + lo, hi - lo, g.x(lo), g.step, t.data() + t0, t1 - t0, order,
                         s.values[0].data() + t0, order >= 1 ? o1.data() + t0 : nullptr,
                         order >= 2 ? o2.data() + t0 : nullptr);
    });
    for (std::size_t i = 0; i < t.size(); ++i) {
        s.values[0][i] *= g.step;
        if (order >= 1) s.values[1][i] = I * o1[i] * g.step;
        if (order >= 2) s.values[2][i] = -o2[i] * g.step;
    }
    return s;
}

CharFnSamples phibar(const WalkLaws& walk, int k, const std::vector<double>& t) {
    if (k < 0 || k > walk.n_max()) throw Error(Errc::out_of_range, "phibar: k out of range");
    CharFnSamples s = empty_like(t, 2);
    if (k == 0) {
        std::fill(s.values[0].begin(), s.values[0].end(), cplx(1.0, 0.0));
        return s;
    }
    const CharFnSamples c = charfn(walk.pbar_negative(k), t, 2);
    const double F = walk.Fbar0(k);
    for (std::size_t i = 0; i < t.size(); ++i) {
        s.values[0][i] = F - c.values[0][i];
        s.values[1][i] = -c.values[1][i];
        s.values[2][i] = -c.values[2][i];
    }
    return s;
}

CharFnSamples phihat_plus(const std::vector<double>& t, int n) {
    if (n < 1) throw Error(Errc::invalid_argument, "phihat_plus needs n >= 1");
    using boost::math::quadrature::gauss_kronrod;
    CharFnSamples s = empty_like(t, 2);
    const double nn = n;
    const double rn = std::sqrt(nn);
    const cplx c = 2.0 * I / std::sqrt(2 * std::numbers::pi * nn);
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double tt = t[i], t2 = tt * tt;
        // a(v) = (n - v^2)/n; integrand e^{-a t^2/2} times 1, -a t, a^2 t^2 - a
        auto a = [nn](double v) { return (nn - v * v) / nn; };
        auto q = [&](auto&& w) {
            return gauss_kronrod<double, 31>::integrate(
                [&](double v) { return w(a(v)) * std::exp(-0.5 * a(v) * t2); }, 0.0, rn, 15, 1e-15);
        };
        const double J0 = q([](double) { return 1.0; });
        const double J1 = q([tt](double av) { return -av * tt; });
        const double J2 = q([t2](double av) { return av * av * t2 - av; });
        const double g = std::exp(-0.5 * t2);
        s.values[0][i] = g + c * (tt * J0);
        s.values[1][i] = -tt * g + c * (J0 + tt * J1);
        s.values[2][i] = (t2 - 1.0) * g + c * (2.0 * J1 + tt * J2);
    }
    return s;
}

CharFnSamples nagaev_charfn(const WalkLaws& walk, int n, const std::vector<double>& t) {
    if (n < 1 || n > walk.n_max()) throw Error(Errc::out_of_range, "nagaev_charfn: n out of range");
    const CharFnSamples f = charfn(walk.p(), t, 2);
    std::vector<CharFnSamples> pb;
    for (int j = 0; j < n; ++j) pb.push_back(phibar(walk, j, t));
    CharFnSamples s = empty_like(t, 2);
    for (std::size_t i = 0; i < t.size(); ++i) {
        const cplx f0 = f.values[0][i], f1 = f.values[1][i], f2 = f.values[2][i];
        cplx P0 = 1.0, P1 = 0.0, P2 = 0.0; // f^k and its derivatives
        cplx r0 = 0.0, r1 = 0.0, r2 = 0.0;
        for (int k = 1; k <= n; ++k) {
            const cplx n2 = P2 * f0 + 2.0 * P1 * f1 + P0 * f2;
            const cplx n1 = P1 * f0 + P0 * f1;
            P0 *= f0;
            P1 = n1;
            P2 = n2;
            const auto& b = pb[n - k];
            const cplx b0 = b.values[0][i], b1 = b.values[1][i], b2 = b.values[2][i];
            r0 += P0 * b0;
            r1 += P1 * b0 + P0 * b1;
            r2 += P2 * b0 + 2.0 * P1 * b1 + P0 * b2;
        }
        s.values[0][i] = r0;
        s.values[1][i] = r1;
        s.values[2][i] = r2;
    }
    return s;
}

std::array<double, 3> max_abs_diff(const CharFnSamples& a, const CharFnSamples& b) {
    if (a.t.size() != b.t.size()) throw Error(Errc::invalid_argument, "t grids differ");
    std::array<double, 3> d{0, 0, 0};
    const int order = std::min(a.order, b.order);
    for (int j = 0; j <= order; ++j)
        for (std::size_t i = 0; i < a.t.size(); ++i) d[j] = std::max(d[j], std::abs(a.values[j][i] - b.values[j][i]));
    return d;
}

Prop61Report prop61_report(const WalkLaws& walk, int n, double t_window) {
    if (n < 1 || n > walk.n_max()) throw Error(Errc::out_of_range, "prop61_report: n out of range");
    const auto t = uniform_t_grid(t_window, 0.01);
    const auto emp = charfn(rescale_sqrt(walk.pbar(n), n), t, 2);
    const auto ref = phihat_plus(t, 1);
    const auto d = max_abs_diff(emp, ref);
    Prop61Report r{d[0], d[1], d[2], 0.0};
    std::vector<double> ts;
    for (int i = 1; i <= 500; ++i) ts.push_back(0.01 * i);
    const auto f = charfn(walk.p(), ts, 0);
    r.t_contraction = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < ts.size(); ++i)
        if (std::abs(f.values[0][i]) <= 0.99) {
            r.t_contraction = ts[i];
            break;
        }
    return r;
}

double clt_envelope(const WalkLaws& walk, int n, double gamma) {
    if (n < 1 || n > walk.n_max()) throw Error(Errc::out_of_range, "clt_envelope: n out of range");
    const double rn = std::sqrt(static_cast<double>(n));
    std::vector<double> s;
    const int m = 400;
    for (int i = 0; i <= m; ++i) s.push_back(gamma * i / m);
    const auto f = charfn(walk.p(), s, 0);
    const double h = walk.grid().step;
    double sup = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double y = 0.5 * s[i] * h;
        const double sinc = y == 0 ? 1.0 : std::sin(y) / y;
        const double t = s[i] * rn;
        const double v = std::abs(ipow(f.values[0][i] / sinc, n) - std::exp(-0.5 * t * t)) * std::exp(0.25 * t * t);
        sup = std::max(sup, v);
    }
    return sup;
}

void write_charfn_csv(std::ostream& os, const CharFnSamples& s) {
    io::CsvWriter w(os, {"t", "re0", "im0", "re1", "im1", "re2", "im2"});
    for (std::size_t i = 0; i < s.t.size(); ++i) {
        w.cell(s.t[i]);
        for (int j = 0; j < 3; ++j) {
            const cplx v = j <= s.order ? s.values[j][i] : cplx(0.0, 0.0);
            w.cell(v.real()).cell(v.imag());
        }
        w.end_row();
    }
}

} // namespace maxwalk
