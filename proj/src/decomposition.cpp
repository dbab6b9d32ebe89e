#include "maxwalk/decomposition.hpp"

#include "maxwalk/density_ops.hpp"
#include "maxwalk/entropy.hpp"
#include "maxwalk/error.hpp"
#include "maxwalk/io.hpp"
#include "maxwalk/simd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>

namespace maxwalk {

namespace {

double excess_over(const GridDensity& p, double M) {
    double s = 0;
    for (double v : p.values()) s += std::max(v - M, 0.0);
    return s * p.step();
}

std::vector<cplx> ones(std::size_t n) { return std::vector<cplx>(n, cplx(1.0, 0.0)); }

GridDensity positive_part(const GridDensity& f) {
    std::vector<double> v = f.vec();
    for (double& x : v) x = std::max(x, 0.0);
    return GridDensity(f.grid(), std::move(v));
}

double x2_positive_abs(const GridDensity& f) {
    std::vector<double> v = f.vec();
    for (double& x : v) x = std::abs(x);
    return moment(GridDensity(f.grid(), std::move(v)), 2, Region::positive);
}

} // namespace

double default_bound(const GridDensity& p) {
    std::vector<std::size_t> idx(p.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return p[a] < p[b]; });
    const double half = 0.5 * p.mass();
    double acc = 0;
    for (std::size_t i : idx) {
        acc += std::max(p[i], 0.0) * p.step();
        if (acc >= half) return 2.0 * p[i];
    }
    return 2.0 * p.sup_abs();
}

BinomialDecomposition binomial_split(const GridDensity& p, double M) {
    if (!(M > 0)) throw Error(Errc::decomposition, "truncation level M must be positive");
    const double rho = excess_over(p, M);
    if (rho >= 0.5) {
        double lo = 0, hi = p.sup_abs();
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            (excess_over(p, mid) >= 0.5 ? lo : hi) = mid;
        }
        std::ostringstream msg;
        msg << "truncation at M = " << M << " leaves rho = " << rho << " >= 1/2; M must exceed " << hi;
        throw Error(Errc::decomposition, msg.str());
    }
    std::vector<double> q1(p.size()), q2(p.size(), 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double cut = std::min(p[i], M);
        q1[i] = cut / (1.0 - rho);
        if (rho > 0) q2[i] = (p[i] - cut) / rho;
    }
    BinomialDecomposition d{rho, GridDensity(p.grid(), std::move(q1)), GridDensity(p.grid(), std::move(q2)), M};
    if (!(restrict(d.q1, Side::positive).mass > 0))
        throw Error(Errc::decomposition, "bounded part has no mass on (0, inf)");
    return d;
}

double binomial_weight(int k, int j, double rho) {
    if (j < 0 || j > k) return 0.0;
    if (rho == 0.0) return j == k ? 1.0 : 0.0;
    double lw = std::lgamma(k + 1.0) - std::lgamma(j + 1.0) - std::lgamma(k - j + 1.0);
    if (j > 0) lw += j * std::log1p(-rho);
    if (k > j) lw += (k - j) * std::log(rho);
    return std::exp(lw);
}

DecompTable::DecompTable(BinomialDecomposition decomp, int n_max)
    : decomp_(std::move(decomp)), n_max_(n_max) {
    if (n_max < 1) throw Error(Errc::invalid_argument, "decomposition table needs n_max >= 1");
    sg_ = std::make_shared<SpectralGrid>(decomp_.q1.grid());
    const auto& ker = simd::active();
    const std::size_t nb = sg_->bins();
    const auto g1 = sg_->forward(decomp_.q1);
    const auto g2 = sg_->forward(decomp_.q2);
    pow1_.assign(n_max + 1, {});
    pow2_.assign(n_max + 1, {});
    pow1_[0] = ones(nb);
    pow2_[0] = ones(nb);
    for (int j = 1; j <= n_max; ++j) {
        pow1_[j].resize(nb);
        pow2_[j].resize(nb);
        ker.cmul(pow1_[j - 1].data(), g1.data(), pow1_[j].data(), nb);
        ker.cmul(pow2_[j - 1].data(), g2.data(), pow2_[j].data(), nb);
    }
    const double rho = decomp_.rho;
    for (int k = 1; k <= n_max; ++k) {
        std::vector<cplx> acc(nb, cplx(0.0, 0.0));
        for (int j = 1; j <= k; ++j) {
            const double w = binomial_weight(k, j, rho);
            if (w != 0.0) ker.cmul_acc(w, pow1_[j].data(), pow2_[k - j].data(), acc.data(), nb);
        }
        qk1_.push_back((1.0 / (1.0 - std::pow(rho, k))) * sg_->inverse(acc));
        qk2_.push_back(rho > 0 ? sg_->inverse(pow2_[k]) : GridDensity::zeros(decomp_.q1.grid()));
    }
}

const GridDensity& DecompTable::qk1(int k) const {
    if (k < 1 || k > n_max_) throw Error(Errc::out_of_range, "qk1 index out of range");
    return qk1_[k - 1];
}
const GridDensity& DecompTable::qk2(int k) const {
    if (k < 1 || k > n_max_) throw Error(Errc::out_of_range, "qk2 index out of range");
    return qk2_[k - 1];
}

DecompTable decomp_powers(const BinomialDecomposition& decomp, int n_max) { return DecompTable(decomp, n_max); }

QbarRbar qbar_rbar(const DecompTable& table, const WalkLaws& walk, int n) {
    if (n < 1 || n > std::min(table.n_max(), walk.n_max())) throw Error(Errc::out_of_range, "qbar_rbar: n out of range");
    const double rho = table.rho();
    const auto mode = walk.options().mode;
    GridDensity q = GridDensity::zeros(walk.grid());
    GridDensity r1 = q, r2 = q;
    for (int k = 1; k <= n; ++k) {
        const NagaevKernel G = nagaev_kernel(walk, n - k);
        q = q + (1.0 - std::pow(rho, k)) * apply_kernel(table.qk1(k), G, mode);
        if (rho > 0) {
            const double rk = std::pow(rho, k);
            r1 = r1 + (rk * G.atom_at_zero) * table.qk2(k);
            if (G.index > 0) r2 = r2 + rk * convolve(table.qk2(k), G.negative_density, {mode});
        }
    }
    return {std::move(q), std::move(r1), std::move(r2)};
}

GridDensity rn_signed(const DecompTable& table, const WalkLaws& walk, int n) {
    if (n < 1 || n > std::min(table.n_max(), walk.n_max())) throw Error(Errc::out_of_range, "rn_signed: n out of range");
    const auto& sg = table.spectral();
    const auto& ker = simd::active();
    const std::size_t nb = sg.bins();
    const double rho = table.rho();
    std::vector<cplx> acc(nb, cplx(0.0, 0.0)), term(nb);
    for (int k = 1; k <= n; ++k) {
        // binomial weights of the j = 1 and j = 2 terms, with 0^0 = 1
        const double a = binomial_weight(k, 1, rho);
        const double b = k >= 2 ? binomial_weight(k, 2, rho) : 0.0;
        if (a == 0.0 && b == 0.0) continue;
        std::fill(term.begin(), term.end(), cplx(0.0, 0.0));
        if (a != 0.0) ker.cmul_acc(a, table.q1_power(1).data(), table.q2_power(k - 1).data(), term.data(), nb);
        if (b != 0.0) ker.cmul_acc(b, table.q1_power(2).data(), table.q2_power(k - 2).data(), term.data(), nb);
        const int j = n - k;
        if (j == 0) {
            for (std::size_t i = 0; i < nb; ++i) acc[i] += term[i];
        } else {
            auto G = sg.forward(walk.pbar_negative(j));
            const double atom = walk.Fbar0(j);
            for (auto& c : G) c = atom - c;
            ker.cmul_acc(1.0, term.data(), G.data(), acc.data(), nb);
        }
    }
    return rescale_sqrt(sg.inverse(acc), n);
}

GridDensity ptilde_k(const DecompTable& table, int k) {
    if (k < 3 || k > table.n_max()) throw Error(Errc::out_of_range, "ptilde_k needs 3 <= k <= n_max");
    const auto& ker = simd::active();
    const std::size_t nb = table.spectral().bins();
    std::vector<cplx> acc(nb, cplx(0.0, 0.0));
    for (int j = 3; j <= k; ++j) {
        const double w = binomial_weight(k, j, table.rho());
        if (w != 0.0) ker.cmul_acc(w, table.q1_power(j).data(), table.q2_power(k - j).data(), acc.data(), nb);
    }
    return table.spectral().inverse(acc);
}

std::vector<Lemma31Row> lemma31_diagnostics(const WalkLaws& walk, const DecompTable& table,
                                            const std::vector<int>& n_list) {
    const auto phi = ReferenceLaw::half_normal();
    std::vector<Lemma31Row> rows;
    for (int n : n_list) {
        const auto qr = qbar_rbar(table, walk, n);
        const GridDensity ps = rescale_sqrt(walk.pbar(n), n);
        const GridDensity qs = rescale_sqrt(qr.qbar, n);
        const GridDensity diff = ps - qs;
        const GridDensity r = rn_signed(table, walk, n);
        const double sn = std::sqrt(static_cast<double>(n));
        Lemma31Row row;
        row.n = n;
        row.l1_pq = l1_positive(diff);
        row.x2_pq = x2_positive_abs(diff);
        row.qminus_l1 = l1_positive(positive_part((-1.0) * qs));
        row.qbar_sup_over_sqrtn = sup_positive(qr.qbar) / sn;
        row.rn_l1 = l1_positive(r);
        row.rn_sup = sup_positive(r);
        const GridDensity r1 = rescale_sqrt(qr.rbar1, n), r2 = rescale_sqrt(qr.rbar2, n);
        row.rbar1_l1 = l1_positive(r1);
        row.rbar2_l1 = l1_positive(r2);
        row.rbar1_x2 = moment(r1, 2, Region::positive);
        row.rbar2_x2 = moment(r2, 2, Region::positive);
        const double dq = relative_entropy(restrict(positive_part(qs), Side::positive).density, phi);
        const double dp = relative_entropy(restrict(ps, Side::positive).density, phi);
        row.entropy_gap = dq - dp;
        rows.push_back(row);
    }
    return rows;
}

void write_lemma31_rows(std::ostream& os, const std::vector<Lemma31Row>& rows) {
    io::CsvWriter w(os, {"n", "l1_pq", "x2_pq", "qminus_l1", "qbar_sup_over_sqrtn", "rn_l1", "rn_sup"});
    for (const auto& r : rows)
        w.cell(r.n).cell(r.l1_pq).cell(r.x2_pq).cell(r.qminus_l1).cell(r.qbar_sup_over_sqrtn).cell(r.rn_l1)
            .cell(r.rn_sup).end_row();
}

} // namespace maxwalk
