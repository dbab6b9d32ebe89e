#pragma once

#include "maxwalk/fft.hpp"
#include "maxwalk/grid.hpp"
#include "maxwalk/walk.hpp"

#include <iosfwd>
#include <memory>
#include <optional>
#include <vector>

namespace maxwalk {

/// p = (1 - rho) q1 + rho q2 with q1 = min(p, M) / (1 - rho).
struct BinomialDecomposition {
    double rho = 0;
    GridDensity q1;
    GridDensity q2; // zero density when rho = 0
    double bound_M = 0;
};

/// Twice the median level of p: the level lambda with P(p(X) <= lambda) = 1/2.
double default_bound(const GridDensity& p);
BinomialDecomposition binomial_split(const GridDensity& p, double M);

/// C(k, j) (1-rho)^j rho^(k-j), log-space, with 0^0 = 1.
double binomial_weight(int k, int j, double rho);

/// q_{k,1}, q_{k,2} for k = 1..n_max, plus the spectra they were built from.
class DecompTable {
public:
    DecompTable(BinomialDecomposition decomp, int n_max);

    const BinomialDecomposition& decomp() const { return decomp_; }
    double rho() const { return decomp_.rho; }
    int n_max() const { return n_max_; }
    const GridDensity& qk1(int k) const;
    const GridDensity& qk2(int k) const;

    const SpectralGrid& spectral() const { return *sg_; }
    /// Transform of q1^{*j} (j = 0..n_max).
    const std::vector<cplx>& q1_power(int j) const { return pow1_.at(j); }
    const std::vector<cplx>& q2_power(int j) const { return pow2_.at(j); }

private:
    BinomialDecomposition decomp_;
    int n_max_;
    std::shared_ptr<const SpectralGrid> sg_;
    std::vector<std::vector<cplx>> pow1_, pow2_;
    std::vector<GridDensity> qk1_, qk2_;
};

DecompTable decomp_powers(const BinomialDecomposition& decomp, int n_max);

struct QbarRbar {
    GridDensity qbar;  // signed
    GridDensity rbar1; // >= 0
    GridDensity rbar2; // >= 0
};
QbarRbar qbar_rbar(const DecompTable& table, const WalkLaws& walk, int n);

/// Remainder r_n on the rescaled grid (k = 1, 2 terms of the expansion).
GridDensity rn_signed(const DecompTable& table, const WalkLaws& walk, int n);
/// Terms j >= 3 of the binomial expansion of p_k.
GridDensity ptilde_k(const DecompTable& table, int k);

struct Lemma31Row {
    int n = 0;
    double l1_pq = 0;               // int_0^inf |pbar* - qbar*|
    double x2_pq = 0;               // int_0^inf x^2 |pbar* - qbar*|
    double qminus_l1 = 0;           // int_0^inf (qbar*)^-
    double qbar_sup_over_sqrtn = 0; // sup_(0,inf) |qbar_n| / sqrt(n)
    double rn_l1 = 0;
    double rn_sup = 0;
    double rbar1_l1 = 0, rbar2_l1 = 0;
    double rbar1_x2 = 0, rbar2_x2 = 0;
    /// D((qbar*)^+ | phi_+) - D(pbar* | phi_+), both over (0, inf)
    double entropy_gap = 0;
};

std::vector<Lemma31Row> lemma31_diagnostics(const WalkLaws& walk, const DecompTable& table,
                                            const std::vector<int>& n_list);
void write_lemma31_rows(std::ostream& os, const std::vector<Lemma31Row>& rows);

} // namespace maxwalk
