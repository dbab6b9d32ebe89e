#include "maxwalk/decomposition.hpp"
#include "maxwalk/density_ops.hpp"
#include "maxwalk/error.hpp"
#include "maxwalk/walk.hpp"

#include "../oracles/oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <sstream>

using namespace maxwalk;

namespace {

double max_diff(const GridDensity& a, const GridDensity& b) {
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

const WalkLaws& walk16(const std::string& name) {
    static std::map<std::string, WalkLaws> cache;
    auto it = cache.find(name);
    if (it == cache.end())
        it = cache.emplace(name, WalkLaws(DistributionSpec::named(name), 16, GridSpec::for_walk(16, 1u << 14))).first;
    return it->second;
}

} // namespace

TEST_SUITE("decomposition") {

TEST_CASE("bounded input needs no truncation") {
    const GridDensity& p = walk16("uniform").p();
    const BinomialDecomposition d = binomial_split(p, 1.0);
    CHECK(d.rho == 0.0);
    CHECK(max_diff(d.q1, p) == 0.0);
    CHECK(d.q2.l1() == 0.0);
}

TEST_CASE("spike excess mass over level 1 matches quadrature") {
    // p > 1 exactly on |x| < 1/(16 sqrt 5)
    const double xs = 1 / (16 * std::sqrt(5.0));
    const double rho_oracle = 2 * oracle::ts([](double x) { return oracle::spike_pdf(x) - 1; }, 0.0, xs);
    const GridSpec g = GridSpec::centered(1e-4, 1u << 18);
    const GridDensity p = sample_density(DistributionSpec::named("spike"), g);
    const BinomialDecomposition d = binomial_split(p, 1.0);
    CHECK(d.rho > 0);
    CHECK(d.rho < 0.5);
    CHECK(std::abs(d.rho - rho_oracle) <= 1e-4);
    const GridDensity back = (1 - d.rho) * d.q1 + d.rho * d.q2;
    CHECK(max_diff(back, p) <= 1e-10);
    CHECK(d.q1.sup_abs() * (1 - d.rho) <= 1.0 + 1e-12);
    CHECK(d.q1.mass() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(d.q2.mass() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("split errors") {
    const GridDensity& p = walk16("gaussian").p();
    CHECK_THROWS_AS(binomial_split(p, 0.0), Error);
    CHECK_THROWS_AS(binomial_split(p, 0.05), Error); // rho would exceed 1/2
}

TEST_CASE("binomial weights") {
    CHECK(binomial_weight(5, 5, 0.0) == 1.0);
    CHECK(binomial_weight(5, 4, 0.0) == 0.0);
    CHECK(binomial_weight(4, 2, 0.5) == doctest::Approx(6.0 / 16).epsilon(1e-15));
    for (double rho : {0.0, 0.01, 0.2, 0.45})
        for (int k = 1; k <= 64; ++k) {
            double s = 0;
            for (int j = 0; j <= k; ++j) s += binomial_weight(k, j, rho);
            CHECK(std::abs(s - 1) <= 1e-12);
        }
}

TEST_CASE("table with rho = 0 reproduces the walk") {
    const WalkLaws& w = walk16("laplace");
    const DecompTable t(binomial_split(w.p(), 10.0), 16);
    CHECK(t.rho() == 0.0);
    for (int k : {1, 2, 5, 16}) {
        CHECK(max_diff(t.qk1(k), w.p(k)) <= 1e-12);
        CHECK(t.qk2(k).l1() == 0.0);
    }
    for (int k : {3, 8}) CHECK(max_diff(ptilde_k(t, k), w.p(k)) <= 1e-12);
    for (int n : {4, 16}) {
        const QbarRbar qr = qbar_rbar(t, w, n);
        CHECK(max_diff(qr.qbar, w.pbar(n)) <= 1e-12);
        CHECK(qr.rbar1.l1() == 0.0);
        CHECK(qr.rbar2.l1() == 0.0);
    }
}

TEST_CASE("r_n with rho = 0 keeps the k = 1 and k = 2 terms") {
    const WalkLaws& w = walk16("uniform");
    const DecompTable t(binomial_split(w.p(), 10.0), 16);
    for (int n : {4, 16}) {
        const GridDensity direct =
            rescale_sqrt(apply_kernel(w.p(1), nagaev_kernel(w, n - 1)) + apply_kernel(w.p(2), nagaev_kernel(w, n - 2)), n);
        CHECK(max_diff(rn_signed(t, w, n), direct) <= 1e-10);
    }
}

TEST_CASE("spike table") {
    const WalkLaws& w = walk16("spike");
    const BinomialDecomposition d = binomial_split(w.p(), default_bound(w.p()));
    CHECK(d.rho > 0);
    const DecompTable t(d, 16);
    CHECK(max_diff(t.qk1(1), d.q1) <= 1e-14 * d.q1.sup_abs());
    CHECK(max_diff(t.qk2(1), d.q2) <= 1e-14 * d.q2.sup_abs());
    const double r8 = std::pow(d.rho, 8);
    CHECK(l1_distance((1 - r8) * t.qk1(8) + r8 * t.qk2(8), w.p(8)) <= 1e-6);
    for (int k = 1; k <= 16; ++k) {
        CHECK(std::abs(t.qk1(k).mass() - 1) <= k * default_mass_tol);
        CHECK(std::abs(t.qk2(k).mass() - 1) <= k * default_mass_tol);
    }
    for (int k = 3; k <= 16; ++k) {
        const GridDensity pt = ptilde_k(t, k);
        double want = 1;
        for (int j = 0; j <= 2; ++j) want -= binomial_weight(k, j, d.rho);
        CHECK(std::abs(pt.mass() - want) <= 1e-6);
        CHECK(*std::min_element(pt.vec().begin(), pt.vec().end()) >= -1e-6);
    }
    CHECK_THROWS_AS(ptilde_k(t, 2), Error);

    const QbarRbar qr = qbar_rbar(t, w, 16);
    CHECK(std::isfinite(qr.qbar.sup_abs()));
    CHECK(max_diff(w.pbar(16) + qr.rbar2, qr.qbar + qr.rbar1) <= 16 * 1e-8);
}

TEST_CASE("diagnostic rows layout") {
    const WalkLaws& w = walk16("spike");
    const DecompTable t(binomial_split(w.p(), default_bound(w.p())), 16);
    std::ostringstream os;
    write_lemma31_rows(os, lemma31_diagnostics(w, t, {8, 16}));
    const std::string s = os.str();
    CHECK(s.rfind("n,l1_pq,x2_pq,qminus_l1,qbar_sup_over_sqrtn,rn_l1,rn_sup\n8,", 0) == 0);
}

} // TEST_SUITE
