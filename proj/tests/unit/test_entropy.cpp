#include "maxwalk/density_ops.hpp"
#include "maxwalk/distribution.hpp"
#include "maxwalk/entropy.hpp"
#include "maxwalk/error.hpp"
#include "maxwalk/reference.hpp"

#include "../oracles/oracles.hpp"

#include <doctest.h>

#include <sstream>

using namespace maxwalk;

namespace {

GridSpec fine() { return GridSpec::centered(0.005, 1u << 12); } // [-10.24, 10.235]

// D(f | g) for two analytic densities, split at 0 so kinks are nodes.
template <class F, class G>
double kl_oracle(F f, G g, double lo, double hi) {
    auto integrand = [&](double x) {
        const double a = f(x);
        return a > 0 ? a * (std::log(a) - std::log(g(x))) : 0.0;
    };
    return (lo < 0 ? oracle::gk(integrand, lo, 0.0) : 0.0) + oracle::gk(integrand, std::max(lo, 0.0), hi);
}

} // namespace

TEST_SUITE("entropy") {

TEST_CASE("L") {
    CHECK(L(1.0) == 0.0);
    CHECK(L(0.0) == 0.0);
    CHECK(L(std::exp(-1.0)) == doctest::Approx(-std::exp(-1.0)).epsilon(1e-15));
    CHECK_THROWS_AS(L(-1e-3), Error);
}

TEST_CASE("reference against itself") {
    const ReferenceLaw phi = ReferenceLaw::half_normal();
    const GridDensity f = sample_reference(phi, fine());
    CHECK(std::abs(relative_entropy(f, phi)) <= 1e-6);
    const EntropyReport r = pinsker_check(f, phi);
    CHECK(std::abs(r.D) <= 1e-6);
    CHECK(r.tv <= 1e-6);
    CHECK(std::abs(r.pinsker_slack) <= 1e-6);
}

TEST_CASE("laplace against the standard gaussian") {
    const double closed = 0.5 * std::log(oracle::pi * std::exp(1.0)) - 1;
    const double quad = kl_oracle(oracle::laplace_pdf, oracle::phi, -30.0, 30.0);
    CHECK(closed == doctest::Approx(0.0724).epsilon(1e-3));
    CHECK(quad == doctest::Approx(closed).epsilon(1e-10));

    const GridDensity p = sample_density(DistributionSpec::named("laplace"), fine());
    const ReferenceLaw z = ReferenceLaw::gaussian(0, 1);
    CHECK(std::abs(relative_entropy(p, z) - quad) <= 1e-4);

    const double tv_quad = 0.5 * (oracle::gk([](double x) { return std::abs(oracle::laplace_pdf(x) - oracle::phi(x)); }, -40.0, 0.0) +
                                  oracle::gk([](double x) { return std::abs(oracle::laplace_pdf(x) - oracle::phi(x)); }, 0.0, 40.0));
    const EntropyReport r = pinsker_check(p, z);
    CHECK(r.tv == doctest::Approx(tv_quad).epsilon(1e-3));
    CHECK(r.pinsker_slack > 0);
}

TEST_CASE("mass scaling identity with alpha = 2") {
    const ReferenceLaw phi = ReferenceLaw::half_normal();
    const GridDensity f = sample_reference(ReferenceLaw::gaussian_positive_restriction(0.5, 2.0), fine());
    const double a = 2;
    CHECK(std::abs(relative_entropy(a * f, phi) - a * relative_entropy(f, phi) - L(a) * f.mass()) <= 1e-6);
}

TEST_CASE("conditioning a standard gaussian on (0, inf) gives the half-normal") {
    const GridDensity p = sample_density(DistributionSpec::named("gaussian"), fine());
    CHECK(std::abs(conditional_positive_entropy(p, ReferenceLaw::half_normal())) <= 1e-6);
}

TEST_CASE("shifted gaussian conditioned positive") {
    const GridDensity p = sample_reference(ReferenceLaw::gaussian(1.0, 1.0), fine());
    const double d = conditional_positive_entropy(p, ReferenceLaw::half_normal());
    // oracle: phi(x - 1) / Phi(1) on (0, inf) against phi_+
    const double Phi1 = 0.5 * std::erfc(-1.0 / std::sqrt(2.0));
    const double quad = kl_oracle([&](double x) { return x > 0 ? oracle::phi(x - 1) / Phi1 : 0.0; }, oracle::phi_plus, 0.0, 30.0);
    CHECK(std::isfinite(d));
    CHECK(d > 0);
    CHECK(d == doctest::Approx(quad).epsilon(1e-4));
}

TEST_CASE("conditioning needs positive mass") {
    std::vector<double> v(fine().count, 0.0);
    v[10] = 1.0;
    CHECK_THROWS_AS(conditional_positive_entropy(GridDensity(fine(), v), ReferenceLaw::half_normal()), Error);
}

TEST_CASE("mass outside the support is the distinguished infinite value") {
    const GridDensity p = sample_density(DistributionSpec::named("gaussian"), fine());
    CHECK(relative_entropy(p, ReferenceLaw::half_normal()) == infinite_entropy);
}

TEST_CASE("negative input beyond the floor is an error") {
    std::vector<double> v(fine().count, 0.0);
    v[3000] = -1e-6;
    CHECK_THROWS_AS(relative_entropy(GridDensity(fine(), v), ReferenceLaw::half_normal()), Error);
}

TEST_CASE("differential entropies") {
    const GridDensity g = sample_density(DistributionSpec::named("gaussian"), fine());
    CHECK(differential_entropy(g) == doctest::Approx(0.5 * std::log(2 * oracle::pi * std::exp(1.0))).epsilon(1e-4));
    CHECK(std::abs(differential_entropy(g) - 1.41894) <= 1e-4);
    // each partial cell at +-sqrt 3 costs up to h c max f|ln f| ~ 0.1 h
    const GridDensity u = sample_density(DistributionSpec::named("uniform"), GridSpec::centered(0.0002, 1u << 17));
    CHECK(std::abs(differential_entropy(u) - std::log(2 * std::sqrt(3.0))) <= 1e-4);
    // oracle: -int phi_+ log phi_+ by quadrature
    const double h_half = -oracle::gk([](double x) { return oracle::phi_plus(x) * std::log(oracle::phi_plus(x)); }, 0.0, 38.0);
    CHECK(h_half == doctest::Approx(0.5 * std::log(oracle::pi * std::exp(1.0) / 2)).epsilon(1e-12));
    const GridDensity hp = sample_reference(ReferenceLaw::half_normal(), fine());
    CHECK(std::abs(differential_entropy(hp) - h_half) <= 1e-4);
}

TEST_CASE("gaussian closed forms") {
    const double hZ = 0.5 * std::log(2 * oracle::pi * std::exp(1.0));
    CHECK(std::abs(gaussian_relent_closed_form(hZ, 1, 1, GaussianSide::full)) <= 1e-14);
    const double want = 0.5 * std::log(4.0) + 1.0 / 8 - 0.5;
    CHECK(want == doctest::Approx(0.3181).epsilon(1e-3));
    CHECK(gaussian_relent_closed_form(hZ, 1, 2, GaussianSide::full) == doctest::Approx(want).epsilon(1e-14));
    const GridDensity g = sample_density(DistributionSpec::named("gaussian"), GridSpec::centered(0.005, 1u << 14));
    CHECK(std::abs(relative_entropy(g, ReferenceLaw::gaussian(0, 4)) - want) <= 1e-4);

    // positive side: |Z| against tau |Z|
    const double hplus = 0.5 * std::log(oracle::pi * std::exp(1.0) / 2);
    CHECK(std::abs(gaussian_relent_closed_form(hplus, 1, 1, GaussianSide::positive)) <= 1e-14);

    for (double sigma : {0.5, 1.0, 2.0}) {
        const double h = 0.5 * std::log(2 * oracle::pi * std::exp(1.0) * sigma * sigma);
        const double step = 0.01;
        double best = 0, best_val = std::numeric_limits<double>::infinity();
        for (double tau = step; tau < 5; tau += step) {
            const double v = gaussian_relent_closed_form(h, sigma * sigma, tau, GaussianSide::full);
            if (v < best_val) {
                best_val = v;
                best = tau;
            }
        }
        CHECK(std::abs(best - sigma) <= step);
    }
    CHECK_THROWS_AS(gaussian_relent_closed_form(hZ, 1, 0, GaussianSide::full), Error);
}

TEST_CASE("entropy rows layout") {
    std::ostringstream os;
    write_entropy_rows(os, {{1, 0.5, 0.25, 0.1, 0.245, 0.5}});
    CHECK(os.str().rfind("n,D,D_plus,tv,pinsker_slack,mass\n1,", 0) == 0);
}

} // TEST_SUITE
