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

const WalkLaws& walk_for(const std::string& name) {
    static std::map<std::string, WalkLaws> cache;
    auto it = cache.find(name);
    if (it == cache.end())
        it = cache.emplace(name, WalkLaws(DistributionSpec::named(name), 16, GridSpec::for_walk(16, 1u << 14))).first;
    return it->second;
}

} // namespace

TEST_SUITE("walk_engine") {

TEST_CASE("Sparre-Andersen values: exact and by simulation") {
    // oracle first: 10^7 gaussian paths, n <= 4, four-sigma band
    const long long paths = 10'000'000;
    const auto mc = oracle::fbar0_monte_carlo(4, paths, 20240607);
    const double exact[] = {1.0, 1.0 / 2, 3.0 / 8, 5.0 / 16, 35.0 / 128};
    for (int n = 1; n <= 4; ++n) {
        CAPTURE(n);
        const double se = std::sqrt(exact[n] * (1 - exact[n]) / paths);
        CHECK(std::abs(mc[n] - exact[n]) <= 4 * se);
        CHECK(sparre_andersen(n) == exact[n]);
    }
    for (int n = 1; n <= 64; ++n) CHECK(sparre_andersen(n) == doctest::Approx(oracle::central_binomial_ratio(n)).epsilon(1e-14));
}

TEST_CASE("symmetric specs match Sparre-Andersen for n <= 16") {
    for (auto name : {"gaussian", "uniform", "laplace", "spike"}) {
        CAPTURE(name);
        const WalkLaws& w = walk_for(name);
        for (int n = 1; n <= 16; ++n) CHECK(std::abs(w.Fbar0(n) - sparre_andersen(n)) <= 1e-3);
    }
}

TEST_CASE("three routes agree") {
    for (auto name : {"gaussian", "uniform", "laplace", "mixture", "spike"}) {
        CAPTURE(name);
        const WalkLaws& w = walk_for(name);
        for (int n : {2, 4, 8, 16}) {
            CAPTURE(n);
            const GridDensity nag = nagaev_density(w, n);
            CHECK(l1_distance(nag, w.pbar(n)) <= 1e-3);
            const HalfLineLaw sp = spitzer_positive_law(w, n);
            // spike: its singular zero cell is halved, mass drift ~1.6e-4
            CHECK_NOTHROW(sp.validate(1e-3));
            const Restricted pos = restrict(w.pbar(n), Side::positive);
            CHECK(l1_distance(pos.density, sp.density) + std::abs(sp.atom_at_zero - w.Fbar0(n)) <= 1e-3);
        }
    }
}

TEST_CASE("scalars at k = 0 and k = 1") {
    const WalkLaws& w = walk_for("gaussian");
    CHECK(w.Fbar0(0) == 1.0);
    CHECK(w.Fbar0(1) == doctest::Approx(0.5).epsilon(1e-9));
    // abar_1 = E[X; X <= 0] = -1/sqrt(2 pi), bbar_1 = E[X^2; X <= 0] = 1/2
    CHECK(w.abar(1) == doctest::Approx(-1 / std::sqrt(2 * oracle::pi)).epsilon(1e-5));
    CHECK(w.bbar(1) == doctest::Approx(0.5).epsilon(1e-4));
    CHECK_THROWS_AS(w.pbar(17), Error);
}

TEST_CASE("Nagaev kernel at index 0 is the unit atom") {
    const WalkLaws& w = walk_for("laplace");
    const NagaevKernel g0 = nagaev_kernel(w, 0);
    CHECK(g0.atom_at_zero == 1.0);
    CHECK(g0.negative_density.l1() == 0.0);
    const GridDensity same = apply_kernel(w.p(), g0);
    CHECK(l1_distance(same, w.p()) <= 1e-15);
}

TEST_CASE("Spitzer second moment equals the grid moment") {
    for (auto name : {"gaussian", "spike"}) {
        const WalkLaws& w = walk_for(name);
        for (int n : {4, 16}) {
            const double grid = moment(w.pbar(n), 2, Region::positive);
            CHECK(std::abs(second_moment_spitzer(w, n) - grid) / n <= 1e-3);
        }
    }
}

TEST_CASE("direct and fast modes give the same walk") {
    const DistributionSpec s = DistributionSpec::named("uniform");
    const GridSpec g = GridSpec::for_walk(4, 1u << 12);
    const WalkLaws a(s, 4, g, {ConvMode::direct}), b(s, 4, g, {ConvMode::fast});
    for (int k = 1; k <= 4; ++k) CHECK(l1_distance(a.pbar(k), b.pbar(k)) <= 1e-10);
}

TEST_CASE("scalar table layout") {
    std::ostringstream os;
    write_scalar_table(os, walk_for("gaussian"));
    const std::string s = os.str();
    CHECK(s.rfind("k,Fbar0,abar,bbar,mass_p,mass_pbar\n", 0) == 0);
    CHECK(std::count(s.begin(), s.end(), '\n') == 17);
}

TEST_CASE("a window too narrow for the walk reports mass drift") {
    const DistributionSpec s = DistributionSpec::named("gaussian");
    CHECK_THROWS_AS(WalkLaws(s, 64, GridSpec::for_walk(1, 1u << 12)), Error);
}

} // TEST_SUITE
