// Fixed-n endpoint values stated against the n -> inf limit. These are asserted
// as stated; at n = 64 the walk has not reached them yet (see README).
#include "maxwalk/density_ops.hpp"
#include "maxwalk/montecarlo.hpp"
#include "maxwalk/walk.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace maxwalk;

TEST_SUITE("endpoint_examples") {

TEST_CASE("gaussian second moment of the positive part at n = 64") {
    const WalkLaws w(DistributionSpec::named("gaussian"), 64, GridSpec::for_walk(64, 1u << 14));
    const double grid = moment(rescale_sqrt(w.pbar(64), 64), 2, Region::positive);
    const double spitzer = second_moment_spitzer(w, 64) / 64.0;
    CHECK(std::abs(grid - spitzer) <= 1e-3);
    CHECK(std::abs(grid - 1) <= 0.1);
    CHECK(std::abs(spitzer - 1) <= 0.1);
}

TEST_CASE("simulated gaussian maximum at n = 64, 1e6 paths") {
    const EmpiricalSummary s = simulate(DistributionSpec::named("gaussian"), 64, 1000000, 20240607);
    CHECK(std::abs(s.mean_max_scaled - std::sqrt(2 / std::numbers::pi)) <= 0.03);
    CHECK(std::abs(s.m2_plus_hat - 1) <= 0.05);
}

} // TEST_SUITE
